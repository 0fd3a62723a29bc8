use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value as Json};

use super::display::*;
use super::expr::{display_poly, parse_value};
use super::input::{parse_input, InputSpec, Kind};
use super::load::{eds_context, isogeny_pair, lucas_spec};
use crate::arith::factor_q::{factor_over_rationals_with, FactorOptions};
use crate::arith::{Polynomial, Rational};
use crate::eds::{self, EdsContext, EdsOptions};
use crate::error::{Error, Result};
use crate::lucas;

/// Largest EDS index accepted on the command line.
pub const MAX_EDS_INDEX: u64 = 40;
pub const MAX_LUCAS_INDEX: u64 = 2000;
pub const MAX_SURVEY_BOUND: u64 = 1_000_000;

const BUNDLED: &[(&str, &str)] = &[
    ("fib-like.spec", include_str!("../../specs/fib-like.spec")),
    (
        "lucas-quadratic.spec",
        include_str!("../../specs/lucas-quadratic.spec"),
    ),
    ("split.spec", include_str!("../../specs/split.spec")),
    ("isogeny.spec", include_str!("../../specs/isogeny.spec")),
    (
        "local-order.spec",
        include_str!("../../specs/local-order.spec"),
    ),
];

#[derive(Parser, Debug)]
#[command(
    name = "divseq",
    version,
    about = "Lucas sequences over Q[T] and elliptic divisibility sequences over function fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized factorization steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lucas sequences L_n = (fⁿ − gⁿ)/(f − g).
    Lucas {
        #[command(subcommand)]
        command: LucasCommand,
    },
    /// Factor a polynomial over Q.
    Factor {
        #[arg(long, conflicts_with = "spec")]
        expr: Option<String>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Elliptic divisibility sequences D_{nP}.
    Eds {
        #[command(subcommand)]
        command: EdsCommand,
    },
}

#[derive(Subcommand, Debug)]
enum LucasCommand {
    /// Factored terms L_1 .. L_N.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Amenability, irreducibility of L_q for primes q, and the set M.
    Survey {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 101)]
        q_max: u64,
        /// Also count primes of M up to this bound.
        #[arg(long)]
        x_max: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum EdsCommand {
    /// D_{nP} written as functions on C.
    Terms {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
    },
    /// Place-by-place orders of D_{nP}.
    Divisor {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Components of D_{nP} absent from earlier terms.
    Primitive {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// Order of each place against its rank of apparition.
    Rigid {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// deg D_{nP}/n² and, for constant curves, deg σ_P.
    Height {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// Magnification and the decomposition of D_{qP} − D_P.
    Isogeny {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
    /// Good ordinary reduction and irreducibility of D_P modulo primes.
    ReductionSurvey {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1000)]
        x_max: u64,
    },
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub data: Map<String, Json>,
    pub text: String,
}

impl Report {
    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("seed".into(), json!(self.seed));
        m.extend(self.data.clone());
        m.insert("text".into(), json!(self.text));
        Json::Object(m)
    }
}

fn read_spec(path: &PathBuf) -> Result<InputSpec> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let name = path
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or_default();
            match BUNDLED
                .iter()
                .find(|(n, _)| *n == name || n.trim_end_matches(".spec") == name)
            {
                Some((_, t)) if path.components().count() == 1 => t.to_string(),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "cannot read {}: {e}",
                        path.display()
                    )))
                }
            }
        }
    };
    parse_input(&text)
}

fn variable(spec: &InputSpec) -> char {
    spec.bindings
        .values()
        .find_map(|b| b.value.var)
        .unwrap_or(match spec.kind {
            Kind::Lucas | Kind::Factor => 'T',
            _ => 'u',
        })
}

fn limit(what: &str, value: u64, max: u64) -> Result<()> {
    if value > max {
        return Err(Error::ResourceLimit(format!(
            "{what} = {value} exceeds {max}"
        )));
    }
    Ok(())
}

fn index(what: &str, value: u64, max: u64) -> Result<()> {
    if value == 0 {
        return Err(Error::ZeroIndex);
    }
    limit(what, value, max)
}

fn factor_poly(p: &Polynomial<Rational>, seed: u64) -> Result<IntFactorization> {
    let opts = FactorOptions {
        seed,
        ..FactorOptions::default()
    };
    Ok(primitive_form(&factor_over_rationals_with(p, &opts)?))
}

fn lucas_gen(spec: &InputSpec, n_max: u64, seed: u64) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_LUCAS_INDEX)?;
    let ls = lucas_spec(spec)?;
    let var = variable(spec);
    let mut text = String::new();
    let mut terms = Vec::new();
    for (n, l) in ls.terms(n_max).iter().enumerate().skip(1) {
        let f = factor_poly(l, seed)?;
        let line = factorization_text(&f, var, "");
        writeln!(text, "L_{n} = {line}").unwrap();
        let mut j = factorization_json(&f);
        j["n"] = json!(n);
        j["text"] = json!(line);
        terms.push(j);
    }
    let mut m = Map::new();
    m.insert("terms".into(), Json::Array(terms));
    Ok((m, text))
}

fn lucas_survey(
    spec: &InputSpec,
    q_max: u64,
    x_max: Option<u64>,
) -> Result<(Map<String, Json>, String)> {
    limit("--q-max", q_max, MAX_LUCAS_INDEX)?;
    let ls = lucas_spec(spec)?;
    let mut text = String::new();
    let am = lucas::amenability_check(&ls)?;
    writeln!(
        text,
        "case {}: {}",
        am.case,
        if am.verdict {
            "amenable"
        } else {
            "not amenable"
        }
    )
    .unwrap();
    for c in &am.conditions {
        writeln!(text, "  [{}] {}", if c.holds { "x" } else { " " }, c.label).unwrap();
    }
    let survey = lucas::lucas_survey(&ls, q_max)?;
    writeln!(text, "{:>6} {:>12} {:>5}", "q", "L_q", "in M").unwrap();
    for r in &survey.rows {
        let m = match r.in_m {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let irr = if r.lq_irreducible {
            "irreducible"
        } else {
            "reducible"
        };
        writeln!(text, "{:>6} {:>12} {:>5}", r.q, irr, m).unwrap();
    }
    let s = &survey.summary;
    writeln!(
        text,
        "{} of {} prime-indexed terms irreducible",
        s.irreducible_count, s.primes
    )
    .unwrap();
    if let Some(k) = s.m_count {
        writeln!(text, "{k} primes in M; exceptions: {:?}", s.exceptions).unwrap();
    }
    let mut m = Map::new();
    m.insert("amenability".into(), serde_json::to_value(&am).unwrap());
    m.insert("survey".into(), serde_json::to_value(&survey).unwrap());
    if let Some(x) = x_max {
        limit("--x-max", x, MAX_SURVEY_BOUND)?;
        let (hits, total) = lucas::m_density(&ls, x)?;
        let density = hits as f64 / total.max(1) as f64;
        writeln!(text, "M-density up to {x}: {hits}/{total} = {density:.4}").unwrap();
        m.insert(
            "m_density".into(),
            json!({ "x_max": x, "hits": hits, "primes": total, "density": density }),
        );
    }
    Ok((m, text))
}

fn factor_command(
    expr: Option<String>,
    spec: Option<PathBuf>,
    seed: u64,
) -> Result<(Map<String, Json>, String)> {
    let (p, var) = match (expr, spec) {
        (Some(e), _) => {
            let v = parse_value(&e)?;
            (v.poly()?, v.var.unwrap_or('T'))
        }
        (None, Some(path)) => {
            let s = read_spec(&path)?;
            if s.kind != Kind::Factor {
                return Err(Error::InvalidInput("expected a factor spec".into()));
            }
            (s.require("f")?.poly()?, variable(&s))
        }
        (None, None) => return Err(Error::MissingBinding("--expr or --spec".into())),
    };
    let f = factor_poly(&p, seed)?;
    let line = factorization_text(&f, var, "");
    let mut m = Map::new();
    m.insert("input".into(), json!(display_poly(&p, var)));
    m.insert("factorization".into(), factorization_json(&f));
    Ok((m, format!("{line}\n")))
}

fn term_label(n: u64) -> String {
    if n == 1 {
        "D_P".into()
    } else {
        format!("D_{{{n}P}}")
    }
}

fn eds_terms(ctx: &EdsContext, var: char, n_max: u64) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_EDS_INDEX)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    let mut root_note = None;
    for n in 1..=n_max {
        let r = eds::eds_render(ctx, n)?;
        let mut f = primitive_form(&r.u_factors);
        f.unit = r.constant.clone();
        let prefix = if r.v_power == 1 { r.root_symbol } else { "" };
        if r.v_power == 1 && r.root_symbol == "w" {
            root_note = Some(format!("w = 2v + {}", display_poly(&ctx.model().h(), var)));
        }
        let line = factorization_text(&f, var, prefix);
        let flag = if r.symbolic_root {
            "  (symbolic root)"
        } else {
            ""
        };
        writeln!(text, "{} = {line}{flag}", term_label(n)).unwrap();
        let mut j = factorization_json(&f);
        j["n"] = json!(n);
        j["constant"] = rational_json(&r.constant);
        j["v_power"] = json!(r.v_power);
        j["root"] = json!(r.root_symbol);
        j["symbolic_root"] = json!(r.symbolic_root);
        j["text"] = json!(line);
        terms.push(j);
    }
    if let Some(note) = root_note {
        writeln!(text, "where {note}").unwrap();
    }
    let mut m = Map::new();
    m.insert("terms".into(), Json::Array(terms));
    Ok((m, text))
}

fn eds_divisor(ctx: &EdsContext, var: char, n: u64) -> Result<(Map<String, Json>, String)> {
    index("--n", n, MAX_EDS_INDEX)?;
    let d = eds::eds_divisor(ctx, n)?;
    let mut text = format!("{} has degree {}\n", term_label(n), d.degree);
    for c in &d.components {
        writeln!(text, "  {}", component_text(c, var)).unwrap();
    }
    let mut m = Map::new();
    m.insert(
        "divisor".into(),
        json!({
            "n": n,
            "degree": d.degree,
            "components": d.components.iter().map(|c| component_json(c, var)).collect::<Vec<_>>(),
        }),
    );
    Ok((m, text))
}

fn eds_primitive(ctx: &EdsContext, var: char, n_max: u64) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_EDS_INDEX)?;
    let r = eds::primitive_report(ctx, n_max)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    for row in &r.rows {
        let labels: Vec<_> = row
            .primitive
            .iter()
            .map(|c| component_text(c, var))
            .collect();
        let body = if row.missing {
            "none (missing)".to_string()
        } else {
            labels.join("; ")
        };
        writeln!(text, "n = {}: {body}", row.n).unwrap();
        terms.push(json!({
            "n": row.n,
            "missing": row.missing,
            "primitive": row.primitive.iter().map(|c| component_json(c, var)).collect::<Vec<_>>(),
        }));
    }
    let mut m = Map::new();
    m.insert("terms".into(), Json::Array(terms));
    m.insert("all_present".into(), json!(r.all_present));
    Ok((m, text))
}

fn eds_rigid(ctx: &EdsContext, var: char, n_max: u64) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_EDS_INDEX)?;
    let r = eds::rigid_divisibility_check(ctx, n_max)?;
    let mut text = String::new();
    let mut places = Vec::new();
    for h in &r.places {
        writeln!(
            text,
            "{}: rank {}, orders {:?}{}",
            label_text(&h.place.label, var),
            h.rank,
            h.orders,
            if h.violations.is_empty() {
                String::new()
            } else {
                format!(", violations at {:?}", h.violations)
            }
        )
        .unwrap();
        let mut j = place_json(&h.place, var);
        j["rank"] = json!(h.rank);
        j["orders"] = json!(h.orders);
        j["violations"] = json!(h.violations);
        places.push(j);
    }
    writeln!(
        text,
        "rigid divisibility {}",
        if r.holds { "holds" } else { "fails" }
    )
    .unwrap();
    let mut m = Map::new();
    m.insert("places".into(), Json::Array(places));
    m.insert("holds".into(), json!(r.holds));
    Ok((m, text))
}

fn eds_height(ctx: &EdsContext, n_max: u64) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_EDS_INDEX)?;
    let h = eds::canonical_height(ctx, n_max)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    for (n, e) in &h.estimates {
        let deg = e * Rational::from_integer((n * n).into());
        writeln!(text, "n = {n}: deg D = {deg}, deg/n^2 = {e}").unwrap();
        terms.push(json!({ "n": n, "degree": rational_json(&deg), "estimate": rational_json(e) }));
    }
    if let Some(x) = &h.split_exact {
        writeln!(text, "split exact height: {x}").unwrap();
    }
    let mut m = Map::new();
    m.insert("terms".into(), Json::Array(terms));
    m.insert(
        "split_exact".into(),
        h.split_exact.as_ref().map_or(Json::Null, rational_json),
    );
    Ok((m, text))
}

fn eds_isogeny(
    spec: &InputSpec,
    var: char,
    n_max: u64,
    q: u64,
    opts: EdsOptions,
) -> Result<(Map<String, Json>, String)> {
    index("--n-max", n_max, MAX_EDS_INDEX)?;
    index("--q", q, MAX_EDS_INDEX)?;
    let pair = isogeny_pair(spec, opts)?;
    let mag = eds::magnified_check(&pair, n_max)?;
    let dec = eds::isogeny_decomposition_check(&pair, q)?;
    let mut text = format!("isogeny of degree {}\n", pair.degree());
    let mut rows = Vec::new();
    for r in &mag.rows {
        let eff = r.difference.is_some();
        writeln!(
            text,
            "n = {}: D_nP - D_nP' {}, {} components",
            r.n,
            if eff { "effective" } else { "NOT effective" },
            r.components
        )
        .unwrap();
        rows.push(json!({
            "n": r.n,
            "effective": eff,
            "components": r.components,
            "difference": r.difference.as_ref().map(|d| d.iter().map(|c| component_json(c, var)).collect::<Vec<_>>()),
        }));
    }
    writeln!(text, "D_{{{q}P}} - D_P:").unwrap();
    let mut classes = Vec::new();
    for c in &dec.classes {
        writeln!(
            text,
            "  {} -> divisor degree {}{}",
            component_text(&c.component, var),
            c.degree,
            if c.irreducible {
                ", irreducible"
            } else {
                c.note.unwrap_or(", not irreducible")
            }
        )
        .unwrap();
        let mut j = component_json(&c.component, var);
        j["irreducible"] = json!(c.irreducible);
        j["note"] = json!(c.note);
        classes.push(j);
    }
    writeln!(
        text,
        "expected degrees {:?}: {}",
        dec.expected,
        if dec.holds { "match" } else { "MISMATCH" }
    )
    .unwrap();
    let mut m = Map::new();
    m.insert("degree".into(), json!(pair.degree()));
    m.insert(
        "magnification".into(),
        json!({ "rows": rows, "all_effective": mag.all_effective, "threshold": mag.threshold }),
    );
    m.insert(
        "decomposition".into(),
        json!({ "q": q, "classes": classes, "expected": dec.expected, "holds": dec.holds }),
    );
    Ok((m, text))
}

fn eds_reduction(ctx: &EdsContext, var: char, x_max: u64) -> Result<(Map<String, Json>, String)> {
    limit("--x-max", x_max, MAX_SURVEY_BOUND)?;
    let s = eds::reduction_survey(ctx, x_max)?;
    let mut text = format!("D_P polynomial: {}\n", int_poly_text(&s.polynomial, var));
    writeln!(
        text,
        "{:>8} {:>5} {:>6} {:>9} {:>12} {:>5}",
        "p", "good", "a_p", "ordinary", "D_P mod p", "in M"
    )
    .unwrap();
    let yn = |b: bool| if b { "yes" } else { "no" };
    for r in &s.rows {
        writeln!(
            text,
            "{:>8} {:>5} {:>6} {:>9} {:>12} {:>5}",
            r.p,
            yn(r.good),
            r.a_p.map_or("-".into(), |a| a.to_string()),
            r.ordinary.map_or("-", yn),
            if r.irreducible {
                "irreducible"
            } else {
                "reducible"
            },
            yn(r.in_m)
        )
        .unwrap();
    }
    writeln!(
        text,
        "{} primes; irreducible density {:.4}; M density {:.4}; supersingular fraction {:.4}",
        s.primes, s.irreducible_density, s.m_density, s.supersingular_fraction
    )
    .unwrap();
    let rows: Vec<_> = s
        .rows
        .iter()
        .map(|r| {
            json!({
                "q": r.p,
                "good": r.good,
                "a_p": r.a_p,
                "ordinary": r.ordinary,
                "irreducible": r.irreducible,
                "in_m": r.in_m,
            })
        })
        .collect();
    let mut m = Map::new();
    m.insert("polynomial".into(), coeffs_json(&s.polynomial));
    m.insert(
        "survey".into(),
        json!({
            "rows": rows,
            "primes": s.primes,
            "irreducible_density": s.irreducible_density,
            "m_density": s.m_density,
            "supersingular_fraction": s.supersingular_fraction,
        }),
    );
    Ok((m, text))
}

fn dispatch(cli: &Cli) -> Result<(Map<String, Json>, String)> {
    let opts = EdsOptions {
        skip_torsion_check: false,
        seed: cli.seed,
    };
    let eds_ctx = |path: &PathBuf| -> Result<(InputSpec, EdsContext, char)> {
        let spec = read_spec(path)?;
        let ctx = eds_context(&spec, opts)?;
        let var = variable(&spec);
        Ok((spec, ctx, var))
    };
    match &cli.command {
        Command::Lucas { command } => match command {
            LucasCommand::Gen { spec, n_max } => lucas_gen(&read_spec(spec)?, *n_max, cli.seed),
            LucasCommand::Survey { spec, q_max, x_max } => {
                lucas_survey(&read_spec(spec)?, *q_max, *x_max)
            }
        },
        Command::Factor { expr, spec } => factor_command(expr.clone(), spec.clone(), cli.seed),
        Command::Eds { command } => match command {
            EdsCommand::Terms { spec, n_max } => {
                let (_, ctx, var) = eds_ctx(spec)?;
                eds_terms(&ctx, var, *n_max)
            }
            EdsCommand::Divisor { spec, n } => {
                let (_, ctx, var) = eds_ctx(spec)?;
                eds_divisor(&ctx, var, *n)
            }
            EdsCommand::Primitive { spec, n_max } => {
                let (_, ctx, var) = eds_ctx(spec)?;
                eds_primitive(&ctx, var, *n_max)
            }
            EdsCommand::Rigid { spec, n_max } => {
                let (_, ctx, var) = eds_ctx(spec)?;
                eds_rigid(&ctx, var, *n_max)
            }
            EdsCommand::Height { spec, n_max } => {
                let (_, ctx, _) = eds_ctx(spec)?;
                eds_height(&ctx, *n_max)
            }
            EdsCommand::Isogeny { spec, n_max, q } => {
                let spec = read_spec(spec)?;
                let var = variable(&spec);
                eds_isogeny(&spec, var, *n_max, *q, opts)
            }
            EdsCommand::ReductionSurvey { spec, x_max } => {
                let (_, ctx, var) = eds_ctx(spec)?;
                eds_reduction(&ctx, var, *x_max)
            }
        },
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let command = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    match dispatch(&cli) {
        Ok((data, text)) => {
            let report = Report {
                command,
                seed: cli.seed,
                data,
                text,
            };
            let stdout = match cli.format {
                Format::Text => report.text.clone(),
                Format::Structured => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_json()).unwrap()
                ),
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
