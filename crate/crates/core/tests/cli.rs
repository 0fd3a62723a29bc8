use divseq::cli::{format_poly, parse_input, parse_poly, run_command, Kind};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let o = run_command(std::iter::once("divseq").chain(args.iter().copied()));
    (o.code, o.stdout, o.stderr)
}

fn structured(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "structured"]);
    let (code, out, err) = run(&v);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn lucas_gen_text_table() {
    let (code, out, _) = run(&[
        "lucas",
        "gen",
        "--spec",
        "specs/fib-like.spec",
        "--n-max",
        "10",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[5], "L_6 = (T^2 + 3)(T^4 + 3T^2 + 3)(T^4 + 5T^2 + 7)");
}

#[test]
fn eds_divisor_of_split_point() {
    let j = structured(&["eds", "divisor", "--spec", "specs/split.spec", "--n", "1"]);
    assert_eq!(
        j["command"],
        "eds divisor --spec specs/split.spec --n 1 --format structured"
    );
    assert_eq!(j["seed"], 0);
    let comps = j["divisor"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["place"], "u^3 + 2");
    assert_eq!(comps[0]["order"], 1);
    assert_eq!(j["divisor"]["degree"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["factor", "--expr", "T^4+5T^2+7"]).0, 1);
    assert_eq!(run(&["factor", "--expr", "T^4 + 5*T^2 + 7"]).0, 0);
    assert_eq!(
        run(&[
            "lucas",
            "survey",
            "--spec",
            "specs/lucas-quadratic.spec",
            "--q-max",
            "7",
            "--x-max",
            "50"
        ])
        .0,
        2
    );
    assert_eq!(
        run(&[
            "eds",
            "divisor",
            "--spec",
            "specs/split.spec",
            "--n",
            "1000"
        ])
        .0,
        3
    );
    assert_eq!(
        run(&["eds", "divisor", "--spec", "specs/missing.spec"]).0,
        1
    );
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn bundled_specs_resolve_by_name() {
    let (code, out, _) = run(&["eds", "divisor", "--spec", "local-order", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "D_P has degree 0");
}

#[test]
fn structured_reports_are_deterministic_and_agree_with_text() {
    let args = [
        "lucas",
        "gen",
        "--spec",
        "specs/lucas-quadratic.spec",
        "--n-max",
        "7",
        "--seed",
        "9",
    ];
    let a = run(&[&args[..], &["--format", "structured"]].concat());
    let b = run(&[&args[..], &["--format", "structured"]].concat());
    assert_eq!(a, b);
    let j: Value = serde_json::from_str(&a.1).unwrap();
    let (_, text, _) = run(&args);
    for (line, term) in text.lines().zip(j["terms"].as_array().unwrap()) {
        assert!(line.ends_with(term["text"].as_str().unwrap()));
        for f in term["factors"].as_array().unwrap() {
            let coeffs: Vec<i64> = f["coeffs"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_i64().unwrap())
                .collect();
            let p = divseq::arith::Polynomial::from_i64s(&(), &coeffs);
            let shown = divseq::cli::display::int_poly_text(
                &divseq::arith::IntPoly::from_rational(&p).1,
                'T',
            );
            assert!(line.contains(&shown), "{shown} not in {line}");
        }
    }
}

#[test]
fn reduction_survey_rows_are_keyed_by_q() {
    let j = structured(&[
        "eds",
        "reduction-survey",
        "--spec",
        "specs/isogeny.spec",
        "--x-max",
        "30",
    ]);
    let qs: Vec<_> = j["survey"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["q"].as_u64().unwrap())
        .collect();
    assert_eq!(qs, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    let seven = &j["survey"]["rows"][3];
    assert_eq!(seven["irreducible"], true);
}

#[test]
fn spec_files_parse() {
    for (file, kind) in [
        ("specs/fib-like.spec", Kind::Lucas),
        ("specs/lucas-quadratic.spec", Kind::Lucas),
        ("specs/split.spec", Kind::Eds),
        ("specs/isogeny.spec", Kind::IsogenyPair),
        ("specs/local-order.spec", Kind::Eds),
    ] {
        let s = parse_input(&std::fs::read_to_string(file).unwrap()).unwrap();
        assert_eq!(s.kind, kind);
    }
}

#[test]
fn pretty_print_round_trip() {
    for text in [
        "T^2 + 2",
        "u^3 - 7*(u^3 + 2)^4*u + 6*(u^3 + 2)^6",
        "x^2 + 101*x + 12751/5",
        "-1/3",
    ] {
        let p = parse_poly(text).unwrap();
        let canon = format_poly(&p, 'u');
        assert_eq!(parse_poly(&canon).unwrap(), p);
        assert_eq!(format_poly(&parse_poly(&canon).unwrap(), 'u'), canon);
    }
}
