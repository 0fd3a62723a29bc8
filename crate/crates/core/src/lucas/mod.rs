//! Lucas sequences L_{n+1} = s·L_n − q·L_{n−1} over Q[T].

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::factor_fp::degree_pattern;
use crate::arith::factor_q::{certify_int, CertifyOptions};
use crate::arith::primes::primes_up_to;
use crate::arith::{certify_irreducible, factor_over_rationals, IntPoly, Polynomial, Rational};
use crate::error::{Error, Result};

type QT = Polynomial<Rational>;

#[derive(Clone, Debug, PartialEq)]
pub enum LucasCase {
    /// L_n = (fⁿ − gⁿ)/(f − g) with f, g ∈ Q[T].
    Direct { f: QT, g: QT },
    /// f, g are the roots of X² − sX + q, not in Q[T].
    Quadratic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LucasSpec {
    pub s: QT,
    pub q: QT,
    pub case: LucasCase,
}

impl LucasSpec {
    pub fn direct(f: QT, g: QT) -> Result<Self> {
        if f == g {
            return Err(Error::InvalidInput("f and g coincide".into()));
        }
        Ok(LucasSpec {
            s: &f + &g,
            q: &f * &g,
            case: LucasCase::Direct { f, g },
        })
    }

    pub fn quadratic(s: QT, q: QT) -> Result<Self> {
        let spec = LucasSpec {
            s,
            q,
            case: LucasCase::Quadratic,
        };
        if spec.discriminant().is_zero() {
            return Err(Error::InvalidInput("s² − 4q vanishes".into()));
        }
        Ok(spec)
    }

    /// s² − 4q, which is (f − g)² in the direct case.
    pub fn discriminant(&self) -> QT {
        &(&self.s * &self.s) - &self.q.scale(&Rational::from_integer(4.into()))
    }

    pub fn case_number(&self) -> u8 {
        match self.case {
            LucasCase::Direct { .. } => 1,
            LucasCase::Quadratic => 2,
        }
    }

    /// L_0 .. L_{n_max}.
    pub fn terms(&self, n_max: u64) -> Vec<QT> {
        let mut out = vec![QT::zero(&()), QT::one(&())];
        while (out.len() as u64) <= n_max {
            let k = out.len();
            let next = &(&self.s * &out[k - 1]) - &(&self.q * &out[k - 2]);
            out.push(next);
        }
        out.truncate(n_max as usize + 1);
        out
    }
}

pub fn lucas_term(spec: &LucasSpec, n: u64) -> QT {
    spec.terms(n).pop().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmenabilityReport {
    pub case: u8,
    pub conditions: Vec<Condition>,
    pub verdict: bool,
}

fn irreducible_of_prime_degree(p: &QT) -> Result<bool> {
    let Some(d) = p.degree() else {
        return Ok(false);
    };
    if !crate::arith::primes::is_prime(d as u64) {
        return Ok(false);
    }
    Ok(certify_irreducible(p)?.irreducible)
}

pub fn amenability_check(spec: &LucasSpec) -> Result<AmenabilityReport> {
    let cond = |label: &str, holds: bool| Condition {
        label: label.to_string(),
        holds,
    };
    let conditions = match &spec.case {
        LucasCase::Direct { f, g } => {
            let d = f - g;
            let proportional = match (f.degree(), g.degree()) {
                (None, _) | (_, None) => true,
                _ => f.scale(g.leading().unwrap()) == g.scale(f.leading().unwrap()),
            };
            vec![
                cond(
                    "f − g irreducible of prime degree",
                    irreducible_of_prime_degree(&d)?,
                ),
                cond(
                    "deg(f − g) = max(deg f, deg g)",
                    d.degree() == f.degree().max(g.degree()),
                ),
                cond("f not a constant multiple of g", !proportional),
            ]
        }
        LucasCase::Quadratic => {
            let disc = spec.discriminant();
            vec![
                cond(
                    "s² − 4q irreducible of prime degree",
                    irreducible_of_prime_degree(&disc)?,
                ),
                cond(
                    "deg s ≤ ½·deg(s² − 4q)",
                    2 * spec.s.degree().unwrap_or(0) <= disc.degree().unwrap_or(0),
                ),
                cond("s ≠ 0", !spec.s.is_zero()),
            ]
        }
    };
    let verdict = conditions.iter().all(|c| c.holds);
    Ok(AmenabilityReport {
        case: spec.case_number(),
        conditions,
        verdict,
    })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// C_n with L_n = Π_{d | n, d > 1} C_d.
pub fn cyclotomic_part(spec: &LucasSpec, n: u64) -> Result<QT> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "cyclotomic parts start at n = 2".into(),
        ));
    }
    let terms = spec.terms(n);
    cyclotomic_parts_from(&terms, n).map(|mut v| v.pop().unwrap())
}

/// C_2 .. C_n from precomputed terms L_0 .. L_n (index 0 of the result is C_2).
pub fn cyclotomic_parts_from(terms: &[QT], n: u64) -> Result<Vec<QT>> {
    let mut parts: Vec<QT> = Vec::new();
    for m in 2..=n {
        let mut c = terms[m as usize].clone();
        for d in divisors(m) {
            if d > 1 && d < m {
                c = c
                    .exact_div(&parts[(d - 2) as usize])
                    .ok_or_else(|| Error::Internal(format!("C_{d} does not divide L_{m}")))?;
            }
        }
        parts.push(c);
    }
    Ok(parts)
}

/// Irreducible factors of L_n dividing no earlier term.
pub fn lucas_primitive_factors(spec: &LucasSpec, n: u64) -> Result<Vec<QT>> {
    if n <= 1 {
        return Ok(Vec::new());
    }
    let terms = spec.terms(n);
    let maximal: Vec<u64> = divisors(n)
        .into_iter()
        .filter(|d| *d < n && crate::arith::primes::is_prime(n / d))
        .collect();
    let f = factor_over_rationals(&terms[n as usize])?;
    Ok(f.factors
        .into_iter()
        .map(|(p, _)| p)
        .filter(|p| {
            maximal
                .iter()
                .all(|&m| !terms[m as usize].rem(p).unwrap().is_zero())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub q: u64,
    /// None where membership has no computable criterion.
    pub in_m: Option<bool>,
    pub lq_irreducible: bool,
    pub witness: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveySummary {
    pub primes: usize,
    pub irreducible_count: usize,
    pub irreducible_density: f64,
    pub m_count: Option<usize>,
    pub m_density: Option<f64>,
    /// q ∈ M with L_q reducible.
    pub exceptions: Vec<u64>,
    pub reducible: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LucasSurvey {
    pub rows: Vec<SurveyRow>,
    pub summary: SurveySummary,
}

/// Whether q is in M: good reduction of f, g and of lc(f − g), with f − g irreducible mod q.
pub fn in_m(spec: &LucasSpec, q: u64) -> Option<bool> {
    let LucasCase::Direct { f, g } = &spec.case else {
        return None;
    };
    let d = f - g;
    let good = [f, g, &d]
        .iter()
        .all(|p| p.coeffs().iter().all(|c| !(c.denom() % q).is_zero()))
        && !(d.leading()?.numer() % q).is_zero();
    if !good {
        return Some(false);
    }
    let (_, dint) = IntPoly::from_rational(&d);
    let pattern = degree_pattern(&dint.reduce_mod(q), q);
    Some(pattern.len() == 1)
}

/// Counting density of M among primes ≤ x.
pub fn m_density(spec: &LucasSpec, x: u64) -> Result<(usize, usize)> {
    if spec.case_number() == 2 {
        return Err(Error::Unsupported("M-set for quadratic specs".into()));
    }
    let ps = primes_up_to(x);
    let hits = ps
        .par_iter()
        .filter(|&&q| in_m(spec, q) == Some(true))
        .count();
    Ok((hits, ps.len()))
}

pub fn lucas_survey(spec: &LucasSpec, q_max: u64) -> Result<LucasSurvey> {
    let ps = primes_up_to(q_max);
    let terms = spec.terms(q_max);
    let opts = CertifyOptions::default();
    let rows: Vec<SurveyRow> = ps
        .par_iter()
        .map(|&q| {
            let lq = &terms[q as usize];
            let (irr, witness) = if lq.degree().unwrap_or(0) == 0 {
                (false, None)
            } else {
                let (_, f) = IntPoly::from_rational(lq);
                let c = certify_int(&f, &opts)?;
                (c.irreducible, c.witness)
            };
            Ok(SurveyRow {
                q,
                in_m: in_m(spec, q),
                lq_irreducible: irr,
                witness,
            })
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    let irreducible_count = rows.iter().filter(|r| r.lq_irreducible).count();
    let m_count =
        (spec.case_number() == 1).then(|| rows.iter().filter(|r| r.in_m == Some(true)).count());
    let dens = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };
    let summary = SurveySummary {
        primes: n,
        irreducible_count,
        irreducible_density: dens(irreducible_count),
        m_count,
        m_density: m_count.map(dens),
        exceptions: rows
            .iter()
            .filter(|r| r.in_m == Some(true) && !r.lq_irreducible)
            .map(|r| r.q)
            .collect(),
        reducible: rows
            .iter()
            .filter(|r| !r.lq_irreducible)
            .map(|r| r.q)
            .collect(),
    };
    Ok(LucasSurvey { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qt(cs: &[i64]) -> QT {
        QT::from_i64s(&(), cs)
    }

    fn fib_like() -> LucasSpec {
        LucasSpec::direct(qt(&[2, 0, 1]), qt(&[1])).unwrap()
    }

    fn second() -> LucasSpec {
        LucasSpec::quadratic(qt(&[0, 2]), qt(&[2, 0, 1, -1])).unwrap()
    }

    #[test]
    fn first_terms() {
        assert_eq!(lucas_term(&fib_like(), 1), qt(&[1]));
        assert_eq!(lucas_term(&fib_like(), 3), qt(&[7, 0, 5, 0, 1]));
        assert_eq!(lucas_term(&second(), 3), qt(&[-2, 0, 3, 1]));
        assert_eq!(lucas_term(&fib_like(), 0), qt(&[]));
    }

    #[test]
    fn closed_form() {
        let f = qt(&[2, 0, 1]);
        let g = qt(&[1]);
        let spec = fib_like();
        for n in 1..=12u32 {
            let lhs = &f.pow(n) - &g.pow(n);
            assert_eq!(lhs, &(&f - &g) * &lucas_term(&spec, n as u64));
        }
    }

    #[test]
    fn amenability() {
        assert!(amenability_check(&fib_like()).unwrap().verdict);
        let r = amenability_check(&second()).unwrap();
        assert_eq!(r.case, 2);
        assert!(r.verdict);
        let bad = LucasSpec::direct(qt(&[0, 0, 1]), qt(&[0, 0, 2])).unwrap();
        let r = amenability_check(&bad).unwrap();
        assert!(!r.verdict);
        assert!(!r.conditions[2].holds);
    }

    #[test]
    fn cyclotomic_and_primitive() {
        let s = fib_like();
        assert_eq!(cyclotomic_part(&s, 6).unwrap(), qt(&[3, 0, 3, 0, 1]));
        assert_eq!(cyclotomic_part(&s, 2).unwrap(), qt(&[3, 0, 1]));
        assert_eq!(cyclotomic_part(&s, 3).unwrap(), lucas_term(&s, 3));
        assert_eq!(
            lucas_primitive_factors(&s, 4).unwrap(),
            vec![qt(&[5, 0, 4, 0, 1])]
        );
        assert_eq!(
            lucas_primitive_factors(&s, 2).unwrap(),
            vec![qt(&[3, 0, 1])]
        );
        assert!(lucas_primitive_factors(&s, 1).unwrap().is_empty());
    }

    #[test]
    fn small_survey() {
        let r = lucas_survey(&fib_like(), 23).unwrap();
        assert!(r.rows.windows(2).all(|w| w[0].q < w[1].q));
        for row in &r.rows {
            assert!(row.lq_irreducible);
            assert_eq!(row.in_m, Some(row.q % 4 == 3));
        }
        let r2 = lucas_survey(&second(), 7).unwrap();
        assert_eq!(r2.summary.reducible, vec![3]);
        assert!(r2.rows.iter().all(|r| r.in_m.is_none()));
        assert!(m_density(&second(), 100).is_err());
    }
}
