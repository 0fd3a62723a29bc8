use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::context::EdsContext;
use crate::arith::factor_fp::{degree_pattern, is_squarefree};
use crate::arith::primes::primes_up_to;
use crate::arith::{IntPoly, Polynomial, Rational};
use crate::elliptic::naive_point_count;
use crate::error::{Error, Result};
use crate::function_field::PlaceLabel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRow {
    pub p: u64,
    pub good: bool,
    /// Trace of Frobenius, at good primes.
    pub a_p: Option<i64>,
    pub ordinary: Option<bool>,
    /// The D_P polynomial stays irreducible of the same degree mod p.
    pub irreducible: bool,
    /// Good ordinary reduction with D_P irreducible mod p.
    pub in_m: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionSurvey {
    /// Primitive integer form of the polynomial supporting D_P.
    pub polynomial: IntPoly,
    pub rows: Vec<ReductionRow>,
    pub primes: usize,
    pub irreducible_density: f64,
    pub m_density: f64,
    /// Supersingular primes among the good ones.
    pub supersingular_fraction: f64,
}

impl ReductionSurvey {
    pub fn m_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().filter(|r| r.in_m).map(|r| r.p)
    }
}

fn reduce_int(f: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            r.to_u64().unwrap()
        })
        .collect()
}

/// Whether f stays irreducible of the same degree modulo p.
pub fn irreducible_mod(f: &IntPoly, p: u64) -> bool {
    let d = f.degree().unwrap();
    let r = reduce_int(f, p);
    r[d] != 0 && is_squarefree(&r, p) && degree_pattern(&r, p) == [d]
}

pub fn reduction_survey(ctx: &EdsContext, x_max: u64) -> Result<ReductionSurvey> {
    let curve = ctx.constant_curve().ok_or_else(|| {
        Error::Unsupported("reduction survey needs a constant curve over Q".into())
    })?;
    let d1 = ctx.divisor(1)?;
    let finite: Vec<&Polynomial<Rational>> = d1
        .labels()
        .filter_map(|l| match l {
            PlaceLabel::Finite(f) => Some(f),
            PlaceLabel::Infinity => None,
        })
        .collect();
    let [f] = finite[..] else {
        return Err(Error::Unsupported(format!(
            "D_P has {} finite components, expected one",
            finite.len()
        )));
    };
    let f = IntPoly::from_rational(f).1.primitive_part();
    let rows: Vec<ReductionRow> = primes_up_to(x_max)
        .into_par_iter()
        .map(|p| {
            let irreducible = irreducible_mod(&f, p);
            let Some(e) = curve.reduce_mod(p) else {
                return ReductionRow {
                    p,
                    good: false,
                    a_p: None,
                    ordinary: None,
                    irreducible,
                    in_m: false,
                };
            };
            let a_p = (p + 1) as i64 - naive_point_count(&e) as i64;
            let ordinary = a_p.rem_euclid(p as i64) != 0;
            ReductionRow {
                p,
                good: true,
                a_p: Some(a_p),
                ordinary: Some(ordinary),
                irreducible,
                in_m: ordinary && irreducible,
            }
        })
        .collect();
    let n = rows.len().max(1) as f64;
    let good = rows.iter().filter(|r| r.good).count().max(1) as f64;
    let count = |pred: fn(&ReductionRow) -> bool| rows.iter().filter(|r| pred(r)).count() as f64;
    Ok(ReductionSurvey {
        polynomial: f,
        primes: rows.len(),
        irreducible_density: count(|r| r.irreducible) / n,
        m_density: count(|r| r.in_m) / n,
        supersingular_fraction: count(|r| r.ordinary == Some(false)) / good,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::context::tests::split_context;
    use crate::eds::magnify::tests::isogeny_pair;

    #[test]
    fn quadratic_irreducibility_follows_residues() {
        let f = IntPoly::from_i64s(&[12751, 505, 5]);
        assert!(irreducible_mod(&f, 7));
        for p in primes_up_to(200).into_iter().filter(|&p| p > 5) {
            let five_is_square = (1..p).any(|k| k * k % p == 5 % p);
            assert_eq!(irreducible_mod(&f, p), !five_is_square, "p = {p}");
        }
    }

    #[test]
    fn isogeny_pair_survey() {
        let pair = isogeny_pair();
        let s = reduction_survey(&pair.down, 2000).unwrap();
        assert_eq!(s.polynomial, IntPoly::from_i64s(&[12751, 505, 5]));
        assert!((s.irreducible_density - 0.5).abs() < 0.05);
        assert!(s.rows.iter().find(|r| r.p == 11).is_some_and(|r| !r.good));
        assert!(reduction_survey(&pair.up, 10).is_err());
    }

    #[test]
    fn split_supersingular_fraction() {
        let s = reduction_survey(&split_context(), 1000).unwrap();
        assert!(s.supersingular_fraction < 0.15);
        assert!(s.m_primes().count() > 0);
    }
}
