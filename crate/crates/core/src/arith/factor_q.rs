//! Factorization over Q: content removal, squarefree splitting, modular
//! factorization at a good prime, Hensel lifting and subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor_fp::{degree_pattern, factor_squarefree, is_squarefree};
use super::factored::FactoredPolynomial;
use super::gcd::int_gcd;
use super::hensel::lift_raw;
use super::poly::Polynomial;
use super::primes::next_prime;
use super::rational::Rational;
use super::zpoly::IntPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorOptions {
    pub seed: u64,
    /// Good primes examined for degree patterns before choosing one to lift.
    pub pattern_primes: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            seed: 0,
            pattern_primes: 6,
        }
    }
}

/// Yun's algorithm over Z; parts primitive with positive leading coefficient.
///
/// `w` and `y` are always divided by the same primitive gcds, so they carry a
/// common scalar and `y − w'` plays the role it has over Q.
pub fn int_squarefree(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let f = f.primitive_part();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let c = int_gcd(&f, &df);
    let mut w = f.div_exact(&c).unwrap();
    let y = df.div_exact(&c).unwrap();
    let mut z = y.sub(&w.derivative());
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let g = int_gcd(&w, &z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).unwrap();
        let y = z.div_exact(&g).unwrap();
        z = y.sub(&w.derivative());
        i += 1;
    }
    out
}

fn is_good_prime(f: &IntPoly, p: u64) -> Option<Vec<u64>> {
    let fp = f.reduce_mod(p);
    (fp.len() == f.coeffs().len() && is_squarefree(&fp, p)).then_some(fp)
}

fn subset_sums(pattern: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in pattern {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1.
fn zassenhaus(f: &IntPoly, opts: &FactorOptions) -> Vec<IntPoly> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    // Survey a few good primes; keep the one with fewest modular factors.
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut best: Option<(usize, u64, Vec<u64>)> = None;
    let mut p = 3;
    let mut seen = 0;
    while seen < opts.pattern_primes {
        p = next_prime(p);
        let Some(fp) = is_good_prime(f, p) else {
            continue;
        };
        seen += 1;
        let pat = degree_pattern(&fp, p);
        if pat.len() == 1 {
            return vec![f.clone()];
        }
        let sums = subset_sums(&pat);
        let inter: BTreeSet<usize> = match &allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        };
        if inter.len() == 2 {
            return vec![f.clone()];
        }
        allowed = Some(inter);
        if best.as_ref().is_none_or(|b| pat.len() < b.0) {
            best = Some((pat.len(), p, fp));
        }
    }
    let allowed = allowed.unwrap();
    let (_, p, fp) = best.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let modular = factor_squarefree(&fp, p, &mut rng);

    // Mignotte: any factor's coefficients are bounded by 2^n·‖f‖₂; the lc
    // multiple used in recombination needs another |lc| factor.
    let lc = f.leading().unwrap().abs();
    let bound = (BigInt::one() << n) * f.norm2_ceil() * &lc;
    let two_b = bound * 2 + 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= two_b {
        pk *= &pb;
        k += 1;
    }
    let lifted = lift_raw(f, &modular, p, k).expect("good prime gives coprime factors");
    recombine(f, lifted, &pk, &allowed)
}

fn symmetric(v: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    IntPoly::new(
        v.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(
    f: &IntPoly,
    mut lifted: Vec<IntPoly>,
    pk: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let r = lifted.len();
        let lc = rest.leading().unwrap().clone();
        let rest_const = rest.coeff(0);
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].degree().unwrap()).sum();
            if allowed.contains(&deg) {
                let cand = constant_term_ok(&lifted, &idx, &lc, &rest_const, pk);
                if cand {
                    let prod = idx.iter().fold(IntPoly::constant(lc.clone()), |acc, &i| {
                        symmetric(&acc.mul(&lifted[i]), pk)
                    });
                    let g = prod.primitive_part();
                    if let Some(q) = rest.div_exact(&g) {
                        out.push(g);
                        rest = q.primitive_part();
                        let keep: Vec<IntPoly> = (0..r)
                            .filter(|i| !idx.contains(i))
                            .map(|i| lifted[i].clone())
                            .collect();
                        lifted = keep;
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// Necessary condition: the candidate's constant term divides lc·f(0).
fn constant_term_ok(
    lifted: &[IntPoly],
    idx: &[usize],
    lc: &BigInt,
    f0: &BigInt,
    pk: &BigInt,
) -> bool {
    if f0.is_zero() {
        return true;
    }
    let mut c = lc.mod_floor(pk);
    for &i in idx {
        c = (c * lifted[i].coeff(0)).mod_floor(pk);
    }
    let half = pk >> 1;
    if c > half {
        c -= pk;
    }
    if c.is_zero() {
        return false;
    }
    (lc * f0).is_multiple_of(&c)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible primitive factors with multiplicities of an integer polynomial.
pub fn factor_int(f: &IntPoly, opts: &FactorOptions) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    for (part, e) in int_squarefree(f) {
        let mut part = part;
        if part.coeff(0).is_zero() {
            out.push((IntPoly::x(), e));
            part = part.div_exact(&IntPoly::x()).unwrap();
        }
        if part.degree().unwrap_or(0) == 0 {
            continue;
        }
        for g in zassenhaus(&part, opts) {
            out.push((g, e));
        }
    }
    out.sort_by(|a, b| {
        a.0.coeffs()
            .len()
            .cmp(&b.0.coeffs().len())
            .then_with(|| a.0.cmp(&b.0))
    });
    out
}

pub fn factor_over_rationals(a: &Polynomial<Rational>) -> Result<FactoredPolynomial<Rational>> {
    factor_over_rationals_with(a, &FactorOptions::default())
}

pub fn factor_over_rationals_with(
    a: &Polynomial<Rational>,
    opts: &FactorOptions,
) -> Result<FactoredPolynomial<Rational>> {
    let unit = a.leading().cloned().ok_or(Error::ZeroInput)?;
    let (_, f) = IntPoly::from_rational(a);
    let factors = factor_int(&f, opts)
        .into_iter()
        .map(|(g, e)| (g.to_monic_rational(), e))
        .collect();
    Ok(FactoredPolynomial::new(unit, factors))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    /// Prime whose degree pattern settled the question, when the fast path did.
    pub witness: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub prime_bound: u64,
    pub max_good_primes: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            prime_bound: 2000,
            max_good_primes: 40,
        }
    }
}

pub fn certify_irreducible(a: &Polynomial<Rational>) -> Result<IrreducibilityCertificate> {
    certify_irreducible_with(a, &CertifyOptions::default())
}

pub fn certify_irreducible_with(
    a: &Polynomial<Rational>,
    opts: &CertifyOptions,
) -> Result<IrreducibilityCertificate> {
    let d = a.degree().ok_or(Error::ZeroInput)?;
    if d == 0 {
        return Err(Error::ConstantInput);
    }
    let (_, f) = IntPoly::from_rational(a);
    certify_int(&f, opts)
}

pub fn certify_int(f: &IntPoly, opts: &CertifyOptions) -> Result<IrreducibilityCertificate> {
    let d = f.degree().ok_or(Error::ZeroInput)?;
    if d == 0 {
        return Err(Error::ConstantInput);
    }
    if d == 1 {
        return Ok(IrreducibilityCertificate {
            irreducible: true,
            witness: None,
        });
    }
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut good = 0;
    let mut p = 1;
    while good < opts.max_good_primes {
        p = next_prime(p);
        if p > opts.prime_bound {
            break;
        }
        let Some(fp) = is_good_prime(f, p) else {
            continue;
        };
        good += 1;
        let pat = degree_pattern(&fp, p);
        if pat.len() == 1 {
            return Ok(IrreducibilityCertificate {
                irreducible: true,
                witness: Some(p),
            });
        }
        let sums = subset_sums(&pat);
        let inter: BTreeSet<usize> = match &allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        };
        if inter.len() == 2 {
            return Ok(IrreducibilityCertificate {
                irreducible: true,
                witness: Some(p),
            });
        }
        allowed = Some(inter);
    }
    let fac = factor_int(f, &FactorOptions::default());
    Ok(IrreducibilityCertificate {
        irreducible: fac.len() == 1 && fac[0].1 == 1,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(&(), cs)
    }

    #[test]
    fn printed_lucas_factorizations() {
        let l6 = &(&qp(&[3, 0, 1]) * &qp(&[3, 0, 3, 0, 1])) * &qp(&[7, 0, 5, 0, 1]);
        let f = factor_over_rationals(&l6).unwrap();
        assert_eq!(
            f.factors,
            vec![
                (qp(&[3, 0, 1]), 1),
                (qp(&[3, 0, 3, 0, 1]), 1),
                (qp(&[7, 0, 5, 0, 1]), 1)
            ]
        );
        assert_eq!(f.expand(), l6);
        let l3 = qp(&[-2, 0, 3, 1]);
        let f = factor_over_rationals(&l3).unwrap();
        assert_eq!(f.factors, vec![(qp(&[1, 1]), 1), (qp(&[-2, 2, 1]), 1)]);
    }

    #[test]
    fn content_and_repeated_factors() {
        let a = (&qp(&[1, 2]).pow(3) * &qp(&[0, 1])).scale(&int(-6));
        let f = factor_over_rationals(&a).unwrap();
        assert_eq!(f.expand(), a);
        assert_eq!(f.unit, int(-48));
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        let a = qp(&[1, 0, -10, 0, 1]);
        let f = factor_over_rationals(&a).unwrap();
        assert!(f.is_irreducible());
        let c = certify_irreducible(&a).unwrap();
        assert!(c.irreducible);
        assert_eq!(c.witness, None);
    }

    #[test]
    fn certificates() {
        let c = certify_irreducible(&qp(&[1, 0, 1])).unwrap();
        assert_eq!(
            c,
            IrreducibilityCertificate {
                irreducible: true,
                witness: Some(3)
            }
        );
        assert!(
            certify_irreducible(&qp(&[7, 0, 5, 0, 1]))
                .unwrap()
                .irreducible
        );
        let red = &qp(&[3, 0, 1]) * &qp(&[5, 0, 4, 0, 1]);
        assert!(!certify_irreducible(&red).unwrap().irreducible);
        assert_eq!(certify_irreducible(&qp(&[4])), Err(Error::ConstantInput));
    }
}
