//! Factorization over prime fields: distinct-degree, then Cantor–Zassenhaus
//! equal-degree splitting (trace map in characteristic 2).

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factored::FactoredPolynomial;
use super::fp::{from_nmod, to_nmod, Fp};
use super::nmod::{self, Frobenius};
use super::poly::Polynomial;
use super::primes::is_prime;
use super::squarefree::squarefree_decompose;
use crate::error::{Error, Result};

/// Products of the irreducible factors of each degree, for monic squarefree `f`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let Some(n) = nmod::degree(f) else {
        return out;
    };
    if n == 0 {
        return out;
    }
    let fr = Frobenius::new(f, p);
    let x = nmod::rem(&[0, 1], f, p);
    let mut h = x.clone();
    let mut rest = f.to_vec();
    let mut d = 0;
    while rest.len() > 2 * (d + 1) {
        d += 1;
        h = fr.apply(&h);
        let g = nmod::gcd(&rest, &nmod::sub(&h, &x, p), p);
        if g.len() > 1 {
            rest = nmod::div_rem(&rest, &g, p).0;
            out.push((g, d));
        }
    }
    if rest.len() > 1 {
        let d = rest.len() - 1;
        out.push((nmod::monic(&rest, p), d));
    }
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial, ascending.
pub fn degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
    let f = nmod::monic(f, p);
    let mut v = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        v.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
    }
    v.sort_unstable();
    v
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let df = nmod::derivative(f, p);
    !df.is_empty() && nmod::gcd(f, &df, p).len() == 1
}

/// Splits a monic product of irreducibles all of degree `d`.
pub fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let fr = Frobenius::new(g, p);
    let half = BigUint::from((p - 1) / 2);
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        nmod::trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let cand = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = fr.apply(&t);
                acc = nmod::add(&acc, &t, p);
            }
            nmod::gcd(g, &acc, p)
        } else {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = fr.apply(&t);
                acc = nmod::mulmod(&acc, &t, g, p);
            }
            let e = nmod::powmod(&acc, &half, g, p);
            nmod::gcd(g, &nmod::sub(&e, &[1], p), p)
        };
        if cand.len() > 1 && cand.len() < g.len() {
            let other = nmod::monic(&nmod::div_rem(g, &cand, p).0, p);
            let mut out = equal_degree(&cand, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let f = nmod::monic(f, p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Complete factorization over F_p for `p < 2^32`.
pub fn factor_mod_p(a: &Polynomial<Fp>, seed: u64) -> Result<FactoredPolynomial<Fp>> {
    let p = *a.ctx();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= nmod::MAX_MODULUS {
        return Err(Error::Unsupported(format!(
            "modulus {p} exceeds the supported range"
        )));
    }
    let sqf = squarefree_decompose(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, e) in &sqf.parts {
        for g in factor_squarefree(&to_nmod(part), p, &mut rng) {
            factors.push((from_nmod(g, p), *e));
        }
    }
    Ok(FactoredPolynomial::new(sqf.unit, factors))
}

pub fn fp_poly(p: u64, cs: &[i64]) -> Polynomial<Fp> {
    Polynomial::from_i64s(&p, cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Field;

    #[test]
    fn spec_examples() {
        let f = factor_mod_p(&fp_poly(5, &[1, 0, 1]), 0).unwrap();
        assert_eq!(
            f.factors,
            vec![(fp_poly(5, &[2, 1]), 1), (fp_poly(5, &[3, 1]), 1)]
        );
        assert!(factor_mod_p(&fp_poly(3, &[1, 0, 1]), 0)
            .unwrap()
            .is_irreducible());
        assert!(factor_mod_p(&fp_poly(7, &[2, 0, 0, 1]), 0)
            .unwrap()
            .is_irreducible());
        assert_eq!(
            factor_mod_p(&Polynomial::zero(&5), 0),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn brute_force_roots_agree() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let a = fp_poly(p, &[3, -1, 4, 1, -5, 9, 2, 6, 1]);
            let f = factor_mod_p(&a, 7).unwrap();
            assert_eq!(f.expand(), a);
            let linear = f
                .factors
                .iter()
                .filter(|(g, _)| g.degree() == Some(1))
                .count();
            let roots = (0..p)
                .filter(|&x| a.eval(&Fp::from_u64(x, p)).is_zero())
                .count();
            assert_eq!(linear, roots, "p = {p}");
        }
    }

    #[test]
    fn characteristic_two_splitting() {
        // (x^2+x+1)(x^3+x+1)(x^3+x^2+1)(x^4+x+1)
        let p = 2;
        let parts = [
            fp_poly(p, &[1, 1, 1]),
            fp_poly(p, &[1, 1, 0, 1]),
            fp_poly(p, &[1, 0, 1, 1]),
            fp_poly(p, &[1, 1, 0, 0, 1]),
        ];
        let a = parts.iter().fold(fp_poly(p, &[1]), |acc, q| &acc * q);
        let f = factor_mod_p(&a, 3).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert_eq!(f.expand(), a);
    }

    #[test]
    fn seed_does_not_change_result() {
        let a = fp_poly(101, &[5, 0, 3, 0, 0, 0, 7, 1, 1, 0, 0, 1]);
        assert_eq!(factor_mod_p(&a, 0).unwrap(), factor_mod_p(&a, 99).unwrap());
    }
}
