use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::factor_q::{certify_int, CertifyOptions};
use crate::arith::fp::reduce_poly;
use crate::arith::gcd::int_gcd;
use crate::arith::nmod;
use crate::arith::primes::{large_primes, primes_up_to};
use crate::arith::rational::{int, rational_sqrt};
use crate::arith::IntPoly;
use crate::arith::{Field, Polynomial, Rational};

/// Res(a, b) by the Euclidean remainder sequence.
pub fn resultant<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> F {
    let ctx = a.ctx().clone();
    if a.is_zero() || b.is_zero() {
        return F::zero(&ctx);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = F::one(&ctx);
    loop {
        let da = a.degree().unwrap() as u64;
        let db = b.degree().unwrap() as u64;
        if db == 0 {
            return acc.mul(&b.coeff(0).pow(da));
        }
        let r = a.rem(&b).unwrap();
        let Some(dr) = r.degree() else {
            return F::zero(&ctx);
        };
        let mut f = b.leading().unwrap().pow(da - dr as u64);
        if da % 2 == 1 && db % 2 == 1 {
            f = f.neg();
        }
        acc = acc.mul(&f);
        a = b;
        b = r;
    }
}

/// Newton interpolation through the given points.
pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial<Rational> {
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut out = Polynomial::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = Polynomial::new(vec![-points[i].0.clone(), int(1)], &());
        out = &(&out * &lin) + &Polynomial::constant(coef[i].clone());
    }
    out
}

/// Whether `d(α)` is a square in Q(α) for `p(α) = 0`, `p` monic irreducible
/// and `p ∤ d`.
///
/// Uses Trager's norm: for a shift `k` making `N(z) = Res_u(p, (z − k·u)² − d)`
/// squarefree, z² − d(α) is irreducible over Q(α) iff N is irreducible over Q.
pub fn is_square_in_residue_field(d: &Polynomial<Rational>, p: &Polynomial<Rational>) -> bool {
    let m = p.degree().expect("nonzero place polynomial");
    if m == 1 {
        let root = -p.coeff(0) / p.coeff(1);
        return rational_sqrt(&d.eval(&root)).is_some();
    }
    if has_nonresidue_specialization(d, p) {
        return false;
    }
    let (_, pi) = IntPoly::from_rational(p);
    // Clearing denominators by a square keeps the square class of d.
    let (ds, di) = IntPoly::from_rational(d);
    let den = ds.denom().clone();
    let di = di.scale(&(ds.numer() * &den));
    for k in 0i64.. {
        let n = shifted_norm(&pi, &di, k);
        if int_gcd(&n, &n.derivative()).degree() == Some(0) {
            return !certify_int(&n, &CertifyOptions::default())
                .expect("nonconstant norm")
                .irreducible;
        }
    }
    unreachable!()
}

/// N(z) = Res_u(p, (z − k·u)² − d) over Z, from its values at z = 0..=2·deg p
/// computed modulo word-size primes until the Hadamard bound is passed.
fn shifted_norm(p: &IntPoly, d: &IntPoly, k: i64) -> IntPoly {
    let m = p.degree().unwrap();
    let rs: Vec<IntPoly> = (0..=2 * m as i64)
        .map(|z| {
            let lin = IntPoly::from_i64s(&[z, -k]);
            lin.square().sub(d)
        })
        .collect();
    let log2 = |x: &BigInt| x.bits() as f64;
    let bound = rs
        .iter()
        .map(|r| {
            let dr = r.degree().unwrap_or(0) as f64;
            dr * log2(&p.norm2_ceil()) + m as f64 * log2(&r.norm2_ceil())
        })
        .fold(0.0, f64::max)
        + 2.0;
    let lcs: Vec<BigInt> = std::iter::once(p.leading().unwrap().clone())
        .chain(rs.iter().filter_map(|r| r.leading().cloned()))
        .collect();
    let mut modulus = BigInt::one();
    let mut values = vec![BigInt::zero(); rs.len()];
    for l in large_primes() {
        if (modulus.bits() as f64) > bound {
            break;
        }
        let lb = BigInt::from(l);
        if lcs.iter().any(|c| (c % &lb).is_zero()) {
            continue;
        }
        let pl = p.reduce_mod(l);
        let minv = nmod::invm(modulus.mod_floor(&lb).to_u64().unwrap(), l);
        for (v, r) in values.iter_mut().zip(&rs) {
            let res = nmod::resultant(&pl, &r.reduce_mod(l), l);
            let cur = v.mod_floor(&lb).to_u64().unwrap();
            let t = nmod::mulm(nmod::subm(res, cur, l), minv, l);
            *v += &modulus * BigInt::from(t);
        }
        modulus *= lb;
    }
    let half = &modulus >> 1;
    let points: Vec<(Rational, Rational)> = values
        .into_iter()
        .enumerate()
        .map(|(z, v)| {
            let v = if v > half { v - &modulus } else { v };
            (int(z as i64), Rational::from_integer(v))
        })
        .collect();
    IntPoly::from_rational(&interpolate(&points)).1
}

/// A degree-one prime of Q(α) at which d(α) is a unit non-residue rules out a
/// square root.
fn has_nonresidue_specialization(d: &Polynomial<Rational>, p: &Polynomial<Rational>) -> bool {
    let reduce = |f: &Polynomial<Rational>, l: u64| -> Option<Vec<u64>> {
        let r = reduce_poly(f, l).ok()?;
        Some(r.coeffs().iter().map(|c| c.value()).collect())
    };
    for l in primes_up_to(400).into_iter().skip(2) {
        let (Some(pl), Some(dl)) = (reduce(p, l), reduce(d, l)) else {
            continue;
        };
        if nmod::degree(&pl) != p.degree()
            || nmod::degree(&nmod::gcd(&pl, &nmod::derivative(&pl, l), l)) != Some(0)
        {
            continue;
        }
        for r in 0..l {
            if nmod::eval(&pl, r, l) != 0 {
                continue;
            }
            let v = nmod::eval(&dl, r, l);
            if v != 0 && nmod::powm(v, (l - 1) / 2, l) == l - 1 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(&(), cs)
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 + 1) = 5
        assert_eq!(resultant(&qp(&[-2, 1]), &qp(&[1, 0, 1])), int(5));
        // Res(x^2 - 1, x^2 - 4) = (1-4)(1-4)(−1−2)(−1+2)... = 9
        assert_eq!(resultant(&qp(&[-1, 0, 1]), &qp(&[-4, 0, 1])), int(9));
        assert_eq!(resultant(&qp(&[-1, 0, 1]), &qp(&[1, 1])), int(0));
    }

    #[test]
    fn squares_in_number_fields() {
        let p = qp(&[2, 0, 0, 1]); // Q(cbrt(-2))
        assert!(is_square_in_residue_field(&qp(&[0, 0, 1]), &p)); // u^2
        assert!(!is_square_in_residue_field(&qp(&[-2]), &p)); // -2 = u^3 is not a square
        assert!(is_square_in_residue_field(&qp(&[4]), &p));
        let i = qp(&[1, 0, 1]); // Q(i)
        assert!(is_square_in_residue_field(&qp(&[0, 2]), &i)); // 2i = (1+i)^2
        assert!(!is_square_in_residue_field(&qp(&[0, 1]), &i));
        assert!(is_square_in_residue_field(&qp(&[-1]), &i));
    }
}
