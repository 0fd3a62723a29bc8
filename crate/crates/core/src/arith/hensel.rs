//! Multifactor quadratic Hensel lifting over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{to_nmod, Fp};
use super::nmod;
use super::poly::Polynomial;
use super::zpoly::IntPoly;
use crate::error::{Error, Result};

type Pm = Vec<BigInt>;

fn trim(v: &mut Pm) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn reduce(a: &[BigInt], m: &BigInt) -> Pm {
    let mut v: Pm = a.iter().map(|x| x.mod_floor(m)).collect();
    trim(&mut v);
    v
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Pm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Pm = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Pm {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: Pm = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Pm {
    reduce(&super::zpoly::mul_coeffs(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Pm, Pm) {
    let dh = h.len() - 1;
    if a.len() < h.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dh];
    for i in (0..q.len()).rev() {
        let c = r[i + dh].mod_floor(m);
        if !c.is_zero() {
            for (j, hj) in h.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * hj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(dh);
    let r = reduce(&r, m);
    trim(&mut q);
    (q, r)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn from_u64s(v: &[u64]) -> Pm {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `f ≡ g·h (mod p)` to modulus `pk`, `h` monic.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, pk: &BigInt) -> Result<(Pm, Pm)> {
    let (one, s0, t0) = nmod::xgcd(g0, h0, p);
    if one != [1] {
        return Err(Error::NotCoprime(p));
    }
    let (mut g, mut h, mut s, mut t) =
        (from_u64s(g0), from_u64s(h0), from_u64s(&s0), from_u64s(&t0));
    let mut m = BigInt::from(p);
    while &m < pk {
        let mm = (&m * &m).min(pk.clone());
        let e = sub(f, &mul(&g, &h, &mm), &mm);
        let (q, r) = div_rem_monic(&mul(&s, &e, &mm), &h, &mm);
        let g1 = add(&add(&g, &mul(&t, &e, &mm), &mm), &mul(&q, &g, &mm), &mm);
        let h1 = add(&h, &r, &mm);
        let b = sub(
            &add(&mul(&s, &g1, &mm), &mul(&t, &h1, &mm), &mm),
            &[BigInt::one()],
            &mm,
        );
        let (c, d) = div_rem_monic(&mul(&s, &b, &mm), &h1, &mm);
        s = sub(&s, &d, &mm);
        t = sub(&sub(&t, &mul(&t, &b, &mm), &mm), &mul(&c, &g1, &mm), &mm);
        g = g1;
        h = h1;
        m = mm;
    }
    Ok((g, h))
}

fn lift_tree(f: &[BigInt], factors: &[Vec<u64>], p: u64, pk: &BigInt) -> Result<Vec<Pm>> {
    let lc = f.last().cloned().unwrap_or_default();
    if factors.len() == 1 {
        let inv = inv_mod(&lc, pk).ok_or(Error::NotCoprime(p))?;
        return Ok(vec![reduce(
            &f.iter().map(|x| x * &inv).collect::<Vec<_>>(),
            pk,
        )]);
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = lc.mod_floor(&BigInt::from(p));
    let lc_p: u64 = lc_p.try_into().unwrap();
    let g0 = left.iter().fold(vec![lc_p], |acc, x| nmod::mul(&acc, x, p));
    let h0 = right
        .iter()
        .fold(vec![1u64], |acc, x| nmod::mul(&acc, x, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, pk)?;
    let mut out = lift_tree(&g, left, p, pk)?;
    out.extend(lift_tree(&h, right, p, pk)?);
    Ok(out)
}

/// Lifts monic factors of `a` modulo `p` to monic factors modulo `p^k`,
/// coefficients in `[0, p^k)`, with `lc(a) · Π lifted ≡ a (mod p^k)`.
pub fn hensel_lift_factors(
    a: &IntPoly,
    factors: &[Polynomial<Fp>],
    k: u32,
) -> Result<Vec<IntPoly>> {
    let Some(first) = factors.first() else {
        return Err(Error::InvalidInput("no factors given".into()));
    };
    let p = *first.ctx();
    let raw: Vec<Vec<u64>> = factors
        .iter()
        .map(|f| nmod::monic(&to_nmod(f), p))
        .collect();
    lift_raw(a, &raw, p, k)
}

pub(crate) fn lift_raw(a: &IntPoly, raw: &[Vec<u64>], p: u64, k: u32) -> Result<Vec<IntPoly>> {
    let lc = a.leading().ok_or(Error::ZeroInput)?;
    let pb = BigInt::from(p);
    if (lc % &pb).is_zero() {
        return Err(Error::InvalidInput(format!(
            "leading coefficient is not a unit modulo {p}"
        )));
    }
    let lc_p = nmod::scale(&[1], lc.mod_floor(&pb).try_into().unwrap(), p);
    let prod = raw.iter().fold(lc_p, |acc, x| nmod::mul(&acc, x, p));
    if prod != a.reduce_mod(p) {
        return Err(Error::InvalidInput(format!(
            "factors do not multiply to the input modulo {p}"
        )));
    }
    let pk = pb.pow(k);
    let lifted = lift_tree(a.coeffs(), raw, p, &pk)?;
    Ok(lifted.into_iter().map(IntPoly::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::fp_poly;

    #[test]
    fn lifts_known_examples() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]);
        let f = [fp_poly(3, &[-1, 1]), fp_poly(3, &[1, 1])];
        let l = hensel_lift_factors(&a, &f, 2).unwrap();
        assert_eq!(
            l,
            vec![IntPoly::from_i64s(&[8, 1]), IntPoly::from_i64s(&[1, 1])]
        );

        let a = IntPoly::from_i64s(&[1, 0, 1]);
        let f = [fp_poly(5, &[2, 1]), fp_poly(5, &[3, 1])];
        let l = hensel_lift_factors(&a, &f, 2).unwrap();
        assert_eq!(
            l,
            vec![IntPoly::from_i64s(&[7, 1]), IntPoly::from_i64s(&[18, 1])]
        );
    }

    #[test]
    fn rejects_shared_factors() {
        let a = IntPoly::from_i64s(&[1, 2, 1]);
        let f = [fp_poly(5, &[1, 1]), fp_poly(5, &[1, 1])];
        assert_eq!(hensel_lift_factors(&a, &f, 2), Err(Error::NotCoprime(5)));
    }

    #[test]
    fn non_monic_product() {
        // 6x^3 + 7x^2 + 7x + 2 = (2x + 1)(3x^2 + 2x + 2), split mod 7 fully.
        let a = IntPoly::from_i64s(&[2, 7, 7, 6]);
        let p = 7;
        let fac = crate::arith::factor_fp::factor_mod_p(&fp_poly(p, &[2, 7, 7, 6]), 0).unwrap();
        let fs: Vec<_> = fac.factors.iter().map(|x| x.0.clone()).collect();
        let k = 5;
        let l = hensel_lift_factors(&a, &fs, k).unwrap();
        let pk = BigInt::from(p).pow(k);
        let prod = l
            .iter()
            .fold(IntPoly::constant(BigInt::from(6)), |acc, x| acc.mul(x));
        assert_eq!(reduce(prod.coeffs(), &pk), reduce(a.coeffs(), &pk));
    }
}
