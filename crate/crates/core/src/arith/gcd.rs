//! Multi-modular gcd over Z[x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::nmod;
use super::primes::large_primes;
use super::zpoly::IntPoly;

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let a = a.primitive_part();
    let b = b.primitive_part();
    if a.degree() == Some(0) || b.degree() == Some(0) {
        return IntPoly::one();
    }
    if a == b {
        return a;
    }
    let lc_gcd = a.leading().unwrap().gcd(b.leading().unwrap());
    let mut modulus = BigInt::one();
    let mut acc: Option<Vec<BigInt>> = None;
    let mut acc_deg = usize::MAX;
    let mut last_candidate: Option<IntPoly> = None;

    for p in large_primes() {
        let pb = BigInt::from(p);
        if (&lc_gcd % &pb).is_zero() {
            continue;
        }
        let ap = a.reduce_mod(p);
        let bp = b.reduce_mod(p);
        if ap.len() != a.coeffs().len() && bp.len() != b.coeffs().len() {
            continue;
        }
        let g = nmod::gcd(&ap, &bp, p);
        let dg = g.len() - 1;
        if dg == 0 {
            return IntPoly::one();
        }
        if dg > acc_deg {
            continue;
        }
        let lcp = lc_gcd.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|&c| nmod::mulm(c, lcp, p)).collect();
        if dg < acc_deg {
            acc_deg = dg;
            acc = Some(image.iter().map(|&c| BigInt::from(c)).collect());
            modulus = pb;
            last_candidate = None;
        } else {
            let cur = acc.as_mut().unwrap();
            let minv = nmod::invm(modulus.mod_floor(&pb).to_u64().unwrap(), p);
            for (c, &r) in cur.iter_mut().zip(&image) {
                let cm = c.mod_floor(&pb).to_u64().unwrap();
                let t = nmod::mulm(nmod::subm(r, cm, p), minv, p);
                *c += &modulus * BigInt::from(t);
            }
            modulus *= &pb;
        }
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .as_ref()
            .unwrap()
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let candidate = IntPoly::new(sym).primitive_part();
        if last_candidate.as_ref() == Some(&candidate)
            && candidate.divides(&a)
            && candidate.divides(&b)
        {
            return candidate;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("prime supply exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_factor_recovered() {
        let c = IntPoly::from_i64s(&[7, -3, 0, 5]);
        let a = c.mul(&IntPoly::from_i64s(&[1, 1, 1]));
        let b = c
            .mul(&IntPoly::from_i64s(&[-2, 0, 0, 4]))
            .scale(&BigInt::from(6));
        assert_eq!(int_gcd(&a, &b), c);
        assert_eq!(
            int_gcd(&IntPoly::from_i64s(&[1, 1]), &IntPoly::from_i64s(&[1, 2])),
            IntPoly::one()
        );
    }

    #[test]
    fn large_coefficients() {
        let big = BigInt::parse_bytes(b"123456789012345678901234567890123", 10).unwrap();
        let c = IntPoly::new(vec![big.clone(), BigInt::from(1), -&big]);
        let a = c.mul(&IntPoly::from_i64s(&[3, 0, 1])).mul(&c);
        let b = c.mul(&IntPoly::from_i64s(&[5, 1]));
        let mut expect = c.primitive_part();
        if expect.leading().unwrap() < &BigInt::zero() {
            expect = expect.neg();
        }
        assert_eq!(int_gcd(&a, &b), expect);
    }
}
