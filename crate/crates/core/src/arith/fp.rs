use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::field::Field;
use super::nmod;
use super::poly::{self, Polynomial};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Residue modulo a prime `p`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            v: (v as i128).rem_euclid(p as i128) as u64,
            p,
        }
    }

    pub fn from_u64(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        Fp {
            v: v.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
            p,
        }
    }

    /// Reduction of a rational whose denominator is a unit mod `p`.
    pub fn from_rational(q: &Rational, p: u64) -> Result<Self> {
        let d = Fp::from_bigint(q.denom(), p);
        if d.v == 0 {
            return Err(Error::InvalidInput(format!(
                "denominator of {q} is divisible by {p}"
            )));
        }
        Ok(Fp::from_bigint(q.numer(), p).mul(&d.inv().unwrap()))
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(&self) -> bool {
        self.v == 0 || self.p == 2 || Field::pow(self, (self.p - 1) / 2).v == 1
    }

    fn mulm(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_i64(p: &u64, n: i64) -> Self {
        Fp::new(n, *p)
    }
    fn from_bigint(p: &u64, n: &BigInt) -> Self {
        Fp::from_bigint(n, *p)
    }
    fn characteristic(p: &u64) -> u64 {
        *p
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.v as u128 + rhs.v as u128;
        Fp {
            v: (s % self.p as u128) as u64,
            p: self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let v = if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.p - (rhs.v - self.v)
        };
        Fp { v, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp {
            v: Self::mulm(self.v, rhs.v, self.p),
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: if self.v == 0 { 0 } else { self.p - self.v },
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Fp {
            v: t0.rem_euclid(self.p as i128) as u64,
            p: self.p,
        })
    }

    /// In F_p every element is its own p-th root.
    fn pth_root(&self) -> Self {
        *self
    }

    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        let p = a[0].p;
        if p >= nmod::MAX_MODULUS {
            return poly::schoolbook_mul(a, b);
        }
        wrap(nmod::mul(&raw(a), &raw(b), p), p)
    }

    fn poly_div_rem(a: &[Self], b: &[Self]) -> (Vec<Self>, Vec<Self>) {
        let p = b[0].p;
        if p >= nmod::MAX_MODULUS {
            return poly::long_div_rem(a, b);
        }
        let (q, r) = nmod::div_rem(&raw(a), &raw(b), p);
        (wrap(q, p), wrap(r, p))
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        let p = *a.ctx();
        if p >= nmod::MAX_MODULUS {
            return poly::euclid_gcd(a, b);
        }
        from_nmod(nmod::gcd(&to_nmod(a), &to_nmod(b), p), p)
    }
}

pub fn raw(a: &[Fp]) -> Vec<u64> {
    a.iter().map(|x| x.v).collect()
}

pub fn wrap(v: Vec<u64>, p: u64) -> Vec<Fp> {
    v.into_iter().map(|x| Fp { v: x, p }).collect()
}

pub fn to_nmod(a: &Polynomial<Fp>) -> Vec<u64> {
    raw(a.coeffs())
}

pub fn from_nmod(v: Vec<u64>, p: u64) -> Polynomial<Fp> {
    Polynomial::new(wrap(v, p), &p)
}

/// Reduces a rational polynomial modulo `p`.
pub fn reduce_poly(a: &Polynomial<Rational>, p: u64) -> Result<Polynomial<Fp>> {
    let cs = a
        .coeffs()
        .iter()
        .map(|c| Fp::from_rational(c, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(cs, &p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 7;
        let a = Fp::new(-3, p);
        assert_eq!(a.value(), 4);
        assert_eq!(a.mul(&a.inv().unwrap()), Fp::one(&p));
        assert!(Fp::new(2, p).is_square());
        assert!(!Fp::new(3, p).is_square());
        let big = 18_446_744_073_709_551_557u64;
        let x = Fp::from_u64(big - 2, big);
        assert_eq!(x.mul(&x.inv().unwrap()).value(), 1);
        assert_eq!(x.add(&Fp::from_u64(5, big)).value(), 3);
    }

    #[test]
    fn rational_reduction() {
        let q = Rational::new(3.into(), 5.into());
        assert_eq!(Fp::from_rational(&q, 7).unwrap().value(), 2);
        assert!(Fp::from_rational(&q, 5).is_err());
    }
}
