use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::gcd;
use super::poly::{self, Polynomial};
use super::zpoly::{mul_coeffs, IntPoly};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// `(scale, integer coefficients)` with `a = scale · ints`, ints of content 1.
fn to_ints(a: &[Rational]) -> (Rational, Vec<BigInt>) {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (<Rational as One>::one(), ints);
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (Rational::new(g, den), ints)
}

fn from_ints(scale: &Rational, v: Vec<BigInt>) -> Vec<Rational> {
    v.into_iter()
        .map(|x| Rational::new(x * scale.numer(), scale.denom().clone()))
        .collect()
}

impl Field for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Zero::zero()
    }
    fn one(_: &()) -> Self {
        One::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        int(n)
    }
    fn from_bigint(_: &(), n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len() <= 2 || b.len() <= 2 {
            return poly::schoolbook_mul(a, b);
        }
        let (sa, ia) = to_ints(a);
        let (sb, ib) = to_ints(b);
        from_ints(&(sa * sb), mul_coeffs(&ia, &ib))
    }

    fn poly_div_rem(a: &[Self], b: &[Self]) -> (Vec<Self>, Vec<Self>) {
        if a.len() >= b.len() && b.len() > 2 {
            let (sa, ia) = to_ints(a);
            let (sb, ib) = to_ints(b);
            if let Some(q) = IntPoly::new(ia).div_exact(&IntPoly::new(ib)) {
                return (from_ints(&(sa / sb), q.into_coeffs()), Vec::new());
            }
        }
        poly::long_div_rem(a, b)
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let (_, ia) = IntPoly::from_rational(a);
        let (_, ib) = IntPoly::from_rational(b);
        gcd::int_gcd(&ia, &ib).to_monic_rational()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(&(), cs)
    }

    #[test]
    fn integer_kernels_agree_with_generic() {
        let a = Polynomial::new(vec![rat(1, 2), rat(-3, 4), int(5), rat(7, 3)], &());
        let b = Polynomial::new(vec![rat(2, 5), int(1), rat(-1, 6), int(2)], &());
        assert_eq!(
            Rational::poly_mul(a.coeffs(), b.coeffs()),
            poly::schoolbook_mul(a.coeffs(), b.coeffs())
        );
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        let shifted = &prod + &qp(&[1]);
        let (q, r) = shifted.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, shifted);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(qp(&[-1, 0, 1]).gcd(&qp(&[-1, 1])), qp(&[-1, 1]));
        assert_eq!(qp(&[4, 2]).gcd(&Polynomial::zero(&())), qp(&[2, 1]));
        assert!(Polynomial::<Rational>::zero(&())
            .gcd(&Polynomial::zero(&()))
            .is_zero());
    }

    #[test]
    fn sqrt() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }
}
