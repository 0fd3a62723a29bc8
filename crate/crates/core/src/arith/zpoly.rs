//! Integer polynomials, the working representation for factoring over Q.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::nmod;
use super::poly::Polynomial;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            c: vec![BigInt::one()],
        }
    }

    pub fn constant(v: BigInt) -> Self {
        Self::new(vec![v])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn div_scalar_exact(&self, d: &BigInt) -> IntPoly {
        if d.is_one() {
            return self.clone();
        }
        IntPoly::new(self.c.iter().map(|x| x / d).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        IntPoly::new(mul_coeffs(&self.c, &o.c))
    }

    pub fn square(&self) -> IntPoly {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        self.c.iter().rev().fold(IntPoly::zero(), |acc, c| {
            acc.mul(g).add(&IntPoly::constant(c.clone()))
        })
    }

    /// `Σ f_i a^i b^(d−i)` for a total degree `d ≥ deg f`.
    pub fn homogenize(&self, a: &IntPoly, b: &IntPoly, d: usize) -> IntPoly {
        let Some(df) = self.degree() else {
            return IntPoly::zero();
        };
        assert!(d >= df);
        let mut bpow = vec![IntPoly::one()];
        for i in 1..=d {
            let next = bpow[i - 1].mul(b);
            bpow.push(next);
        }
        let mut h = IntPoly::constant(self.c[df].clone());
        for i in (0..df).rev() {
            h = h.mul(a);
            if !self.c[i].is_zero() {
                h = h.add(&bpow[df - i].scale(&self.c[i]));
            }
        }
        h.mul(&bpow[d - df])
    }

    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut v: Vec<u64> = self
            .c
            .iter()
            .map(|x| x.mod_floor(&pb).to_u64().unwrap())
            .collect();
        nmod::trim(&mut v);
        v
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return None;
        }
        if !self.maybe_divisible_by(d) {
            return None;
        }
        let lc = &d.c[dd];
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] -= &qi * dj;
            }
            q[i] = qi;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Cheap necessary condition for divisibility, checked modulo one prime.
    fn maybe_divisible_by(&self, d: &IntPoly) -> bool {
        const P: u64 = 2_147_483_629;
        let dp = d.reduce_mod(P);
        if dp.len() != d.c.len() {
            return true;
        }
        nmod::rem(&self.reduce_mod(P), &dp, P).is_empty()
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Largest `k` with `self^k | other`, and the cofactor.
    pub fn multiplicity_in(&self, other: &IntPoly) -> (usize, IntPoly) {
        let mut k = 0;
        let mut cur = other.clone();
        while let Some(q) = cur.div_exact(self) {
            k += 1;
            cur = q;
        }
        (k, cur)
    }

    pub fn max_abs(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Ceiling of the Euclidean norm.
    pub fn norm2_ceil(&self) -> BigInt {
        let s: BigInt = self.c.iter().map(|x| x * x).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }

    /// Splits `p` as `s · I` with `I` primitive, positive leading coefficient.
    pub fn from_rational(p: &Polynomial<Rational>) -> (Rational, IntPoly) {
        if p.is_zero() {
            return (Rational::one(), IntPoly::zero());
        }
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let ip = IntPoly::new(ints);
        let mut g = ip.content();
        if ip.leading().unwrap().sign() == Sign::Minus {
            g = -g;
        }
        let prim = ip.div_scalar_exact(&g);
        (Rational::new(g, den), prim)
    }

    pub fn to_rational(&self) -> Polynomial<Rational> {
        Polynomial::new(
            self.c
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
            &(),
        )
    }

    /// The monic rational associate.
    pub fn to_monic_rational(&self) -> Polynomial<Rational> {
        match self.leading() {
            None => Polynomial::zero(&()),
            Some(lc) => Polynomial::new(
                self.c
                    .iter()
                    .map(|x| Rational::new(x.clone(), lc.clone()))
                    .collect(),
                &(),
            ),
        }
    }
}

pub fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]);
        let b = IntPoly::from_i64s(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(IntPoly::from_i64s(&[1, 1])));
        assert_eq!(a.div_exact(&IntPoly::from_i64s(&[1, 2])), None);
        assert_eq!(
            IntPoly::from_i64s(&[2, 0, 2]).div_exact(&IntPoly::from_i64s(&[1, 0, 1])),
            Some(IntPoly::from_i64s(&[2]))
        );
    }

    #[test]
    fn homogenize_matches_substitution() {
        // f(x) = x^2 - 3x + 5 at x = a/b with a = u, b = u^3 + 2.
        let f = IntPoly::from_i64s(&[5, -3, 1]);
        let a = IntPoly::from_i64s(&[0, 1]);
        let b = IntPoly::from_i64s(&[2, 0, 0, 1]);
        let h = f.homogenize(&a, &b, 3);
        let expect = a
            .square()
            .mul(&b)
            .sub(&a.mul(&b.square()).scale(&BigInt::from(3)))
            .add(&b.pow(3).scale(&BigInt::from(5)));
        assert_eq!(h, expect);
    }

    #[test]
    fn rational_split() {
        let p = Polynomial::new(
            vec![
                Rational::new(3.into(), 4.into()),
                Rational::new((-3).into(), 2.into()),
            ],
            &(),
        );
        let (s, i) = IntPoly::from_rational(&p);
        assert_eq!(i, IntPoly::from_i64s(&[-1, 2]));
        assert_eq!(s, Rational::new((-3).into(), 4.into()));
    }
}
