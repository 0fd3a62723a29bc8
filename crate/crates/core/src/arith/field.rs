use std::fmt::Debug;

use num_bigint::BigInt;

use super::poly::{self, Polynomial};

/// A field whose elements carry their own context (modulus, curve model, ...).
///
/// The `poly_*` hooks let a coefficient field swap in faster kernels for
/// polynomial multiplication, division and gcd.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
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

    fn mul_int(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(&self.ctx(), n))
    }

    /// Inverse of Frobenius for perfect fields of positive characteristic.
    fn pth_root(&self) -> Self {
        self.clone()
    }

    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        poly::schoolbook_mul(a, b)
    }

    fn poly_div_rem(a: &[Self], b: &[Self]) -> (Vec<Self>, Vec<Self>) {
        poly::long_div_rem(a, b)
    }

    fn poly_gcd(a: &Polynomial<Self>, b: &Polynomial<Self>) -> Polynomial<Self> {
        poly::euclid_gcd(a, b)
    }

    fn poly_eval(p: &Polynomial<Self>, x: &Self) -> Self {
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(p.ctx()), |acc, c| acc.mul(x).add(c))
    }
}
