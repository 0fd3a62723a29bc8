use num_bigint::BigInt;

use super::field::Field;
use super::poly::{poly_gcd, Polynomial};
use crate::error::{Error, Result};

/// `num / den` in lowest terms with `den` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading().unwrap().inv().unwrap();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        let den = Polynomial::one(p.ctx());
        RationalFunction { num: p, den }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The generator `u` of F(u).
    pub fn var(ctx: &F::Ctx) -> Self {
        Self::from_poly(Polynomial::x(ctx))
    }

    pub fn num(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Degree as a map P¹ → P¹.
    pub fn map_degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Result<RationalFunction<G>> {
        RationalFunction::new(self.num.map(ctx, &f), self.den.map(ctx, &f))
    }

    pub fn eval(&self, x: &F) -> Option<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).unwrap()
    }
}

impl<F: Field> Field for RationalFunction<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.num.ctx().clone()
    }
    fn zero(ctx: &F::Ctx) -> Self {
        Self::from_poly(Polynomial::zero(ctx))
    }
    fn one(ctx: &F::Ctx) -> Self {
        Self::from_poly(Polynomial::one(ctx))
    }
    fn from_i64(ctx: &F::Ctx, n: i64) -> Self {
        Self::constant(F::from_i64(ctx, n))
    }
    fn from_bigint(ctx: &F::Ctx, n: &BigInt) -> Self {
        Self::constant(F::from_bigint(ctx, n))
    }
    fn characteristic(ctx: &F::Ctx) -> u64 {
        F::characteristic(ctx)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(n, &self.den * &rhs.den).unwrap()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first to keep intermediate degrees down.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap_or_else(|| self.num.clone());
        let d2 = rhs.den.exact_div(&g1).unwrap_or_else(|| rhs.den.clone());
        let n2 = rhs.num.exact_div(&g2).unwrap_or_else(|| rhs.num.clone());
        let d1 = self.den.exact_div(&g2).unwrap_or_else(|| self.den.clone());
        Self::new(&n1 * &n2, &d1 * &d2).unwrap()
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()).unwrap())
    }

    /// Homogenized Horner: p(a/b) = Σ c_i a^i b^(d−i) / b^d, reduced once at the end.
    fn poly_eval(p: &Polynomial<Self>, x: &Self) -> Self {
        let ctx = x.ctx();
        let Some(d) = p.degree() else {
            return Self::zero(&ctx);
        };
        let lcm = p.coeffs().iter().fold(Polynomial::one(&ctx), |l, c| {
            let g = poly_gcd(&l, &c.den);
            &l * &c.den.exact_div(&g).unwrap()
        });
        let scaled = |c: &Self| &c.num * &lcm.exact_div(&c.den).unwrap();
        let mut acc = scaled(&p.coeffs()[d]);
        let mut b_power = Polynomial::one(&ctx);
        for c in p.coeffs()[..d].iter().rev() {
            b_power = &b_power * &x.den;
            acc = &(&acc * &x.num) + &(&scaled(c) * &b_power);
        }
        Self::new(acc, &lcm * &b_power).unwrap()
    }
}
