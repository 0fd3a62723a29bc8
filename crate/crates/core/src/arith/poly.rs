//! Dense univariate polynomials over a generic field.

use std::ops;

use super::field::Field;
use crate::error::{Error, Result};

/// Coefficients lowest degree first; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F::Ctx) -> Self {
        trim(&mut coeffs);
        Polynomial {
            coeffs,
            ctx: ctx.clone(),
        }
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            ctx: ctx.clone(),
        }
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], &ctx)
    }

    pub fn x(ctx: &F::Ctx) -> Self {
        Self::new(vec![F::zero(ctx), F::one(ctx)], ctx)
    }

    pub fn monomial(c: F, d: usize) -> Self {
        let ctx = c.ctx();
        let mut v = vec![F::zero(&ctx); d];
        v.push(c);
        Self::new(v, &ctx)
    }

    pub fn from_i64s(ctx: &F::Ctx, cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(ctx, c)).collect(), ctx)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), &self.ctx)
    }

    pub fn mul_xn(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![F::zero(&self.ctx); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, &self.ctx)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let (q, r) = F::poly_div_rem(&self.coeffs, &d.coeffs);
        Ok((Self::new(q, &self.ctx), Self::new(r, &self.ctx)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(i as i64))
                .collect(),
            &self.ctx,
        )
    }

    pub fn eval(&self, x: &F) -> F {
        F::poly_eval(self, x)
    }

    /// Evaluates at an element of another field through an embedding of the
    /// coefficients.
    pub fn eval_with<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(G::zero(&x.ctx()), |acc, c| acc.mul(x).add(&embed(c)))
    }

    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(&self.ctx), |acc, c| {
                &(&acc * g) + &Self::constant(c.clone())
            })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect(), ctx)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        poly_gcd(self, other)
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    F::poly_gcd(a, b)
}

/// Returns `(g, s, t)` with `s·a + t·b = g` and `g` monic (or zero).
pub fn poly_xgcd<F: Field>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> (Polynomial<F>, Polynomial<F>, Polynomial<F>) {
    let ctx = a.ctx().clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(&ctx), Polynomial::zero(&ctx));
    let (mut t0, mut t1) = (Polynomial::zero(&ctx), Polynomial::one(&ctx));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.leading().cloned() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = lc.inv().expect("nonzero");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

pub fn schoolbook_mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ctx = a[0].ctx();
    let mut out = vec![F::zero(&ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

pub fn long_div_rem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let db = b.len() - 1;
    let ctx = b[0].ctx();
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![F::zero(&ctx); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mul(&inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = r[i + j].sub(&c.mul(bj));
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn euclid_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let r = x.rem(&y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x.monic()
}

impl<'a, F: Field> ops::Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(v, &self.ctx)
    }
}

impl<'a, F: Field> ops::Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(v, &self.ctx)
    }
}

impl<'a, F: Field> ops::Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial::new(F::poly_mul(&self.coeffs, &rhs.coeffs), &self.ctx)
    }
}

impl<F: Field> ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().map(|c| c.neg()).collect(), &self.ctx)
    }
}

impl<F: Field> ops::Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<F: Field> ops::Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<F: Field> ops::Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<F: Field> ops::Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<F: Field + Eq> Eq for Polynomial<F> {}
