use std::sync::Arc;

use num_bigint::BigInt;

use super::CurveModel;
use crate::arith::fp::reduce_poly;
use crate::arith::{Field, Fp, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `a + b·v` in K(C); on the projective line `b` is always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FFElement<F: Field> {
    a: RationalFunction<F>,
    b: RationalFunction<F>,
    model: Arc<CurveModel<F>>,
}

impl<F: Field> FFElement<F> {
    pub fn new(
        a: RationalFunction<F>,
        b: RationalFunction<F>,
        model: &Arc<CurveModel<F>>,
    ) -> Result<Self> {
        if model.is_line() && !b.is_zero() {
            return Err(Error::InvalidInput(
                "v-part given on the projective line".into(),
            ));
        }
        Ok(FFElement {
            a,
            b,
            model: model.clone(),
        })
    }

    pub fn from_base(a: RationalFunction<F>, model: &Arc<CurveModel<F>>) -> Self {
        let b = RationalFunction::zero(&model.ctx());
        FFElement {
            a,
            b,
            model: model.clone(),
        }
    }

    /// The coordinate `v` of the cover.
    pub fn v(model: &Arc<CurveModel<F>>) -> Result<Self> {
        Self::new(
            RationalFunction::zero(&model.ctx()),
            RationalFunction::one(&model.ctx()),
            model,
        )
    }

    /// The coordinate `u` of the base.
    pub fn u(model: &Arc<CurveModel<F>>) -> Self {
        Self::from_base(RationalFunction::var(&model.ctx()), model)
    }

    pub fn a(&self) -> &RationalFunction<F> {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction<F> {
        &self.b
    }

    pub fn model(&self) -> &Arc<CurveModel<F>> {
        &self.model
    }

    pub fn in_base(&self) -> bool {
        self.b.is_zero()
    }

    fn h(&self) -> RationalFunction<F> {
        RationalFunction::from_poly(self.model.h())
    }

    fn g(&self) -> RationalFunction<F> {
        RationalFunction::from_poly(self.model.g())
    }

    /// `(a − b·h) − b·v`.
    pub fn conjugate(&self) -> Self {
        FFElement {
            a: self.a.sub(&self.b.mul(&self.h())),
            b: self.b.neg(),
            model: self.model.clone(),
        }
    }

    /// `a² − a·b·h − b²·g`.
    pub fn norm(&self) -> RationalFunction<F> {
        self.a
            .square()
            .sub(&self.a.mul(&self.b).mul(&self.h()))
            .sub(&self.b.square().mul(&self.g()))
    }
}

pub fn ff_invert<F: Field>(z: &FFElement<F>) -> Result<FFElement<F>> {
    z.inv().ok_or(Error::ZeroInput)
}

impl FFElement<Rational> {
    /// Reduction into the function field of the reduced model.
    pub fn reduce_mod(&self, model: &Arc<CurveModel<Fp>>) -> Result<FFElement<Fp>> {
        let p = model.ctx();
        let red = |r: &RationalFunction<Rational>| {
            RationalFunction::new(reduce_poly(r.num(), p)?, reduce_poly(r.den(), p)?)
        };
        FFElement::new(red(&self.a)?, red(&self.b)?, model)
    }
}

impl<F: Field> Field for FFElement<F> {
    type Ctx = Arc<CurveModel<F>>;

    fn ctx(&self) -> Self::Ctx {
        self.model.clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_base(RationalFunction::zero(&ctx.ctx()), ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_base(RationalFunction::one(&ctx.ctx()), ctx)
    }
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_base(RationalFunction::from_i64(&ctx.ctx(), n), ctx)
    }
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self {
        Self::from_base(RationalFunction::from_bigint(&ctx.ctx(), n), ctx)
    }
    fn characteristic(ctx: &Self::Ctx) -> u64 {
        F::characteristic(&ctx.ctx())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        FFElement {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
            model: self.model.clone(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        FFElement {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
            model: self.model.clone(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.b.is_zero() && rhs.b.is_zero() {
            return Self::from_base(self.a.mul(&rhs.a), &self.model);
        }
        // v² = g − h·v
        let bb = self.b.mul(&rhs.b);
        let a = self.a.mul(&rhs.a).add(&bb.mul(&self.g()));
        let b = self
            .a
            .mul(&rhs.b)
            .add(&rhs.a.mul(&self.b))
            .sub(&bb.mul(&self.h()));
        FFElement {
            a,
            b,
            model: self.model.clone(),
        }
    }
    fn neg(&self) -> Self {
        FFElement {
            a: self.a.neg(),
            b: self.b.neg(),
            model: self.model.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::from_base(self.a.inv()?, &self.model));
        }
        let n = self.norm().inv()?;
        let c = self.conjugate();
        Some(FFElement {
            a: c.a.mul(&n),
            b: c.b.mul(&n),
            model: self.model.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Polynomial;

    fn qp(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_i64s(&(), cs)
    }

    #[test]
    fn inverses_of_v() {
        let m = Arc::new(CurveModel::double_cover(qp(&[]), qp(&[-2, 0, 0, 1])).unwrap());
        let v = FFElement::v(&m).unwrap();
        let inv = ff_invert(&v).unwrap();
        let expect = FFElement::new(
            RationalFunction::zero(&()),
            RationalFunction::new(qp(&[1]), qp(&[-2, 0, 0, 1])).unwrap(),
            &m,
        )
        .unwrap();
        assert_eq!(inv, expect);

        let g = qp(&[-263580, -7820, -1, 1]);
        let m = Arc::new(CurveModel::double_cover(qp(&[1]), g.clone()).unwrap());
        let v = FFElement::v(&m).unwrap();
        let inv = ff_invert(&v).unwrap();
        let gi = RationalFunction::new(qp(&[1]), g).unwrap();
        assert_eq!(inv, FFElement::new(gi.clone(), gi, &m).unwrap());
        assert!(v.mul(&inv).is_one());
        assert_eq!(ff_invert(&FFElement::zero(&m)), Err(Error::ZeroInput));
        assert!(ff_invert(&FFElement::one(&m)).unwrap().is_one());
    }

    #[test]
    fn square_discriminant_rejected() {
        assert!(CurveModel::double_cover(qp(&[]), qp(&[1, 2, 1])).is_err());
        assert!(CurveModel::double_cover(qp(&[0, 2]), qp(&[])).is_err());
    }
}
