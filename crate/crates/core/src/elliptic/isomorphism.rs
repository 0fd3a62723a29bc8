use num_traits::Signed;

use super::curve::{CurvePoint, WeierstrassCurve};
use crate::arith::{Field, Rational};
use crate::error::{Error, Result};

/// The change of variables x = u²x' + r, y = u³y' + su²x' + t.
#[derive(Clone, Debug, PartialEq)]
pub struct Isomorphism<F: Field> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Isomorphism<F> {
    pub fn identity(ctx: &F::Ctx) -> Self {
        Isomorphism {
            u: F::one(ctx),
            r: F::zero(ctx),
            s: F::zero(ctx),
            t: F::zero(ctx),
        }
    }

    /// The curve in the primed coordinates.
    pub fn apply_curve(&self, e: &WeierstrassCurve<F>) -> Result<WeierstrassCurve<F>> {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let ui = u.inv().ok_or(Error::DivisionByZero)?;
        let c = |n: i64| F::from_i64(&u.ctx(), n);
        let a1 = e.a1.add(&s.mul(&c(2))).mul(&ui);
        let a2 =
            e.a2.sub(&s.mul(&e.a1))
                .add(&r.mul(&c(3)))
                .sub(&s.square())
                .mul(&ui.pow(2));
        let a3 = e.a3.add(&r.mul(&e.a1)).add(&t.mul(&c(2))).mul(&ui.pow(3));
        let a4 =
            e.a4.sub(&s.mul(&e.a3))
                .add(&r.mul(&e.a2).mul(&c(2)))
                .sub(&t.add(&r.mul(s)).mul(&e.a1))
                .add(&r.square().mul(&c(3)))
                .sub(&s.mul(t).mul(&c(2)))
                .mul(&ui.pow(4));
        let a6 =
            e.a6.add(&r.mul(&e.a4))
                .add(&r.square().mul(&e.a2))
                .add(&r.pow(3))
                .sub(&t.mul(&e.a3))
                .sub(&t.square())
                .sub(&r.mul(t).mul(&e.a1))
                .mul(&ui.pow(6));
        WeierstrassCurve::new(a1, a2, a3, a4, a6)
    }

    pub fn map_point(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let ui = self.u.inv().unwrap();
                let xr = x.sub(&self.r);
                let y2 = y.sub(&self.s.mul(&xr)).sub(&self.t).mul(&ui.pow(3));
                CurvePoint::Affine(xr.mul(&ui.square()), y2)
            }
        }
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Isomorphism<G> {
        Isomorphism {
            u: f(&self.u),
            r: f(&self.r),
            s: f(&self.s),
            t: f(&self.t),
        }
    }

    /// x' as a function of x.
    pub fn map_x(&self, x: &F) -> F {
        x.sub(&self.r).mul(&self.u.square().inv().unwrap())
    }

    /// First `self`, then `next`.
    pub fn then(&self, next: &Isomorphism<F>) -> Isomorphism<F> {
        let u2 = self.u.square();
        Isomorphism {
            u: self.u.mul(&next.u),
            r: self.r.add(&u2.mul(&next.r)),
            s: self.s.add(&self.u.mul(&next.s)),
            t: self
                .t
                .add(&self.s.mul(&u2).mul(&next.r))
                .add(&u2.mul(&self.u).mul(&next.t)),
        }
    }
}

fn exact_root(q: &Rational, n: u32) -> Option<Rational> {
    let root = |z: &num_bigint::BigInt| {
        if z.is_negative() && n.is_multiple_of(2) {
            return None;
        }
        let r = z.nth_root(n);
        (r.pow(n) == *z).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

impl Isomorphism<Rational> {
    /// An isomorphism E → E' over Q, if one exists.
    pub fn between(
        e: &WeierstrassCurve<Rational>,
        e2: &WeierstrassCurve<Rational>,
    ) -> Result<Self> {
        if e.j_invariant() != e2.j_invariant() {
            return Err(Error::NotIsomorphic);
        }
        let candidates: Vec<Rational> = if e.c4.is_zero() {
            // j = 0: u⁶ = c6/c6'
            let u6 = &e.c6 / &e2.c6;
            exact_root(&u6, 6)
                .into_iter()
                .flat_map(|u| [u.clone(), -u])
                .collect()
        } else if e.c6.is_zero() {
            let u4 = &e.c4 / &e2.c4;
            exact_root(&u4, 4)
                .into_iter()
                .flat_map(|u| [u.clone(), -u])
                .collect()
        } else {
            let u2 = (&e.c6 * &e2.c4) / (&e2.c6 * &e.c4);
            exact_root(&u2, 2)
                .into_iter()
                .flat_map(|u| [u.clone(), -u])
                .collect()
        };
        let twelve = Rational::from_integer(12.into());
        let two = Rational::from_integer(2.into());
        for u in candidates {
            let r = (&u * &u * &e2.b2 - &e.b2) / &twelve;
            let s = (&u * &e2.a1 - &e.a1) / &two;
            let t = (u.pow(3) * &e2.a3 - &e.a3 - &r * &e.a1) / &two;
            let iso = Isomorphism { u, r, s, t };
            if iso.apply_curve(e).as_ref() == Ok(e2) {
                return Ok(iso);
            }
        }
        Err(Error::NotIsomorphic)
    }
}
