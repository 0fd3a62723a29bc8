//! The function field K(C) of a double cover v² + h(u)v = g(u) of the u-line,
//! or of the u-line itself, together with places and valuations.

mod element;
mod places;
mod resultant;

pub use element::{ff_invert, FFElement};
pub use places::{
    ord_at_place, ord_poly, place_of_irreducible, places_above, FiberBehavior, Place, PlaceLabel,
};
pub use resultant::{interpolate, is_square_in_residue_field, resultant};

use crate::arith::{squarefree_decompose, Field, Fp, Polynomial, Rational};
use crate::error::{Error, Result};

/// Scalars for which squareness can be decided.
pub trait SquareTest: Field {
    fn is_square_scalar(&self) -> bool;
}

impl SquareTest for Rational {
    fn is_square_scalar(&self) -> bool {
        crate::arith::rational::rational_sqrt(self).is_some()
    }
}

impl SquareTest for Fp {
    fn is_square_scalar(&self) -> bool {
        self.is_square()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveModel<F: Field> {
    /// C = P¹, so K(C) = F(u).
    ProjectiveLine(F::Ctx),
    /// v² + h(u)·v = g(u).
    DoubleCover { h: Polynomial<F>, g: Polynomial<F> },
}

impl<F: Field> CurveModel<F> {
    pub fn projective_line(ctx: &F::Ctx) -> Self {
        CurveModel::ProjectiveLine(ctx.clone())
    }

    pub fn ctx(&self) -> F::Ctx {
        match self {
            CurveModel::ProjectiveLine(c) => c.clone(),
            CurveModel::DoubleCover { g, .. } => g.ctx().clone(),
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self, CurveModel::ProjectiveLine(_))
    }

    /// [K(C) : F(u)].
    pub fn base_degree(&self) -> usize {
        if self.is_line() {
            1
        } else {
            2
        }
    }

    pub fn h(&self) -> Polynomial<F> {
        match self {
            CurveModel::ProjectiveLine(c) => Polynomial::zero(c),
            CurveModel::DoubleCover { h, .. } => h.clone(),
        }
    }

    pub fn g(&self) -> Polynomial<F> {
        match self {
            CurveModel::ProjectiveLine(c) => Polynomial::zero(c),
            CurveModel::DoubleCover { g, .. } => g.clone(),
        }
    }

    /// h² + 4g, the discriminant of the cover.
    pub fn discriminant(&self) -> Polynomial<F> {
        let h = self.h();
        &(&h * &h) + &self.g().scale(&F::from_i64(&self.ctx(), 4))
    }
}

impl<F: SquareTest> CurveModel<F> {
    pub fn double_cover(h: Polynomial<F>, g: Polynomial<F>) -> Result<Self> {
        let model = CurveModel::DoubleCover { h, g };
        let d = model.discriminant();
        let two = F::characteristic(&model.ctx()) == 2;
        let square = if two {
            false
        } else if d.is_zero() {
            true
        } else {
            let sq = squarefree_decompose(&d)?;
            sq.unit.is_square_scalar() && sq.parts.iter().all(|(_, e)| e % 2 == 0)
        };
        if square {
            return Err(Error::InvalidInput(
                "h^2 + 4g is a square, so the cover is reducible".into(),
            ));
        }
        Ok(model)
    }
}

impl CurveModel<Rational> {
    /// Reduction modulo a prime not dividing any denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<CurveModel<Fp>> {
        Ok(match self {
            CurveModel::ProjectiveLine(_) => CurveModel::ProjectiveLine(p),
            CurveModel::DoubleCover { h, g } => CurveModel::DoubleCover {
                h: crate::arith::fp::reduce_poly(h, p)?,
                g: crate::arith::fp::reduce_poly(g, p)?,
            },
        })
    }
}
