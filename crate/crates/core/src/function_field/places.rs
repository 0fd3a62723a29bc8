use std::cmp::Ordering;

use super::resultant::is_square_in_residue_field;
use super::CurveModel;
use crate::arith::factor_q::certify_irreducible;
use crate::arith::factored::cmp_poly;
use crate::arith::rational::rational_sqrt;
use crate::arith::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// A place of Q(u): a monic irreducible polynomial, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceLabel {
    Finite(Polynomial<Rational>),
    Infinity,
}

impl PlaceLabel {
    pub fn base_degree(&self) -> usize {
        match self {
            PlaceLabel::Finite(p) => p.degree().unwrap(),
            PlaceLabel::Infinity => 1,
        }
    }
}

impl Ord for PlaceLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PlaceLabel::Finite(a), PlaceLabel::Finite(b)) => cmp_poly(a, b),
            (PlaceLabel::Finite(_), PlaceLabel::Infinity) => Ordering::Less,
            (PlaceLabel::Infinity, PlaceLabel::Finite(_)) => Ordering::Greater,
            (PlaceLabel::Infinity, PlaceLabel::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for PlaceLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberBehavior {
    /// The base curve is the u-line itself.
    Trivial,
    Inert,
    Split,
    Ramified,
}

impl FiberBehavior {
    pub fn name(&self) -> &'static str {
        match self {
            FiberBehavior::Trivial => "trivial",
            FiberBehavior::Inert => "inert",
            FiberBehavior::Split => "split",
            FiberBehavior::Ramified => "ramified",
        }
    }
}

/// The places of C above a place of the u-line, taken collectively.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Place {
    pub label: PlaceLabel,
    pub ramification: u8,
    pub behavior: FiberBehavior,
}

impl Place {
    /// Total degree on C of the places above the label.
    pub fn degree(&self) -> usize {
        let d = self.label.base_degree();
        match self.behavior {
            FiberBehavior::Inert | FiberBehavior::Split => 2 * d,
            FiberBehavior::Ramified | FiberBehavior::Trivial => d,
        }
    }

    /// Whether the places above the label form a single Galois orbit.
    pub fn is_single_orbit(&self) -> bool {
        self.behavior != FiberBehavior::Split
    }
}

/// Order of a nonzero polynomial at a place of Q(u).
pub fn ord_poly(f: &Polynomial<Rational>, pl: &PlaceLabel) -> Option<i64> {
    let d = f.degree()?;
    Some(match pl {
        PlaceLabel::Infinity => -(d as i64),
        PlaceLabel::Finite(p) => {
            let mut k = 0;
            let mut cur = f.clone();
            while let Some(q) = cur.exact_div(p) {
                k += 1;
                cur = q;
            }
            k
        }
    })
}

pub fn ord_at_place(r: &RationalFunction<Rational>, pl: &PlaceLabel) -> Result<i64> {
    let n = ord_poly(r.num(), pl).ok_or(Error::ZeroInput)?;
    let d = ord_poly(r.den(), pl).unwrap();
    Ok(n - d)
}

pub fn places_above(model: &CurveModel<Rational>, pl: &PlaceLabel) -> Result<Place> {
    if let PlaceLabel::Finite(p) = pl {
        if !p.is_monic() || !certify_irreducible(p)?.irreducible {
            return Err(Error::ReduciblePlace);
        }
    }
    Ok(place_of_irreducible(model, pl))
}

/// `places_above` for a label already known to be irreducible.
pub fn place_of_irreducible(model: &CurveModel<Rational>, pl: &PlaceLabel) -> Place {
    if model.is_line() {
        return Place {
            label: pl.clone(),
            ramification: 1,
            behavior: FiberBehavior::Trivial,
        };
    }
    let disc = model.discriminant();
    let behavior = match pl {
        PlaceLabel::Infinity => {
            let d = disc.degree().unwrap();
            if d % 2 == 1 {
                FiberBehavior::Ramified
            } else if rational_sqrt(disc.leading().unwrap()).is_some() {
                FiberBehavior::Split
            } else {
                FiberBehavior::Inert
            }
        }
        PlaceLabel::Finite(p) => {
            if disc.rem(p).unwrap().is_zero() {
                FiberBehavior::Ramified
            } else if is_square_in_residue_field(&disc, p) {
                FiberBehavior::Split
            } else {
                FiberBehavior::Inert
            }
        }
    };
    Place {
        label: pl.clone(),
        ramification: if behavior == FiberBehavior::Ramified {
            2
        } else {
            1
        },
        behavior,
    }
}
