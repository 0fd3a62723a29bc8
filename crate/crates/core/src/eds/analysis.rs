use std::collections::BTreeMap;

use super::context::EdsContext;
use super::divisor::{DivisorComponent, DivisorOverU};
use crate::arith::Rational;
use crate::error::Result;
use crate::function_field::{Place, PlaceLabel};

fn terms(ctx: &EdsContext, n_max: u64) -> Result<Vec<DivisorOverU>> {
    (1..=n_max).map(|n| ctx.divisor(n)).collect()
}

/// Orders of one place across D_P, ..., D_{NP}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceHistory {
    pub place: Place,
    /// Least n with the place in the support of D_{nP}.
    pub rank: u64,
    /// orders[n − 1] is the order at D_{nP}.
    pub orders: Vec<u64>,
    /// Indices n where the order differs from the rigid prediction.
    pub violations: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidReport {
    pub n_max: u64,
    pub places: Vec<PlaceHistory>,
    pub holds: bool,
}

impl RigidReport {
    pub fn history(&self, label: &PlaceLabel) -> Option<&PlaceHistory> {
        self.places.iter().find(|h| &h.place.label == label)
    }
}

/// Each place should have order ord_m at every multiple of its rank m and
/// order 0 elsewhere.
pub fn rigid_divisibility_check(ctx: &EdsContext, n_max: u64) -> Result<RigidReport> {
    let ts = terms(ctx, n_max)?;
    let mut seen: BTreeMap<PlaceLabel, Place> = BTreeMap::new();
    for t in &ts {
        for c in &t.components {
            seen.entry(c.place.label.clone())
                .or_insert_with(|| c.place.clone());
        }
    }
    let mut places = Vec::new();
    for (label, place) in seen {
        let orders: Vec<u64> = ts.iter().map(|t| t.order_at(&label)).collect();
        let rank = orders.iter().position(|&o| o > 0).unwrap() as u64 + 1;
        let base = orders[rank as usize - 1];
        let violations = (1..=n_max)
            .filter(|&n| {
                let expect = if n % rank == 0 { base } else { 0 };
                orders[n as usize - 1] != expect
            })
            .collect();
        places.push(PlaceHistory {
            place,
            rank,
            orders,
            violations,
        });
    }
    let holds = places.iter().all(|h| h.violations.is_empty());
    Ok(RigidReport {
        n_max,
        places,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRow {
    pub n: u64,
    pub primitive: Vec<DivisorComponent>,
    /// n ≥ 2 and no primitive component.
    pub missing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveReport {
    pub rows: Vec<PrimitiveRow>,
    pub all_present: bool,
}

pub fn primitive_report(ctx: &EdsContext, n_max: u64) -> Result<PrimitiveReport> {
    let ts = terms(ctx, n_max)?;
    let mut earlier: std::collections::BTreeSet<PlaceLabel> = Default::default();
    let mut rows = Vec::new();
    for t in ts {
        let primitive: Vec<_> = t
            .components
            .iter()
            .filter(|c| !earlier.contains(&c.place.label))
            .cloned()
            .collect();
        earlier.extend(t.labels().cloned());
        rows.push(PrimitiveRow {
            n: t.n,
            missing: t.n >= 2 && primitive.is_empty(),
            primitive,
        });
    }
    let all_present = rows.iter().all(|r| !r.missing);
    Ok(PrimitiveReport { rows, all_present })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    /// (n, deg D_{nP} / n²).
    pub estimates: Vec<(u64, Rational)>,
    /// deg σ_P for a constant curve.
    pub split_exact: Option<Rational>,
}

pub fn canonical_height(ctx: &EdsContext, n_max: u64) -> Result<HeightReport> {
    let estimates = terms(ctx, n_max)?
        .into_iter()
        .map(|t| (t.n, Rational::new(t.degree.into(), (t.n * t.n).into())))
        .collect();
    let split_exact = ctx.constant_curve().map(|_| {
        let d = ctx.x().map_degree() * ctx.model().base_degree();
        Rational::new(d.into(), 2.into())
    });
    Ok(HeightReport {
        estimates,
        split_exact,
    })
}
