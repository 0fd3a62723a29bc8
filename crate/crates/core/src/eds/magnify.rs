use std::sync::Arc;

use super::context::{EdsContext, EdsOptions};
use super::divisor::DivisorComponent;
use crate::arith::primes::is_prime;
use crate::arith::{Rational, RationalFunction};
use crate::elliptic::{CurvePoint, Isogeny, Isomorphism, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::function_field::{CurveModel, FFElement, FiberBehavior};

type KC = FFElement<Rational>;

/// P = τ(P′) for an isogeny τ: E′ → E of degree at least 2, followed by an
/// isomorphism onto the chosen model of E.
#[derive(Debug)]
pub struct MagnifiedPair {
    pub down: EdsContext,
    pub up: EdsContext,
    pub isogeny: Isogeny<Rational>,
    pub iso: Isomorphism<Rational>,
}

fn embed(model: &Arc<CurveModel<Rational>>) -> impl Fn(&Rational) -> KC + '_ {
    move |c| KC::from_base(RationalFunction::constant(c.clone()), model)
}

fn image(
    up: &EdsContext,
    isogeny: &Isogeny<Rational>,
    iso: &Isomorphism<Rational>,
) -> Result<CurvePoint<KC>> {
    let model = up.model();
    let CurvePoint::Affine(x, y) = up.point() else {
        unreachable!()
    };
    let Some((xx, yy)) = isogeny.apply_in(&x, &y, embed(model)) else {
        return Err(Error::PairInvariant("P′ lies in the kernel of τ".into()));
    };
    Ok(iso.map(embed(model)).map_point(&CurvePoint::Affine(xx, yy)))
}

fn check_curves(
    up: &EdsContext,
    isogeny: &Isogeny<Rational>,
    iso: &Isomorphism<Rational>,
    down_curve: &WeierstrassCurve<Rational>,
) -> Result<()> {
    if isogeny.degree < 2 {
        return Err(Error::PairInvariant("isogeny degree below 2".into()));
    }
    if up.constant_curve() != Some(&isogeny.domain) {
        return Err(Error::PairInvariant("E′ is not the domain of τ".into()));
    }
    if iso.apply_curve(&isogeny.codomain)? != *down_curve {
        return Err(Error::PairInvariant("the codomain of τ is not E".into()));
    }
    Ok(())
}

impl MagnifiedPair {
    /// Checks τ(P′) = P identically in K(C).
    pub fn new(
        down: EdsContext,
        up: EdsContext,
        isogeny: Isogeny<Rational>,
        iso: Isomorphism<Rational>,
    ) -> Result<Self> {
        let down_curve = down
            .constant_curve()
            .ok_or_else(|| Error::PairInvariant("E is not a constant curve".into()))?
            .clone();
        check_curves(&up, &isogeny, &iso, &down_curve)?;
        if image(&up, &isogeny, &iso)? != down.point() {
            return Err(Error::PairInvariant("τ(P′) ≠ P".into()));
        }
        Ok(MagnifiedPair {
            down,
            up,
            isogeny,
            iso,
        })
    }

    /// The downstairs context with P := τ(P′) on `down_curve`.
    pub fn push_down(
        up: EdsContext,
        isogeny: Isogeny<Rational>,
        iso: Isomorphism<Rational>,
        down_curve: &WeierstrassCurve<Rational>,
        options: EdsOptions,
    ) -> Result<Self> {
        check_curves(&up, &isogeny, &iso, down_curve)?;
        let CurvePoint::Affine(x, y) = image(&up, &isogeny, &iso)? else {
            unreachable!()
        };
        let down = EdsContext::split(up.model().clone(), down_curve, x, y, options)?;
        Ok(MagnifiedPair {
            down,
            up,
            isogeny,
            iso,
        })
    }

    pub fn degree(&self) -> u64 {
        self.isogeny.degree
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnificationRow {
    pub n: u64,
    /// D_{nP} − D_{nP′}, if effective.
    pub difference: Option<Vec<DivisorComponent>>,
    /// Number of distinct components of D_{nP}.
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnificationReport {
    pub rows: Vec<MagnificationRow>,
    pub all_effective: bool,
    /// Least n from which every D_{mP}, m ≤ N, has at least two components.
    pub threshold: Option<u64>,
}

pub fn magnified_check(pair: &MagnifiedPair, n_max: u64) -> Result<MagnificationReport> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let d = pair.down.divisor(n)?;
        let du = pair.up.divisor(n)?;
        rows.push(MagnificationRow {
            n,
            difference: d.checked_sub(&du),
            components: d.components.len(),
        });
    }
    let all_effective = rows.iter().all(|r| r.difference.is_some());
    let threshold = rows
        .iter()
        .rposition(|r| r.components < 2)
        .map_or(Some(1), |i| (i + 1 < rows.len()).then_some(i as u64 + 2));
    Ok(MagnificationReport {
        rows,
        all_effective,
        threshold,
    })
}

/// One component of D_{qP} − D_P, with its verdict as a divisor over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionClass {
    pub component: DivisorComponent,
    pub degree: u64,
    /// Order 1 over a single Galois orbit of places.
    pub irreducible: bool,
    /// Set when the fiber splits into two orbits.
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub q: u64,
    pub degree: u64,
    pub classes: Vec<DecompositionClass>,
    /// (d − 1)(q² − 1) and q² − 1.
    pub expected: [u64; 2],
    pub holds: bool,
}

pub fn isogeny_decomposition_check(pair: &MagnifiedPair, q: u64) -> Result<DecompositionReport> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let d = pair.degree();
    if d.is_multiple_of(q) {
        return Err(Error::PrimeDividesDegree { q, degree: d });
    }
    let dq = pair.down.divisor(q)?;
    let d1 = pair.down.divisor(1)?;
    let diff = dq
        .checked_sub(&d1)
        .ok_or_else(|| Error::Internal("D_P is not contained in D_{qP}".into()))?;
    let classes: Vec<_> = diff
        .into_iter()
        .map(|c| {
            let split = c.place.behavior == FiberBehavior::Split;
            DecompositionClass {
                degree: c.degree(),
                irreducible: c.order == 1 && !split,
                note: split.then_some("two-orbit (split fiber)"),
                component: c,
            }
        })
        .collect();
    let expected = [(d - 1) * (q * q - 1), q * q - 1];
    let mut got: Vec<u64> = classes.iter().map(|c| c.degree).collect();
    got.sort_unstable();
    let mut want = expected.to_vec();
    want.sort_unstable();
    let holds = classes.iter().all(|c| c.irreducible) && got == want;
    Ok(DecompositionReport {
        q,
        degree: d,
        classes,
        expected,
        holds,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::{int, rat, Polynomial};
    use crate::elliptic::{velu_isogeny, DivisionPolynomials};
    use crate::function_field::PlaceLabel;

    type QT = Polynomial<Rational>;

    fn qt(cs: &[i64]) -> QT {
        QT::from_i64s(&(), cs)
    }

    fn curve(a: [i64; 5]) -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4])).unwrap()
    }

    /// C: y² + y = x³ − x² − 7820x − 263580 with P′ = (u, v) and τ of degree 5.
    pub(crate) fn isogeny_pair() -> MagnifiedPair {
        let c = curve([0, -1, 1, -7820, -263580]);
        let model =
            Arc::new(CurveModel::double_cover(qt(&[1]), qt(&[-263580, -7820, -1, 1])).unwrap());
        let up = EdsContext::split(
            model.clone(),
            &c,
            KC::u(&model),
            KC::v(&model).unwrap(),
            EdsOptions::default(),
        )
        .unwrap();
        let kernel = QT::new(vec![rat(12751, 5), int(101), int(1)], &());
        let tau = velu_isogeny(&c, &kernel).unwrap();
        let e = curve([0, -1, 1, -10, -20]);
        let iso = Isomorphism::between(&tau.codomain, &e).unwrap();
        MagnifiedPair::push_down(up, tau, iso, &e, EdsOptions::default()).unwrap()
    }

    #[test]
    fn pair_roundtrip_and_first_term() {
        let pair = isogeny_pair();
        let d1 = pair.down.divisor(1).unwrap();
        assert_eq!(d1.degree, 5);
        assert_eq!(d1.order_at(&PlaceLabel::Infinity), 1);
        let k = PlaceLabel::Finite(QT::new(vec![rat(12751, 5), int(101), int(1)], &()));
        assert_eq!(d1.order_at(&k), 1);
        let MagnifiedPair {
            down,
            up,
            isogeny,
            iso,
        } = pair;
        let again = MagnifiedPair::new(down, up, isogeny, iso).unwrap();
        assert_eq!(again.degree(), 5);
    }

    #[test]
    fn third_term_decomposes() {
        let pair = isogeny_pair();
        let m = magnified_check(&pair, 3).unwrap();
        assert!(m.all_effective);
        assert_eq!(m.threshold, Some(1));
        let r = isogeny_decomposition_check(&pair, 3).unwrap();
        assert!(r.holds, "{r:?}");
        let psi3 = DivisionPolynomials::new(&pair.isogeny.domain)
            .part(3)
            .unwrap()
            .monic();
        let small = r.classes.iter().find(|c| c.degree == 8).unwrap();
        assert_eq!(small.component.place.label, PlaceLabel::Finite(psi3));
        assert_eq!(
            isogeny_decomposition_check(&pair, 5).unwrap_err(),
            Error::PrimeDividesDegree { q: 5, degree: 5 }
        );
    }
}
