use super::curve::WeierstrassCurve;
use super::isomorphism::Isomorphism;
use crate::arith::{Field, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};
use crate::function_field::{ord_at_place, Place, PlaceLabel};

type Q = Rational;
type QU = RationalFunction<Rational>;

/// A Weierstrass model that is integral and minimal at one place, with the
/// change of variables from the input model.
#[derive(Clone, Debug)]
pub struct LocalMinimalModel {
    /// Whether the input itself was already integral and minimal.
    pub is_minimal: bool,
    pub curve: WeierstrassCurve<QU>,
    pub iso: Isomorphism<QU>,
    /// Order of Δ at the place, on the curve (ramification included).
    pub ord_disc: i64,
}

impl LocalMinimalModel {
    /// Order at the place of x' = (x − r)/u², with x a coordinate on the input model.
    pub fn ord_x(&self, x: &QU, place: &Place) -> Result<i64> {
        ord_on_curve(&self.iso.map_x(x), place)
    }
}

/// Order on the curve: ramification index times order on the u-line.
fn ord_on_curve(r: &QU, place: &Place) -> Result<i64> {
    Ok(ord_at_place(r, &place.label)? * place.ramification as i64)
}

fn ord_or_inf(r: &QU, place: &Place) -> Result<Option<i64>> {
    if r.is_zero() {
        Ok(None)
    } else {
        ord_on_curve(r, place).map(Some)
    }
}

fn uniformizer(label: &PlaceLabel) -> QU {
    match label {
        PlaceLabel::Finite(p) => QU::from_poly(p.clone()),
        PlaceLabel::Infinity => QU::new(Polynomial::one(&()), Polynomial::x(&())).unwrap(),
    }
}

fn is_locally_minimal(e: &WeierstrassCurve<QU>, place: &Place) -> Result<bool> {
    let d = ord_on_curve(&e.disc, place)?;
    let c4 = ord_or_inf(&e.c4, place)?;
    Ok(d < 12 || c4.is_some_and(|c| c < 4))
}

fn is_integral(e: &WeierstrassCurve<QU>, place: &Place) -> Result<bool> {
    for a in e.coefficients() {
        if ord_or_inf(&a, place)?.is_some_and(|o| o < 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn minimal_at_place(e: &WeierstrassCurve<QU>, place: &Place) -> Result<LocalMinimalModel> {
    let eram = place.ramification as i64;
    let pi = uniformizer(&place.label);
    let already = is_integral(e, place)? && is_locally_minimal(e, place)?;
    if already {
        return Ok(LocalMinimalModel {
            is_minimal: true,
            curve: e.clone(),
            iso: Isomorphism::identity(&()),
            ord_disc: ord_on_curve(&e.disc, place)?,
        });
    }

    // Scale x ↦ π^{2k}x, y ↦ π^{3k}y until every a_i is integral.
    let mut k = 0i64;
    for (a, i) in e.coefficients().iter().zip([1i64, 2, 3, 4, 6]) {
        if let Some(o) = ord_or_inf(a, place)? {
            k = k.min(o.div_euclid(i * eram));
        }
    }
    let zero = QU::zero(&());
    let mut iso = Isomorphism {
        u: pi.pow(k.unsigned_abs()),
        r: zero.clone(),
        s: zero.clone(),
        t: zero.clone(),
    };
    if k < 0 {
        iso.u = iso.u.inv().unwrap();
    }
    let mut cur = iso.apply_curve(e)?;

    while !is_locally_minimal(&cur, place)? {
        // Complete the square and cube, then divide by π.
        let c = |n: i64| QU::constant(Q::from_integer(n.into()));
        let s = cur.a1.neg().mul(&c(2).inv().unwrap());
        let r = cur.b2.neg().mul(&c(12).inv().unwrap());
        let t0 = cur.a3.add(&r.mul(&cur.a1)).neg().mul(&c(2).inv().unwrap());
        let short = Isomorphism {
            u: QU::one(&()),
            r,
            s,
            t: t0,
        };
        let cur_short = short.apply_curve(&cur)?;
        let v4 = ord_or_inf(&cur_short.a4, place)?;
        let v6 = ord_or_inf(&cur_short.a6, place)?;
        let step = v4
            .map_or(i64::MAX, |o| o / 4)
            .min(v6.map_or(i64::MAX, |o| o / 6));
        if step < eram {
            return Err(Error::Unsupported(
                "minimal model needs a uniformizer of the ramified cover".into(),
            ));
        }
        let scale = Isomorphism {
            u: pi.clone(),
            r: zero.clone(),
            s: zero.clone(),
            t: zero.clone(),
        };
        let both = short.then(&scale);
        cur = both.apply_curve(&cur)?;
        iso = iso.then(&both);
    }
    if !is_integral(&cur, place)? {
        return Err(Error::Internal("scaled model is not integral".into()));
    }
    Ok(LocalMinimalModel {
        is_minimal: false,
        ord_disc: ord_on_curve(&cur.disc, place)?,
        curve: cur,
        iso,
    })
}
