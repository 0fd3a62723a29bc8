use std::sync::Arc;

use super::expr::Value;
use super::input::{InputSpec, Kind};
use crate::arith::{Polynomial, Rational, RationalFunction};
use crate::eds::{EdsContext, EdsOptions, MagnifiedPair};
use crate::elliptic::{velu_isogeny, Isomorphism, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::function_field::{CurveModel, FFElement};
use crate::lucas::LucasSpec;

type QT = Polynomial<Rational>;
type QU = RationalFunction<Rational>;
type KC = FFElement<Rational>;

fn poly(spec: &InputSpec, name: &str) -> Result<Option<QT>> {
    spec.get(name).map(Value::poly).transpose()
}

pub fn lucas_spec(spec: &InputSpec) -> Result<LucasSpec> {
    if spec.kind != Kind::Lucas {
        return Err(Error::InvalidInput("expected a lucas spec".into()));
    }
    if spec.has("s") {
        LucasSpec::quadratic(spec.require("s")?.poly()?, spec.require("q")?.poly()?)
    } else {
        LucasSpec::direct(spec.require("f")?.poly()?, spec.require("g")?.poly()?)
    }
}

fn model(spec: &InputSpec) -> Result<Arc<CurveModel<Rational>>> {
    let h = poly(spec, "C.h")?;
    let g = poly(spec, "C.g")?;
    Ok(Arc::new(match (h, g) {
        (None, None) => CurveModel::projective_line(&()),
        (h, Some(g)) => CurveModel::double_cover(h.unwrap_or_else(|| QT::zero(&())), g)?,
        (Some(_), None) => return Err(Error::MissingBinding("C.g".into())),
    }))
}

fn curve(spec: &InputSpec, prefix: &str) -> Result<[QT; 5]> {
    let mut out: [QT; 5] = std::array::from_fn(|_| QT::zero(&()));
    for (slot, i) in out.iter_mut().zip([1, 2, 3, 4, 6]) {
        if let Some(p) = poly(spec, &format!("{prefix}a{i}"))? {
            *slot = p;
        }
    }
    Ok(out)
}

fn coordinate(spec: &InputSpec, name: &str, model: &Arc<CurveModel<Rational>>) -> Result<KC> {
    let (num, den) = match spec.get(name) {
        Some(v) => (v.clone(), QT::one(&())),
        None => (
            spec.require(&format!("{name}.num"))?.clone(),
            poly(spec, &format!("{name}.den"))?.unwrap_or_else(|| QT::one(&())),
        ),
    };
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("{name}.den is zero")));
    }
    KC::new(QU::new(num.a, den.clone())?, QU::new(num.b, den)?, model)
}

fn qu_curve(c: &[QT; 5]) -> Result<WeierstrassCurve<QU>> {
    let f = |p: &QT| QU::from_poly(p.clone());
    WeierstrassCurve::new(f(&c[0]), f(&c[1]), f(&c[2]), f(&c[3]), f(&c[4]))
}

fn constant_curve(c: &[QT; 5], what: &str) -> Result<WeierstrassCurve<Rational>> {
    let k = |p: &QT| {
        if p.degree().unwrap_or(0) > 0 {
            return Err(Error::InvalidInput(format!(
                "{what} must have constant coefficients"
            )));
        }
        Ok(p.coeff(0))
    };
    WeierstrassCurve::new(k(&c[0])?, k(&c[1])?, k(&c[2])?, k(&c[3])?, k(&c[4])?)
}

fn point_context(spec: &InputSpec, options: EdsOptions) -> Result<EdsContext> {
    let model = model(spec)?;
    let x = coordinate(spec, "P.x", &model)?;
    let y = coordinate(spec, "P.y", &model)?;
    EdsContext::new(model, qu_curve(&curve(spec, "")?)?, x, y, options)
}

pub fn isogeny_pair(spec: &InputSpec, options: EdsOptions) -> Result<MagnifiedPair> {
    if spec.kind != Kind::IsogenyPair {
        return Err(Error::InvalidInput("expected an isogeny-pair spec".into()));
    }
    let up = point_context(spec, options)?;
    let e_up = constant_curve(&curve(spec, "")?, "the curve E′")?;
    let tau = velu_isogeny(&e_up, &spec.require("kernel")?.poly()?)?;
    let e = if ["E.a1", "E.a2", "E.a3", "E.a4", "E.a6"]
        .iter()
        .any(|n| spec.has(n))
    {
        constant_curve(&curve(spec, "E.")?, "the curve E")?
    } else {
        tau.codomain.clone()
    };
    let iso = Isomorphism::between(&tau.codomain, &e)?;
    MagnifiedPair::push_down(up, tau, iso, &e, options)
}

/// The EDS context of an `eds` spec, or the downstairs context of an
/// `isogeny-pair` spec.
pub fn eds_context(spec: &InputSpec, options: EdsOptions) -> Result<EdsContext> {
    match spec.kind {
        Kind::Eds => point_context(spec, options),
        Kind::IsogenyPair => Ok(isogeny_pair(spec, options)?.down),
        _ => Err(Error::InvalidInput(
            "expected an eds or isogeny-pair spec".into(),
        )),
    }
}
