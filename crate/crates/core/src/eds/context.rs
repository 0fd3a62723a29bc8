use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use super::divisor::{DivisorComponent, DivisorOverU};
use crate::arith::factor_q::{factor_int, FactorOptions};
use crate::arith::{factor_over_rationals, Field, IntPoly, Polynomial, Rational, RationalFunction};
use crate::elliptic::{
    minimal_at_place, CurvePoint, DivisionPolynomials, LocalMinimalModel, WeierstrassCurve,
};
use crate::error::{Error, Result};
use crate::function_field::{place_of_irreducible, CurveModel, FFElement, Place, PlaceLabel};

type Q = Rational;
type QT = Polynomial<Rational>;
type QU = RationalFunction<Rational>;
type KC = FFElement<Rational>;

/// Multiples [n]P with n up to this bound are checked against O at construction.
pub const TORSION_CHECK_BOUND: u64 = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdsOptions {
    pub skip_torsion_check: bool,
    pub seed: u64,
}

/// A pairwise-coprime piece of the denominator of x([n]P) in the split case.
#[derive(Clone, Debug)]
struct Piece {
    /// Degree of the homogenized polynomial in u.
    u_degree: usize,
    /// Degree of the underlying polynomial in x.
    x_degree: usize,
    factors: Vec<(QT, u64)>,
}

/// Data for a constant curve E/Q and x_P = a/b ∈ Q(u).
struct SplitData {
    curve: WeierstrassCurve<Q>,
    a: IntPoly,
    b: IntPoly,
    dp: DivisionPolynomials<Q>,
    /// λ_d: the x-polynomial of the points of exact order d ≥ 3.
    lambda: BTreeMap<u64, QT>,
    lambda_pieces: BTreeMap<u64, Piece>,
    b_piece: Piece,
    quartic_piece: Option<Piece>,
}

#[derive(Default)]
struct Cache {
    split: Option<SplitData>,
    places: BTreeMap<PlaceLabel, Place>,
    multiples: Vec<CurvePoint<KC>>,
    minimal: BTreeMap<PlaceLabel, LocalMinimalModel>,
    bad_places: Option<Vec<PlaceLabel>>,
    denominators: BTreeMap<u64, Vec<(QT, u64)>>,
    divisors: BTreeMap<u64, DivisorOverU>,
}

/// The pair (E, P) over K(C), with caches for the terms D_{nP}.
pub struct EdsContext {
    model: Arc<CurveModel<Q>>,
    curve: WeierstrassCurve<QU>,
    constant: Option<WeierstrassCurve<Q>>,
    x: QU,
    y: KC,
    options: EdsOptions,
    cache: Mutex<Cache>,
}

impl std::fmt::Debug for EdsContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EdsContext")
            .field("model", &self.model)
            .field("curve", &self.curve)
            .field("x", &self.x)
            .field("y", &self.y)
            .finish()
    }
}

fn embed_curve(
    curve: &WeierstrassCurve<QU>,
    model: &Arc<CurveModel<Q>>,
) -> Result<WeierstrassCurve<KC>> {
    curve.base_change(|c| KC::from_base(c.clone(), model))
}

/// Integer polynomials (a, b), coprime, with x = a/b.
fn integral_fraction(x: &QU) -> (IntPoly, IntPoly) {
    let (sn, a) = IntPoly::from_rational(x.num());
    let (sd, b) = IntPoly::from_rational(x.den());
    let s = sn / sd;
    let a = a.scale(s.numer());
    let b = b.scale(s.denom());
    (a, b)
}

fn monic_factors(f: &IntPoly, seed: u64) -> Vec<(QT, u64)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let opts = FactorOptions {
        seed,
        ..FactorOptions::default()
    };
    factor_int(f, &opts)
        .into_iter()
        .map(|(g, e)| (g.to_monic_rational(), e as u64))
        .collect()
}

fn is_divisor(d: u64, n: u64) -> bool {
    n.is_multiple_of(d)
}

impl EdsContext {
    pub fn new(
        model: Arc<CurveModel<Q>>,
        curve: WeierstrassCurve<QU>,
        x: KC,
        y: KC,
        options: EdsOptions,
    ) -> Result<Self> {
        if !x.in_base() {
            return Err(Error::Unsupported("x_P has a nonzero v-part".into()));
        }
        let e = embed_curve(&curve, &model)?;
        if !e.equation_residue(&x, &y).is_zero() {
            return Err(Error::NotOnCurve);
        }
        let coeffs: Option<Vec<Q>> = curve
            .coefficients()
            .iter()
            .map(|c| c.as_constant())
            .collect();
        let constant = match coeffs {
            Some(c) => Some(WeierstrassCurve::new(
                c[0].clone(),
                c[1].clone(),
                c[2].clone(),
                c[3].clone(),
                c[4].clone(),
            )?),
            None => None,
        };
        let ctx = EdsContext {
            model,
            curve,
            constant,
            x: x.a().clone(),
            y,
            options,
            cache: Mutex::new(Cache::default()),
        };
        if !options.skip_torsion_check {
            ctx.check_nontorsion()?;
        }
        Ok(ctx)
    }

    /// A constant curve E/Q viewed over K(C).
    pub fn split(
        model: Arc<CurveModel<Q>>,
        curve: &WeierstrassCurve<Q>,
        x: KC,
        y: KC,
        options: EdsOptions,
    ) -> Result<Self> {
        let c = curve.base_change(|q| QU::constant(q.clone()))?;
        Self::new(model, c, x, y, options)
    }

    pub fn model(&self) -> &Arc<CurveModel<Q>> {
        &self.model
    }

    pub fn curve(&self) -> &WeierstrassCurve<QU> {
        &self.curve
    }

    /// The curve over Q when all coefficients are constant.
    pub fn constant_curve(&self) -> Option<&WeierstrassCurve<Q>> {
        self.constant.as_ref()
    }

    pub fn x(&self) -> &QU {
        &self.x
    }

    pub fn y(&self) -> &KC {
        &self.y
    }

    pub fn point(&self) -> CurvePoint<KC> {
        CurvePoint::Affine(KC::from_base(self.x.clone(), &self.model), self.y.clone())
    }

    pub fn options(&self) -> EdsOptions {
        self.options
    }

    fn check_nontorsion(&self) -> Result<()> {
        // A torsion point of a constant curve is a constant map C → E.
        if self.constant.is_some() && self.x.as_constant().is_none() {
            return Ok(());
        }
        if self.model.is_line() && self.specialization_proves_nontorsion() {
            return Ok(());
        }
        let mut cache = self.cache.lock().unwrap();
        for n in 1..=TORSION_CHECK_BOUND {
            self.multiple(&mut cache, n)?;
        }
        Ok(())
    }

    /// Good specializations u ↦ t are homomorphisms E(Q(u)) → E_t(Q).
    fn specialization_proves_nontorsion(&self) -> bool {
        let y = self.y.a();
        for t in (0..12)
            .map(|k| Q::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })))
        {
            let ev = |r: &QU| r.eval(&t);
            let Some(coeffs) = self
                .curve
                .coefficients()
                .iter()
                .map(ev)
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let Ok(e) = WeierstrassCurve::new(
                coeffs[0].clone(),
                coeffs[1].clone(),
                coeffs[2].clone(),
                coeffs[3].clone(),
                coeffs[4].clone(),
            ) else {
                continue;
            };
            let (Some(xt), Some(yt)) = (ev(&self.x), ev(y)) else {
                continue;
            };
            let p = CurvePoint::Affine(xt, yt);
            if e.torsion_order(&p, TORSION_CHECK_BOUND).is_none() {
                return true;
            }
        }
        false
    }

    fn multiple(&self, cache: &mut Cache, n: u64) -> Result<CurvePoint<KC>> {
        let e = embed_curve(&self.curve, &self.model)?;
        let p = self.point();
        if cache.multiples.is_empty() {
            cache.multiples.push(p.clone());
        }
        while (cache.multiples.len() as u64) < n {
            let k = cache.multiples.len();
            if cache.multiples[k - 1].is_infinity() {
                return Err(Error::TorsionHit(k as u64));
            }
            let next = e.add(&cache.multiples[k - 1], &p);
            cache.multiples.push(next);
        }
        let q = cache.multiples[n as usize - 1].clone();
        if q.is_infinity() {
            return Err(Error::TorsionHit(n));
        }
        Ok(q)
    }

    fn place(&self, cache: &mut Cache, label: &PlaceLabel) -> Place {
        cache
            .places
            .entry(label.clone())
            .or_insert_with(|| place_of_irreducible(&self.model, label))
            .clone()
    }

    /// x([n]P) in lowest terms.
    pub fn x_multiple(&self, n: u64) -> Result<QU> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let mut cache = self.cache.lock().unwrap();
        if self.constant.is_some() {
            let s = self.split_data(&mut cache)?;
            let (phi, psi2) = s.dp.multiplication_x(n)?;
            let d = (n * n) as usize;
            let (sp, ip) = IntPoly::from_rational(&phi);
            let (sq, iq) = IntPoly::from_rational(&psi2);
            let num = ip.homogenize(&s.a, &s.b, d).to_rational().scale(&sp);
            let den = iq
                .homogenize(&s.a, &s.b, d - 1)
                .mul(&s.b)
                .to_rational()
                .scale(&sq);
            if den.is_zero() {
                return Err(Error::TorsionHit(n));
            }
            return QU::new(num, den);
        }
        let q = self.multiple(&mut cache, n)?;
        let x = q.x().unwrap();
        if !x.in_base() {
            return Err(Error::Unsupported(format!(
                "x([{n}]P) has a nonzero v-part"
            )));
        }
        Ok(x.a().clone())
    }

    fn split_data<'a>(&self, cache: &'a mut Cache) -> Result<&'a mut SplitData> {
        if cache.split.is_none() {
            let curve = self.constant.clone().unwrap();
            let (a, b) = integral_fraction(&self.x);
            let b_piece = Piece {
                u_degree: b.degree().unwrap(),
                x_degree: 0,
                factors: monic_factors(&b, self.options.seed),
            };
            cache.split = Some(SplitData {
                dp: DivisionPolynomials::new(&curve),
                curve,
                a,
                b,
                lambda: BTreeMap::new(),
                lambda_pieces: BTreeMap::new(),
                b_piece,
                quartic_piece: None,
            });
        }
        Ok(cache.split.as_mut().unwrap())
    }

    fn homogenized_piece(s: &SplitData, poly: &QT, n: u64, seed: u64) -> Result<Piece> {
        let k = poly.degree().unwrap();
        let (_, ip) = IntPoly::from_rational(poly);
        let h = ip.homogenize(&s.a, &s.b, k);
        if h.is_zero() {
            return Err(Error::TorsionHit(n));
        }
        Ok(Piece {
            u_degree: h.degree().unwrap(),
            x_degree: k,
            factors: monic_factors(&h.primitive_part(), seed),
        })
    }

    fn lambda(s: &mut SplitData, d: u64) -> Result<QT> {
        if let Some(l) = s.lambda.get(&d) {
            return Ok(l.clone());
        }
        let mut l = s.dp.part(d)?;
        for e in 3..d {
            if is_divisor(e, d) {
                let le = Self::lambda(s, e)?;
                l = l.exact_div(&le).ok_or_else(|| {
                    Error::Internal(format!(
                        "λ_{e} does not divide the division polynomial ψ_{d}"
                    ))
                })?;
            }
        }
        s.lambda.insert(d, l.clone());
        Ok(l)
    }

    /// Pieces making up the denominator of x([n]P), with their exponents.
    fn split_pieces(&self, cache: &mut Cache, n: u64) -> Result<Vec<(Piece, u64)>> {
        let seed = self.options.seed;
        let s = self.split_data(cache)?;
        let mut out = vec![(s.b_piece.clone(), 1)];
        for d in 3..=n {
            if !is_divisor(d, n) {
                continue;
            }
            if !s.lambda_pieces.contains_key(&d) {
                let l = Self::lambda(s, d)?;
                let piece = Self::homogenized_piece(s, &l, n, seed)?;
                s.lambda_pieces.insert(d, piece);
            }
            out.push((s.lambda_pieces[&d].clone(), 2));
        }
        if n.is_multiple_of(2) {
            if s.quartic_piece.is_none() {
                let q = s.curve.psi2_squared();
                s.quartic_piece = Some(Self::homogenized_piece(s, &q, n, seed)?);
            }
            out.push((s.quartic_piece.clone().unwrap(), 1));
        }
        Ok(out)
    }

    /// The finite part of the lowest-terms denominator of x([n]P), factored
    /// into monic irreducibles.
    pub fn denominator_factors(&self, n: u64) -> Result<Vec<(QT, u64)>> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let mut cache = self.cache.lock().unwrap();
        self.denominator_locked(&mut cache, n)
    }

    fn denominator_locked(&self, cache: &mut Cache, n: u64) -> Result<Vec<(QT, u64)>> {
        if let Some(d) = cache.denominators.get(&n) {
            return Ok(d.clone());
        }
        let mut acc: BTreeMap<PlaceLabel, u64> = BTreeMap::new();
        if self.constant.is_some() {
            for (piece, w) in self.split_pieces(cache, n)? {
                for (f, e) in piece.factors {
                    *acc.entry(PlaceLabel::Finite(f)).or_default() += e * w;
                }
            }
        } else {
            drop(self.multiple(cache, n)?);
            let x = self.generic_x(cache, n)?;
            for (f, e) in factor_over_rationals(x.den())?.factors {
                *acc.entry(PlaceLabel::Finite(f)).or_default() += e as u64;
            }
        }
        let out: Vec<(QT, u64)> = acc
            .into_iter()
            .map(|(l, e)| match l {
                PlaceLabel::Finite(f) => (f, e),
                PlaceLabel::Infinity => unreachable!(),
            })
            .collect();
        cache.denominators.insert(n, out.clone());
        Ok(out)
    }

    fn generic_x(&self, cache: &mut Cache, n: u64) -> Result<QU> {
        let q = self.multiple(cache, n)?;
        let x = q.x().unwrap();
        if !x.in_base() {
            return Err(Error::Unsupported(format!(
                "x([{n}]P) has a nonzero v-part"
            )));
        }
        Ok(x.a().clone())
    }

    /// Order of D_{nP} at a place: max(0, −½·v(x)), v measured on C.
    fn local_order(v: i64, label: &PlaceLabel) -> Result<u64> {
        if v >= 0 {
            return Ok(0);
        }
        if v % 2 != 0 {
            return Err(Error::Internal(format!(
                "odd pole order {} of x at {label:?}",
                -v
            )));
        }
        Ok((-v / 2) as u64)
    }

    pub fn divisor(&self, n: u64) -> Result<DivisorOverU> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let mut cache = self.cache.lock().unwrap();
        if let Some(d) = cache.divisors.get(&n) {
            return Ok(d.clone());
        }
        let d = if self.constant.is_some() {
            self.split_divisor(&mut cache, n)?
        } else {
            self.generic_divisor(&mut cache, n)?
        };
        cache.divisors.insert(n, d.clone());
        Ok(d)
    }

    fn split_divisor(&self, cache: &mut Cache, n: u64) -> Result<DivisorOverU> {
        let pieces = self.split_pieces(cache, n)?;
        let s = cache.split.as_ref().unwrap();
        let dmax = s.a.degree().unwrap_or(0).max(s.b.degree().unwrap_or(0)) as i64;
        // Multiplicity of w = 1/u in the reversed denominator.
        let mut at_inf = 0i64;
        for (piece, w) in &pieces {
            let k = if piece.x_degree == 0 {
                1
            } else {
                piece.x_degree as i64
            };
            at_inf += (*w as i64) * (dmax * k - piece.u_degree as i64);
        }
        let denominator = self.denominator_locked(cache, n)?;
        let mut comps = Vec::new();
        for (f, e) in denominator {
            let label = PlaceLabel::Finite(f);
            let place = self.place(cache, &label);
            let order = Self::local_order(-(e as i64) * place.ramification as i64, &label)?;
            comps.push(DivisorComponent { place, order });
        }
        let place = self.place(cache, &PlaceLabel::Infinity);
        let order = Self::local_order(-at_inf * place.ramification as i64, &PlaceLabel::Infinity)?;
        comps.push(DivisorComponent { place, order });
        Ok(DivisorOverU::new(n, comps))
    }

    fn bad_places(&self, cache: &mut Cache) -> Result<Vec<PlaceLabel>> {
        if let Some(b) = &cache.bad_places {
            return Ok(b.clone());
        }
        let mut polys: Vec<QT> = self
            .curve
            .coefficients()
            .iter()
            .map(|c| c.den().clone())
            .collect();
        polys.push(self.curve.disc.num().clone());
        polys.push(self.curve.disc.den().clone());
        let mut labels = std::collections::BTreeSet::new();
        for p in polys {
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (f, _) in factor_over_rationals(&p)?.factors {
                labels.insert(PlaceLabel::Finite(f));
            }
        }
        labels.insert(PlaceLabel::Infinity);
        let out: Vec<_> = labels.into_iter().collect();
        cache.bad_places = Some(out.clone());
        Ok(out)
    }

    fn generic_divisor(&self, cache: &mut Cache, n: u64) -> Result<DivisorOverU> {
        let x = self.generic_x(cache, n)?;
        let mut labels: std::collections::BTreeSet<PlaceLabel> =
            self.bad_places(cache)?.into_iter().collect();
        for (f, _) in self.denominator_locked(cache, n)? {
            labels.insert(PlaceLabel::Finite(f));
        }
        let mut comps = Vec::new();
        for label in labels {
            let place = self.place(cache, &label);
            if !cache.minimal.contains_key(&label) {
                let m = minimal_at_place(&self.curve, &place)?;
                cache.minimal.insert(label.clone(), m);
            }
            let m = &cache.minimal[&label];
            let xm = m.iso.map_x(&x);
            if xm.is_zero() {
                continue;
            }
            let v = m.ord_x(&x, &place)?;
            let order = Self::local_order(v, &label)?;
            comps.push(DivisorComponent { place, order });
        }
        Ok(DivisorOverU::new(n, comps))
    }

    /// The local minimal model at a place, for inspection.
    pub fn minimal_model(&self, label: &PlaceLabel) -> Result<LocalMinimalModel> {
        let mut cache = self.cache.lock().unwrap();
        let place = self.place(&mut cache, label);
        minimal_at_place(&self.curve, &place)
    }

    pub fn place_of(&self, label: &PlaceLabel) -> Place {
        let mut cache = self.cache.lock().unwrap();
        self.place(&mut cache, label)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::int;

    fn qt(cs: &[i64]) -> QT {
        QT::from_i64s(&(), cs)
    }

    fn qu(cs: &[i64]) -> QU {
        QU::from_poly(qt(cs))
    }

    pub(crate) fn split_context() -> EdsContext {
        let s = qt(&[2, 0, 0, 1]);
        let g = &(&qt(&[0, 0, 0, 1]) - &(&s.pow(4) * &qt(&[0, 7]))) + &s.pow(6).scale(&int(6));
        let model = Arc::new(CurveModel::double_cover(qt(&[]), g).unwrap());
        let e = WeierstrassCurve::short(int(-7), int(6)).unwrap();
        let x = KC::from_base(QU::new(qt(&[0, 1]), s.pow(2)).unwrap(), &model);
        let v = KC::v(&model).unwrap();
        let y = v.mul(&KC::from_base(QU::new(qt(&[1]), s.pow(3)).unwrap(), &model));
        EdsContext::split(model, &e, x, y, EdsOptions::default()).unwrap()
    }

    #[test]
    fn split_first_terms() {
        let ctx = split_context();
        let d1 = ctx.divisor(1).unwrap();
        assert_eq!(d1.components.len(), 1);
        assert_eq!(
            d1.components[0].place.label,
            PlaceLabel::Finite(qt(&[2, 0, 0, 1]))
        );
        assert_eq!(d1.components[0].order, 1);
        assert_eq!(d1.degree, 6);
        for n in 1..=4 {
            assert_eq!(ctx.divisor(n).unwrap().degree, 6 * n * n);
        }
    }

    #[test]
    fn split_x_multiple_matches_group_law() {
        let ctx = split_context();
        let e = embed_curve(ctx.curve(), ctx.model()).unwrap();
        let p = ctx.point();
        let q = e.multiply(&p, 3);
        assert_eq!(q.x().unwrap().a(), &ctx.x_multiple(3).unwrap());
    }

    #[test]
    fn example_with_nonminimal_infinity() {
        let model = Arc::new(CurveModel::projective_line(&()));
        let z = qu(&[]);
        let e = WeierstrassCurve::new(z.clone(), z.clone(), z, qu(&[0, 0, -1]), qu(&[1])).unwrap();
        let x = KC::from_base(qu(&[0, 1]), &model);
        let y = KC::from_base(qu(&[1]), &model);
        let ctx = EdsContext::new(model, e, x, y, EdsOptions::default()).unwrap();
        let d1 = ctx.divisor(1).unwrap();
        assert!(d1.is_empty());
        assert_eq!(d1.order_at(&PlaceLabel::Infinity), 0);
        let d2 = ctx.divisor(2).unwrap();
        assert!(!d2.is_empty());
    }

    #[test]
    fn rejects_torsion_and_v_parts() {
        let model = Arc::new(CurveModel::projective_line(&()));
        let e = WeierstrassCurve::short(int(-7), int(6)).unwrap();
        let x = KC::from_base(qu(&[1]), &model);
        let y = KC::from_base(qu(&[0]), &model);
        assert_eq!(
            EdsContext::split(model, &e, x, y, EdsOptions::default()).unwrap_err(),
            Error::TorsionHit(2)
        );
    }
}
