use std::sync::Arc;

use divseq::arith::factor_q::{factor_over_rationals_with, FactorOptions};
use divseq::arith::fp::reduce_poly;
use divseq::arith::{
    certify_irreducible, factor_mod_p, factor_over_rationals, int, poly_gcd, Field, Fp, Polynomial,
    Rational, RationalFunction,
};
use divseq::cli::{format_poly, parse_poly};
use divseq::elliptic::{
    division_poly, minimal_at_place, point_multiply, x_of_multiple, CurvePoint, WeierstrassCurve,
};
use divseq::function_field::{ord_at_place, CurveModel, FFElement, PlaceLabel};
use divseq::lucas::{cyclotomic_parts_from, LucasSpec};
use proptest::prelude::*;

type QT = Polynomial<Rational>;
type QU = RationalFunction<Rational>;
type KC = FFElement<Rational>;

fn qt(cs: &[i64]) -> QT {
    QT::from_i64s(&(), cs)
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = QT> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1).prop_map(|c| qt(&c))
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = QT> {
    small_poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = QT> {
    small_poly(max_deg).prop_filter("nonconstant", |p| p.degree().unwrap_or(0) > 0)
}

fn deg_multiset(f: &divseq::arith::FactoredPolynomial<Rational>) -> Vec<usize> {
    let mut v: Vec<usize> = f
        .factors
        .iter()
        .flat_map(|(p, e)| std::iter::repeat_n(p.degree().unwrap(), *e))
        .collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_reconstructs_and_factors_are_irreducible(
        fs in prop::collection::vec(nonconstant(4), 1..4),
        seed in 0u64..1000,
    ) {
        let prod = fs.iter().fold(qt(&[1]), |a, f| &a * f);
        let opts = FactorOptions { seed, ..FactorOptions::default() };
        let fac = factor_over_rationals_with(&prod, &opts).unwrap();
        prop_assert_eq!(fac.expand(), prod.clone());
        prop_assert!(deg_multiset(&fac).len() >= fs.len());
        for (p, _) in &fac.factors {
            prop_assert!(p.is_monic());
            prop_assert!(certify_irreducible(p).unwrap().irreducible);
        }
        prop_assert_eq!(factor_over_rationals(&prod).unwrap(), factor_over_rationals_with(&prod, &FactorOptions::default()).unwrap());
    }

    #[test]
    fn gcd_divides_and_scales(a in nonzero_poly(5), b in nonzero_poly(5), c in nonzero_poly(3)) {
        let g = poly_gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
        let gc = poly_gcd(&(&a * &c), &(&b * &c));
        prop_assert_eq!(gc, &c.monic() * &g);
    }

    #[test]
    fn mod_p_degrees_refine_rational_degrees(fs in prop::collection::vec(nonconstant(3), 1..3)) {
        let prod = fs.iter().fold(qt(&[1]), |a, f| &a * f);
        let fac = factor_over_rationals(&prod).unwrap();
        let sqf = fac.factors.iter().fold(qt(&[1]), |a, (p, _)| &a * p);
        for p in [101u64, 103, 107] {
            let red = reduce_poly(&sqf, p).unwrap();
            if red.degree() != sqf.degree() || !poly_gcd(&red, &red.derivative()).is_one() {
                continue;
            }
            let modp = factor_mod_p(&red, 0).unwrap();
            let mut remaining: Vec<usize> = modp.factors.iter().map(|(q, _)| q.degree().unwrap()).collect();
            for (f, _) in &fac.factors {
                let fp = reduce_poly(f, p).unwrap();
                let parts: Vec<usize> = factor_mod_p(&fp, 0).unwrap().factors.iter().map(|(q, _)| q.degree().unwrap()).collect();
                prop_assert_eq!(parts.iter().sum::<usize>(), f.degree().unwrap());
                for d in parts {
                    let i = remaining.iter().position(|&r| r == d).unwrap();
                    remaining.remove(i);
                }
            }
            prop_assert!(remaining.is_empty());
        }
    }

    #[test]
    fn function_field_axioms(a in small_poly(3), b in small_poly(3), c in nonzero_poly(2), d in small_poly(2)) {
        // C: v² + u·v = u⁵ + 3u + 1
        let model = Arc::new(CurveModel::double_cover(qt(&[0, 1]), qt(&[1, 3, 0, 0, 0, 1])).unwrap());
        let z = KC::new(QU::from_poly(a), QU::from_poly(b), &model).unwrap();
        let w = KC::new(QU::from_poly(c), QU::from_poly(d), &model).unwrap();
        prop_assert_eq!(z.mul(&w).norm(), z.norm().mul(&w.norm()));
        prop_assert_eq!(z.norm().is_zero(), z.is_zero());
        if !w.is_zero() {
            prop_assert_eq!(z.mul(&w).mul(&w.inv().unwrap()), z);
        }
    }

    #[test]
    fn ord_is_a_valuation(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(4)) {
        let r = QU::new(a.clone(), c.clone()).unwrap();
        let s = QU::new(b.clone(), qt(&[1, 1])).unwrap();
        let labels = [PlaceLabel::Finite(qt(&[1, 1])), PlaceLabel::Finite(qt(&[2, 0, 1])), PlaceLabel::Infinity];
        for l in &labels {
            let (or, os) = (ord_at_place(&r, l).unwrap(), ord_at_place(&s, l).unwrap());
            prop_assert_eq!(ord_at_place(&r.mul(&s), l).unwrap(), or + os);
            let sum = r.add(&s);
            if !sum.is_zero() {
                let o = ord_at_place(&sum, l).unwrap();
                prop_assert!(o >= or.min(os));
                if or != os {
                    prop_assert_eq!(o, or.min(os));
                }
            }
        }
        // degree balance over all places
        let mut total = ord_at_place(&r, &PlaceLabel::Infinity).unwrap();
        for poly in [r.num(), r.den()] {
            if poly.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (f, _) in factor_over_rationals(poly).unwrap().factors {
                total += ord_at_place(&r, &PlaceLabel::Finite(f.clone())).unwrap() * f.degree().unwrap() as i64;
            }
        }
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn dual_path_over_prime_fields(a in 0u64..1000, b in 0u64..1000, x0 in 0u64..1000, p in prop::sample::select(vec![1009u64, 1013, 1019])) {
        let f = |v: u64| Fp::from_u64(v, p);
        let Ok(e) = WeierstrassCurve::short(f(a), f(b)) else { return Ok(()) };
        let x = f(x0);
        let rhs = x.pow(3).add(&f(a).mul(&x)).add(&f(b));
        if !rhs.is_square() || rhs.is_zero() {
            return Ok(());
        }
        let y = (1..p).map(f).find(|y| y.square() == rhs).unwrap();
        let pt = CurvePoint::Affine(x, y);
        for n in 2..=20u64 {
            let q = point_multiply(&e, &pt, n as i64);
            match (q, x_of_multiple(&e, &x, n)) {
                (CurvePoint::Affine(qx, _), Ok(xm)) => prop_assert_eq!(qx, xm),
                (CurvePoint::Infinity, Err(_)) => {}
                (q, r) => prop_assert!(false, "n = {}: {:?} vs {:?}", n, q, r),
            }
        }
    }

    #[test]
    fn minimality_is_idempotent(k in 1i64..4, c in -3i64..=3) {
        // a4 = −T^{4k}, a6 = T^{6k} + c·T^{6k−1}
        let t = qt(&[0, 1]);
        let a4 = QU::from_poly(t.pow(4 * k as u32).scale(&int(-1)));
        let a6 = QU::from_poly(&t.pow(6 * k as u32) + &t.pow(6 * k as u32 - 1).scale(&int(c)));
        let Ok(e) = WeierstrassCurve::short(a4, a6) else { return Ok(()) };
        let model = Arc::new(CurveModel::projective_line(&()));
        let place = divseq::function_field::places_above(&model, &PlaceLabel::Finite(t)).unwrap();
        let m = minimal_at_place(&e, &place).unwrap();
        prop_assert!(m.ord_disc < 12);
        let again = minimal_at_place(&m.curve, &place).unwrap();
        prop_assert!(again.is_minimal);
        prop_assert_eq!(again.curve, m.curve.clone());
        prop_assert_eq!(again.ord_disc, m.ord_disc);
    }

    #[test]
    fn parse_print_round_trip(p in small_poly(6), var in prop::sample::select(vec!['T', 'u', 'x'])) {
        let s = format_poly(&p, var);
        prop_assert_eq!(parse_poly(&s).unwrap(), p.clone());
        prop_assert_eq!(format_poly(&parse_poly(&s).unwrap(), var), s);
    }
}

fn lucas_specs() -> [LucasSpec; 2] {
    [
        LucasSpec::direct(qt(&[2, 0, 1]), qt(&[1])).unwrap(),
        LucasSpec::quadratic(qt(&[0, 2]), qt(&[2, 0, 1, -1])).unwrap(),
    ]
}

#[test]
fn lucas_divisibility_up_to_40() {
    for spec in lucas_specs() {
        let l = spec.terms(40);
        for m in 1..=40usize {
            for n in (m..=40).step_by(m) {
                assert!(l[n].exact_div(&l[m]).is_some(), "L_{m} ∤ L_{n}");
            }
        }
    }
}

#[test]
fn lucas_closed_form_and_cyclotomic_product() {
    let f = qt(&[2, 0, 1]);
    let g = qt(&[1]);
    let spec = LucasSpec::direct(f.clone(), g.clone()).unwrap();
    let l = spec.terms(36);
    for n in 1..=20u32 {
        assert_eq!(&f.pow(n) - &g.pow(n), &(&f - &g) * &l[n as usize]);
    }
    for spec in lucas_specs() {
        let l = spec.terms(36);
        for n in 2..=36u64 {
            let parts = cyclotomic_parts_from(&l, n).unwrap();
            let prod = (2..=n)
                .filter(|d| n % d == 0)
                .fold(qt(&[1]), |a, d| &a * &parts[(d - 2) as usize]);
            assert_eq!(prod, l[n as usize], "n = {n}");
        }
    }
}

#[test]
fn division_polynomial_roots_are_torsion_abscissae() {
    let e = WeierstrassCurve::new(int(1), int(-1), int(1), int(-3), int(7)).unwrap();
    for p in [53u64, 59, 61] {
        let Some(ep) = e.reduce_mod(p) else { continue };
        let f = |v: u64| Fp::from_u64(v, p);
        let mut points = Vec::new();
        for x in 0..p {
            for y in 0..p {
                if ep.equation_residue(&f(x), &f(y)).is_zero() {
                    points.push(CurvePoint::Affine(f(x), f(y)));
                }
            }
        }
        for n in 2..=9u64 {
            let psi = division_poly(&ep, n).unwrap();
            let quartic = ep.psi2_squared();
            for pt in &points {
                let x = pt.x().unwrap();
                let torsion = point_multiply(&ep, pt, n as i64).is_infinity();
                let mut v = psi.p.eval(x);
                if psi.epsilon == 1 {
                    v = v.mul(&quartic.eval(x));
                }
                assert_eq!(v.is_zero(), torsion, "p = {p}, n = {n}, point {pt:?}");
            }
        }
    }
}
