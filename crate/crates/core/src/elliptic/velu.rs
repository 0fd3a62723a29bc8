use super::curve::{CurvePoint, WeierstrassCurve};
use super::divpoly::DivisionPolynomials;
use crate::arith::{poly_gcd, Field, Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// An odd-degree separable isogeny (x, y) ↦ (X(x), y·Y₁(x) + Y₀(x)).
#[derive(Clone, Debug)]
pub struct Isogeny<F: Field> {
    pub domain: WeierstrassCurve<F>,
    pub codomain: WeierstrassCurve<F>,
    pub kernel: Polynomial<F>,
    pub degree: u64,
    pub x_map: RationalFunction<F>,
    pub y_coeff: RationalFunction<F>,
    pub y_const: RationalFunction<F>,
}

impl<F: Field> Isogeny<F> {
    pub fn apply(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        let CurvePoint::Affine(x, y) = p else {
            return CurvePoint::Infinity;
        };
        match (
            self.x_map.eval(x),
            self.y_coeff.eval(x),
            self.y_const.eval(x),
        ) {
            (Some(xx), Some(c1), Some(c0)) => CurvePoint::Affine(xx, y.mul(&c1).add(&c0)),
            _ => CurvePoint::Infinity,
        }
    }

    /// Image of a point with coordinates in an extension G ⊇ F.
    pub fn apply_in<G: Field>(&self, x: &G, y: &G, embed: impl Fn(&F) -> G) -> Option<(G, G)> {
        let ev = |r: &RationalFunction<F>| -> Option<G> {
            r.num()
                .eval_with(x, &embed)
                .div(&r.den().eval_with(x, &embed))
        };
        let xx = ev(&self.x_map)?;
        let yy = y.mul(&ev(&self.y_coeff)?).add(&ev(&self.y_const)?);
        Some((xx, yy))
    }
}

/// (a mod k, b mod k) ↦ Σ kᵢ aⁱ b^{d−i} mod k.
fn homogenized_mod<F: Field>(
    k: &Polynomial<F>,
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Polynomial<F> {
    let d = k.degree().unwrap();
    let mut apow = vec![Polynomial::one(k.ctx())];
    let mut bpow = vec![Polynomial::one(k.ctx())];
    for i in 1..=d {
        apow.push((&apow[i - 1] * a).rem(k).unwrap());
        bpow.push((&bpow[i - 1] * b).rem(k).unwrap());
    }
    let mut acc = Polynomial::zero(k.ctx());
    for i in 0..=d {
        let term = (&apow[i] * &bpow[d - i]).rem(k).unwrap().scale(&k.coeff(i));
        acc = &acc + &term;
    }
    acc
}

fn check_kernel<F: Field>(e: &WeierstrassCurve<F>, k: &Polynomial<F>) -> Result<()> {
    let d = k.degree().unwrap() as u64;
    let bad = |why: &str| Err(Error::KernelNotSubgroup(why.to_string()));
    if !k.is_monic() {
        return bad("kernel polynomial is not monic");
    }
    if !poly_gcd(k, &k.derivative()).is_one() {
        return bad("kernel polynomial is not squarefree");
    }
    let mut dp = DivisionPolynomials::new(e);
    let l = 2 * d + 1;
    if !dp.part(l)?.rem(k)?.is_zero() {
        return bad("kernel polynomial does not divide the division polynomial");
    }
    for j in 2..=d {
        let (phi, psi2) = dp.multiplication_x(j)?;
        let (phi, psi2) = (phi.rem(k)?, psi2.rem(k)?);
        if !poly_gcd(&psi2, k).is_one() || !homogenized_mod(k, &phi, &psi2).is_zero() {
            return bad("kernel roots are not closed under multiplication");
        }
    }
    Ok(())
}

pub fn velu_isogeny<F: Field>(
    e: &WeierstrassCurve<F>,
    kernel: &Polynomial<F>,
) -> Result<Isogeny<F>> {
    let ctx = e.ctx();
    let Some(d) = kernel.degree() else {
        return Err(Error::KernelNotSubgroup("zero kernel polynomial".into()));
    };
    if F::characteristic(&ctx) == 2 {
        return Err(Error::Unsupported("isogenies in characteristic 2".into()));
    }
    check_kernel(e, kernel)?;
    let c = |n: i64| F::from_i64(&ctx, n);
    let half = c(2).inv().unwrap();
    let d = d as i64;
    let coeff = |i: i64| {
        if i < 0 {
            F::zero(&ctx)
        } else {
            kernel.coeff(i as usize)
        }
    };
    let s1 = coeff(d - 1).neg();
    let s2 = coeff(d - 2);
    let s3 = coeff(d - 3).neg();
    let p2 = s1.square().sub(&s2.mul(&c(2)));
    let p3 = s1.pow(3).sub(&s1.mul(&s2).mul(&c(3))).add(&s3.mul(&c(3)));
    let t = p2.mul(&c(6)).add(&e.b2.mul(&s1)).add(&e.b4.mul(&c(d)));
    let w = p3
        .mul(&c(10))
        .add(&e.b2.mul(&p2).mul(&c(2)))
        .add(&e.b4.mul(&s1).mul(&c(3)))
        .add(&e.b6.mul(&c(d)));
    let codomain = WeierstrassCurve::new(
        e.a1.clone(),
        e.a2.clone(),
        e.a3.clone(),
        e.a4.sub(&t.mul(&c(5))),
        e.a6.sub(&e.b2.mul(&t)).sub(&w.mul(&c(7))),
    )?;

    let x = Polynomial::x(&ctx);
    let u = e.psi2_squared();
    let k1 = kernel.derivative();
    let k2 = k1.derivative();
    let ksq = kernel * kernel;
    let lin = Polynomial::new(vec![s1.mul(&c(-2)), c(2 * d + 1)], &ctx);
    let num = &(&(&lin * &ksq) - &(&u.derivative().scale(&half) * &(&k1 * kernel)))
        - &(&u * &(&(&k2 * kernel) - &(&k1 * &k1)));
    let x_map = RationalFunction::new(num, ksq)?;
    let xd = x_map.derivative();
    let a1 = RationalFunction::constant(e.a1.clone());
    let a3 = RationalFunction::constant(e.a3.clone());
    let xr = RationalFunction::from_poly(x);
    let hh = RationalFunction::constant(half);
    let y_const = a1
        .mul(&xr)
        .add(&a3)
        .mul(&xd)
        .sub(&a1.mul(&x_map))
        .sub(&a3)
        .mul(&hh);
    Ok(Isogeny {
        domain: e.clone(),
        codomain,
        kernel: kernel.clone(),
        degree: (2 * d + 1) as u64,
        x_map,
        y_coeff: xd,
        y_const,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factor_over_rationals, int, rat, Fp, Rational};
    use crate::elliptic::divpoly::division_poly;
    use crate::function_field::{CurveModel, FFElement};
    use std::sync::Arc;

    fn curve(a: [i64; 5]) -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4])).unwrap()
    }

    fn big_c() -> WeierstrassCurve<Rational> {
        curve([0, -1, 1, -7820, -263580])
    }

    fn kernel5() -> Polynomial<Rational> {
        Polynomial::new(vec![rat(12751, 5), int(101), int(1)], &())
    }

    #[test]
    fn trivial_kernel_is_identity() {
        let e = curve([0, -1, 1, -10, -20]);
        let iso = velu_isogeny(&e, &Polynomial::one(&())).unwrap();
        assert_eq!(iso.codomain, e);
        assert_eq!(iso.degree, 1);
        assert_eq!(iso.x_map, RationalFunction::var(&()));
        let p = CurvePoint::Affine(int(5), int(5));
        assert_eq!(iso.apply(&p), p);
    }

    #[test]
    fn quintic_kernel_factor() {
        let psi5 = division_poly(&big_c(), 5).unwrap().p;
        let f = factor_over_rationals(&psi5).unwrap();
        let quad: Vec<_> = f
            .factors
            .iter()
            .filter(|(q, _)| q.degree() == Some(2))
            .collect();
        assert_eq!(quad.len(), 1);
        assert_eq!(quad[0].0, kernel5());
    }

    #[test]
    fn codomain_matches_11a3_j() {
        let iso = velu_isogeny(&big_c(), &kernel5()).unwrap();
        let e = curve([0, -1, 1, -10, -20]);
        assert_eq!(iso.codomain.j_invariant(), e.j_invariant());
        assert_eq!(iso.degree, 5);
    }

    #[test]
    fn image_satisfies_codomain_equation() {
        let c = big_c();
        let iso = velu_isogeny(&c, &kernel5()).unwrap();
        let model = Arc::new(
            CurveModel::double_cover(
                Polynomial::from_i64s(&(), &[1]),
                Polynomial::from_i64s(&(), &[-263580, -7820, -1, 1]),
            )
            .unwrap(),
        );
        let u = FFElement::u(&model);
        let v = FFElement::v(&model).unwrap();
        let (xx, yy) = iso
            .apply_in(&u, &v, |q: &Rational| {
                FFElement::from_base(RationalFunction::constant(q.clone()), &model)
            })
            .unwrap();
        let cod = iso
            .codomain
            .base_change(|q| FFElement::from_base(RationalFunction::constant(q.clone()), &model))
            .unwrap();
        assert!(cod.equation_residue(&xx, &yy).is_zero());
    }

    #[test]
    fn rejects_non_subgroup() {
        let k = Polynomial::new(vec![int(1), int(1), int(1)], &());
        assert!(matches!(
            velu_isogeny(&big_c(), &k),
            Err(Error::KernelNotSubgroup(_))
        ));
    }

    #[test]
    fn homomorphism_on_sample_points() {
        let p = 1009;
        let c = big_c().reduce_mod(p).unwrap();
        let k = crate::arith::fp::reduce_poly(&kernel5(), p).unwrap();
        let iso = velu_isogeny(&c, &k).unwrap();
        let pts: Vec<_> = (0..p)
            .flat_map(|x| {
                let xf = Fp::from_u64(x, p);
                (0..p).map(move |y| CurvePoint::Affine(xf, Fp::from_u64(y, p)))
            })
            .filter(|q| c.contains(q))
            .take(12)
            .collect();
        for a in &pts {
            let ia = iso.apply(a);
            assert!(iso.codomain.contains(&ia));
            for b in &pts {
                assert_eq!(
                    iso.apply(&c.add(a, b)),
                    iso.codomain.add(&ia, &iso.apply(b))
                );
            }
            assert_eq!(iso.apply(&c.multiply(a, 5)), iso.codomain.multiply(&ia, 5));
        }
    }
}
