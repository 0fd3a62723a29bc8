use crate::arith::{Field, Fp, Polynomial, Rational};
use crate::error::{Error, Result};

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub disc: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurvePoint<F: Field> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> CurvePoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self> {
        let c = |n: i64| F::from_i64(&a1.ctx(), n);
        let b2 = a1.square().add(&a2.mul(&c(4)));
        let b4 = a4.mul(&c(2)).add(&a1.mul(&a3));
        let b6 = a3.square().add(&a6.mul(&c(4)));
        let b8 = a1
            .square()
            .mul(&a6)
            .add(&a2.mul(&a6).mul(&c(4)))
            .sub(&a1.mul(&a3).mul(&a4))
            .add(&a2.mul(&a3.square()))
            .sub(&a4.square());
        let c4 = b2.square().sub(&b4.mul(&c(24)));
        let c6 = b2
            .pow(3)
            .neg()
            .add(&b2.mul(&b4).mul(&c(36)))
            .sub(&b6.mul(&c(216)));
        let disc = b2
            .square()
            .mul(&b8)
            .neg()
            .sub(&b4.pow(3).mul(&c(8)))
            .sub(&b6.square().mul(&c(27)))
            .add(&b2.mul(&b4).mul(&b6).mul(&c(9)));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(WeierstrassCurve {
            a1,
            a2,
            a3,
            a4,
            a6,
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        })
    }

    pub fn short(a4: F, a6: F) -> Result<Self> {
        let z = F::zero(&a4.ctx());
        Self::new(z.clone(), z.clone(), z, a4, a6)
    }

    pub fn coefficients(&self) -> [F; 5] {
        [
            self.a1.clone(),
            self.a2.clone(),
            self.a3.clone(),
            self.a4.clone(),
            self.a6.clone(),
        ]
    }

    pub fn ctx(&self) -> F::Ctx {
        self.a1.ctx()
    }

    pub fn j_invariant(&self) -> F {
        self.c4.pow(3).div(&self.disc).unwrap()
    }

    /// Maps the coefficients into another field.
    pub fn base_change<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<WeierstrassCurve<G>> {
        WeierstrassCurve::new(
            f(&self.a1),
            f(&self.a2),
            f(&self.a3),
            f(&self.a4),
            f(&self.a6),
        )
    }

    /// y² + a1xy + a3y − (x³ + a2x² + a4x + a6) at (x, y).
    pub fn equation_residue(&self, x: &F, y: &F) -> F {
        let lhs = y.square().add(&self.a1.mul(x).mul(y)).add(&self.a3.mul(y));
        let rhs = x
            .pow(3)
            .add(&self.a2.mul(&x.square()))
            .add(&self.a4.mul(x))
            .add(&self.a6);
        lhs.sub(&rhs)
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.equation_residue(x, y).is_zero(),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<CurvePoint<F>> {
        let p = CurvePoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    /// 4x³ + b2x² + 2b4x + b6 = (2y + a1x + a3)², as a polynomial in x.
    pub fn psi2_squared(&self) -> Polynomial<F> {
        let c = |n: i64| F::from_i64(&self.ctx(), n);
        Polynomial::new(
            vec![self.b6.clone(), self.b4.mul(&c(2)), self.b2.clone(), c(4)],
            &self.ctx(),
        )
    }

    pub fn negate(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                CurvePoint::Affine(x.clone(), y.neg().sub(&self.a1.mul(x)).sub(&self.a3))
            }
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let c = |n: i64| F::from_i64(&self.ctx(), n);
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.mul(&c(2)).add(&self.a1.mul(x1)).add(&self.a3);
            if y1.add(y2).add(&self.a1.mul(x2)).add(&self.a3).is_zero() || denom.is_zero() {
                return CurvePoint::Infinity;
            }
            let inv = denom.inv().unwrap();
            let lam = x1
                .square()
                .mul(&c(3))
                .add(&self.a2.mul(x1).mul(&c(2)))
                .add(&self.a4)
                .sub(&self.a1.mul(y1))
                .mul(&inv);
            let nu = x1
                .pow(3)
                .neg()
                .add(&self.a4.mul(x1))
                .add(&self.a6.mul(&c(2)))
                .sub(&self.a3.mul(y1))
                .mul(&inv);
            (lam, nu)
        } else {
            let inv = x2.sub(x1).inv().unwrap();
            (y2.sub(y1).mul(&inv), y1.mul(x2).sub(&y2.mul(x1)).mul(&inv))
        };
        let x3 = lambda
            .square()
            .add(&self.a1.mul(&lambda))
            .sub(&self.a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda.add(&self.a1).mul(&x3).neg().sub(&nu).sub(&self.a3);
        CurvePoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, p)
    }

    pub fn multiply(&self, p: &CurvePoint<F>, n: i64) -> CurvePoint<F> {
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Smallest `1 ≤ n ≤ bound` with `[n]P = O`.
    pub fn torsion_order(&self, p: &CurvePoint<F>, bound: u64) -> Option<u64> {
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Some(n);
            }
            if n < bound {
                q = self.add(&q, p);
            }
        }
        None
    }
}

pub fn point_multiply<F: Field>(
    e: &WeierstrassCurve<F>,
    p: &CurvePoint<F>,
    n: i64,
) -> CurvePoint<F> {
    e.multiply(p, n)
}

impl WeierstrassCurve<Rational> {
    /// Reduction modulo `p`, or `None` at primes of bad reduction (or
    /// dividing a denominator).
    pub fn reduce_mod(&self, p: u64) -> Option<WeierstrassCurve<Fp>> {
        let red = |c: &Rational| Fp::from_rational(c, p).ok();
        let e = WeierstrassCurve::new(
            red(&self.a1)?,
            red(&self.a2)?,
            red(&self.a3)?,
            red(&self.a4)?,
            red(&self.a6)?,
        );
        e.ok()
    }
}

/// Number of F_p-points, including the point at infinity.
pub fn naive_point_count(e: &WeierstrassCurve<Fp>) -> u64 {
    let p = e.ctx();
    if p == 2 {
        let mut n = 1;
        for x in 0..2 {
            for y in 0..2 {
                if e.equation_residue(&Fp::from_u64(x, 2), &Fp::from_u64(y, 2))
                    .is_zero()
                {
                    n += 1;
                }
            }
        }
        return n;
    }
    let q = e.psi2_squared();
    let mut n = 1u64;
    for x in 0..p {
        let v = q.eval(&Fp::from_u64(x, p));
        n += if v.is_zero() {
            1
        } else if v.is_square() {
            2
        } else {
            0
        };
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn curve(a: [i64; 5]) -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4])).unwrap()
    }

    #[test]
    fn invariants() {
        let e = curve([0, -1, 1, -10, -20]);
        assert_eq!(
            e.b2.clone() * e.b6.clone() - e.b4.clone() * e.b4.clone(),
            e.b8.clone() * int(4)
        );
        assert_eq!(e.disc, int(-161051));
        assert_eq!(
            e.j_invariant(),
            Rational::new((-122023936).into(), 161051.into())
        );
        assert_eq!(
            WeierstrassCurve::new(int(0), int(0), int(0), int(0), int(0)),
            Err(Error::SingularCurve)
        );
    }

    #[test]
    fn group_law_examples() {
        let e = curve([0, 0, 0, -7, 6]);
        let p = e.point(int(1), int(0)).unwrap();
        assert!(point_multiply(&e, &p, 2).is_infinity());
        assert_eq!(point_multiply(&e, &p, 1), p);
        let e = curve([0, -1, 1, -10, -20]);
        let p = e.point(int(5), int(5)).unwrap();
        assert!(point_multiply(&e, &p, 5).is_infinity());
        assert!(!point_multiply(&e, &p, 3).is_infinity());
        assert_eq!(e.torsion_order(&p, 24), Some(5));
        let q = point_multiply(&e, &p, 2);
        assert!(e.contains(&q));
        assert_eq!(e.add(&q, &e.negate(&q)), CurvePoint::Infinity);
    }

    #[test]
    fn point_counts_match_brute_force() {
        let e = curve([1, -1, 1, -3, 7]);
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            let Some(ep) = e.reduce_mod(p) else { continue };
            let mut n = 1;
            for x in 0..p {
                for y in 0..p {
                    if ep
                        .equation_residue(&Fp::from_u64(x, p), &Fp::from_u64(y, p))
                        .is_zero()
                    {
                        n += 1;
                    }
                }
            }
            assert_eq!(naive_point_count(&ep), n, "p = {p}");
        }
    }
}
