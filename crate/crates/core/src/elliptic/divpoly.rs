use std::collections::BTreeMap;

use super::curve::WeierstrassCurve;
use crate::arith::{Field, Polynomial};
use crate::error::{Error, Result};

/// ψ_n = p(x) · ψ₂^ε with ψ₂ = 2y + a1x + a3; ε = 1 exactly for even n.
#[derive(Clone, Debug, PartialEq)]
pub struct DivPoly<F: Field> {
    pub n: u64,
    pub p: Polynomial<F>,
    pub epsilon: u8,
}

/// Memoized division polynomials of one curve, stored as the x-part `p_n`.
#[derive(Clone, Debug)]
pub struct DivisionPolynomials<F: Field> {
    curve: WeierstrassCurve<F>,
    quartic: Polynomial<F>,
    table: BTreeMap<u64, Polynomial<F>>,
}

impl<F: Field> DivisionPolynomials<F> {
    pub fn new(curve: &WeierstrassCurve<F>) -> Self {
        let ctx = curve.ctx();
        let c = |n: i64| F::from_i64(&ctx, n);
        let e = curve;
        let mut table = BTreeMap::new();
        table.insert(0, Polynomial::zero(&ctx));
        table.insert(1, Polynomial::one(&ctx));
        table.insert(2, Polynomial::one(&ctx));
        table.insert(
            3,
            Polynomial::new(
                vec![
                    e.b8.clone(),
                    e.b6.mul(&c(3)),
                    e.b4.mul(&c(3)),
                    e.b2.clone(),
                    c(3),
                ],
                &ctx,
            ),
        );
        table.insert(
            4,
            Polynomial::new(
                vec![
                    e.b4.mul(&e.b8).sub(&e.b6.square()),
                    e.b2.mul(&e.b8).sub(&e.b4.mul(&e.b6)),
                    e.b8.mul(&c(10)),
                    e.b6.mul(&c(10)),
                    e.b4.mul(&c(5)),
                    e.b2.clone(),
                    c(2),
                ],
                &ctx,
            ),
        );
        DivisionPolynomials {
            curve: curve.clone(),
            quartic: curve.psi2_squared(),
            table,
        }
    }

    pub fn curve(&self) -> &WeierstrassCurve<F> {
        &self.curve
    }

    /// ψ₂² = 4x³ + b2x² + 2b4x + b6.
    pub fn quartic(&self) -> &Polynomial<F> {
        &self.quartic
    }

    /// The x-part `p_n` of ψ_n.
    pub fn part(&mut self, n: u64) -> Result<Polynomial<F>> {
        if let Some(p) = self.table.get(&n) {
            return Ok(p.clone());
        }
        let m = n / 2;
        let p = if n % 2 == 1 {
            let (pm2, pm, pm1, pmm1) = (
                self.part(m + 2)?,
                self.part(m)?,
                self.part(m + 1)?,
                self.part(m - 1)?,
            );
            let t1 = &pm2 * &pm.pow(3);
            let t2 = &pmm1 * &pm1.pow(3);
            let q2 = &self.quartic * &self.quartic;
            if m.is_multiple_of(2) {
                &(&t1 * &q2) - &t2
            } else {
                &t1 - &(&t2 * &q2)
            }
        } else {
            let (pm, pm2, pmm1, pmm2, pm1) = (
                self.part(m)?,
                self.part(m + 2)?,
                self.part(m - 1)?,
                self.part(m - 2)?,
                self.part(m + 1)?,
            );
            // ψ₂·ψ_{2m} = ψ_m(ψ_{m+2}ψ_{m−1}² − ψ_{m−2}ψ_{m+1}²); the right side
            // carries exactly one factor ψ₂² in either parity of m.
            let inner = &(&pm2 * &pmm1.pow(2)) - &(&pmm2 * &pm1.pow(2));
            let rhs = &(&pm * &inner) * &self.quartic;
            rhs.exact_div(&self.quartic).ok_or_else(|| {
                Error::Internal(format!("ψ₂ does not divide the even recursion at n = {n}"))
            })?
        };
        self.table.insert(n, p.clone());
        Ok(p)
    }

    pub fn get(&mut self, n: u64) -> Result<DivPoly<F>> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(DivPoly {
            n,
            p: self.part(n)?,
            epsilon: n.is_multiple_of(2) as u8,
        })
    }

    /// ψ_n² as a polynomial in x.
    pub fn psi_squared(&mut self, n: u64) -> Result<Polynomial<F>> {
        let p = self.part(n)?;
        let sq = &p * &p;
        Ok(if n.is_multiple_of(2) {
            &sq * &self.quartic
        } else {
            sq
        })
    }

    /// ψ_{n−1}·ψ_{n+1} as a polynomial in x.
    pub fn neighbour_product(&mut self, n: u64) -> Result<Polynomial<F>> {
        let prod = &self.part(n - 1)? * &self.part(n + 1)?;
        Ok(if n % 2 == 1 {
            &prod * &self.quartic
        } else {
            prod
        })
    }

    /// x([n]P) = φ_n(x) / ψ_n(x)² with φ_n = x·ψ_n² − ψ_{n−1}ψ_{n+1}.
    pub fn multiplication_x(&mut self, n: u64) -> Result<(Polynomial<F>, Polynomial<F>)> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        let den = self.psi_squared(n)?;
        let x = Polynomial::x(&self.curve.ctx());
        let num = &(&x * &den) - &self.neighbour_product(n)?;
        Ok((num, den))
    }
}

pub fn division_poly<F: Field>(e: &WeierstrassCurve<F>, n: u64) -> Result<DivPoly<F>> {
    DivisionPolynomials::new(e).get(n)
}

/// x([n]P) from x(P) alone.
pub fn x_of_multiple<F: Field>(e: &WeierstrassCurve<F>, xp: &F, n: u64) -> Result<F> {
    x_of_multiple_cached(&mut DivisionPolynomials::new(e), xp, n)
}

pub fn x_of_multiple_cached<F: Field>(
    dp: &mut DivisionPolynomials<F>,
    xp: &F,
    n: u64,
) -> Result<F> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if n == 1 {
        return Ok(xp.clone());
    }
    let ev = |p: &Polynomial<F>| p.eval(xp);
    let pn = ev(&dp.part(n)?);
    let q = ev(dp.quartic());
    let pp = ev(&dp.part(n - 1)?).mul(&ev(&dp.part(n + 1)?));
    let (num, den) = if n.is_multiple_of(2) {
        (pp, pn.square().mul(&q))
    } else {
        (pp.mul(&q), pn.square())
    };
    let inv = den.inv().ok_or(Error::TorsionHit(n))?;
    Ok(xp.sub(&num.mul(&inv)))
}

pub use x_of_multiple_cached as x_of_multiple_with;
