use super::context::EdsContext;
use crate::arith::{FactoredPolynomial, Polynomial, Rational};
use crate::error::Result;

type QT = Polynomial<Rational>;

/// D_{nP} written as a function on C: constant · root^v_power · Π u-factors,
/// whose square is the denominator of x([n]P).
#[derive(Clone, Debug, PartialEq)]
pub struct EdsTermRendering {
    pub n: u64,
    pub constant: Rational,
    pub v_power: u8,
    /// `v` when h = 0, otherwise `w` standing for 2v + h.
    pub root_symbol: &'static str,
    /// The squarefree part of the denominator is not the cover's
    /// discriminant, so no root on C accounts for it.
    pub symbolic_root: bool,
    /// Monic squarefree part t of the denominator r²·t.
    pub squarefree_part: QT,
    pub u_factors: FactoredPolynomial<Rational>,
}

impl EdsTermRendering {
    /// The rendering squared, with the root's square written out in u
    /// (up to a constant).
    pub fn squared_in_u(&self) -> QT {
        let r = self.u_factors.expand();
        &(&r * &r) * &self.squarefree_part
    }
}

pub fn eds_render(ctx: &EdsContext, n: u64) -> Result<EdsTermRendering> {
    ctx.divisor(n)?;
    let den = ctx.denominator_factors(n)?;
    let one = Rational::from_integer(1.into());
    let mut r = Vec::new();
    let mut t = Polynomial::one(&());
    for (f, e) in den {
        if e >= 2 {
            r.push((f.clone(), (e / 2) as usize));
        }
        if e % 2 == 1 {
            t = &t * &f;
        }
    }
    let model = ctx.model();
    let root_symbol = if model.h().is_zero() { "v" } else { "w" };
    let v_power = u8::from(!t.is_one());
    let symbolic_root = v_power == 1 && (model.is_line() || t != model.discriminant().monic());
    let constant = if !symbolic_root && n.is_multiple_of(2) {
        Rational::from_integer(n.into())
    } else {
        one.clone()
    };
    Ok(EdsTermRendering {
        n,
        constant,
        v_power,
        root_symbol,
        symbolic_root,
        squarefree_part: t,
        u_factors: FactoredPolynomial::new(one, r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::context::tests::split_context;
    use crate::eds::magnify::tests::isogeny_pair;

    fn qt(cs: &[i64]) -> QT {
        Polynomial::from_i64s(&(), cs)
    }

    fn u_factor_degrees(r: &EdsTermRendering) -> Vec<usize> {
        r.u_factors
            .factors
            .iter()
            .map(|(f, _)| f.degree().unwrap())
            .collect()
    }

    #[test]
    fn split_renderings() {
        let ctx = split_context();
        let s = qt(&[2, 0, 0, 1]);
        let r1 = eds_render(&ctx, 1).unwrap();
        assert_eq!(
            (r1.v_power, r1.u_factors.factors.clone()),
            (0, vec![(s.clone(), 1)])
        );
        let r2 = eds_render(&ctx, 2).unwrap();
        assert_eq!(
            (r2.v_power, r2.root_symbol, r2.symbolic_root),
            (1, "v", false)
        );
        assert_eq!(r2.constant, Rational::from_integer(2.into()));
        assert_eq!(r2.u_factors.factors, vec![(s.clone(), 1)]);
        let r3 = eds_render(&ctx, 3).unwrap();
        assert_eq!(r3.v_power, 0);
        assert!(r3.u_factors.factors.contains(&(s, 1)));
        assert_eq!(
            eds_render(&ctx, 4).unwrap().constant,
            Rational::from_integer(4.into())
        );
    }

    #[test]
    fn squared_rendering_is_the_denominator() {
        let pair = isogeny_pair();
        for ctx in [&split_context(), &pair.down] {
            for n in 1..=4 {
                let r = eds_render(ctx, n).unwrap();
                assert!(!r.symbolic_root);
                let den = ctx.x_multiple(n).unwrap().den().clone();
                assert_eq!(r.squared_in_u(), den.monic(), "n = {n}");
            }
        }
        assert_eq!(
            u_factor_degrees(&eds_render(&pair.down, 1).unwrap()),
            vec![2]
        );
    }
}
