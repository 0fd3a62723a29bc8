use super::field::Field;
use super::poly::{poly_gcd, Polynomial};
use crate::error::{Error, Result};

/// `unit · Π part^multiplicity`, parts monic, squarefree and pairwise coprime,
/// sorted by multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition<F: Field> {
    pub unit: F,
    pub parts: Vec<(Polynomial<F>, usize)>,
}

impl<F: Field> SquarefreeDecomposition<F> {
    pub fn expand(&self) -> Polynomial<F> {
        self.parts
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (p, e)| {
                &acc * &p.pow(*e as u32)
            })
    }
}

pub fn squarefree_decompose<F: Field>(a: &Polynomial<F>) -> Result<SquarefreeDecomposition<F>> {
    let unit = a.leading().cloned().ok_or(Error::ZeroInput)?;
    let f = a.monic();
    let mut parts = if F::characteristic(a.ctx()) == 0 {
        yun(&f)
    } else {
        char_p(&f, F::characteristic(a.ctx()) as usize)
    };
    parts.sort_by_key(|(_, e)| *e);
    Ok(SquarefreeDecomposition { unit, parts })
}

fn yun<F: Field>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let c = poly_gcd(f, &df);
    let mut w = f.exact_div(&c).unwrap();
    let mut y = df.exact_div(&c).unwrap();
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while !w.is_constant() {
        let g = poly_gcd(&w, &z);
        if !g.is_constant() {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g).unwrap();
        y = z.exact_div(&g).unwrap();
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

fn pth_root_poly<F: Field>(f: &Polynomial<F>, p: usize) -> Polynomial<F> {
    let cs = f.coeffs().iter().step_by(p).map(|c| c.pth_root()).collect();
    Polynomial::new(cs, f.ctx())
}

fn char_p<F: Field>(f: &Polynomial<F>, p: usize) -> Vec<(Polynomial<F>, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, j) in char_p(&pth_root_poly(f, p), p) {
            out.push((g, j * p));
        }
        return out;
    }
    let mut c = poly_gcd(f, &df);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = poly_gcd(&w, &c);
        let z = w.exact_div(&y).unwrap();
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).unwrap();
    }
    if !c.is_constant() {
        for (g, j) in char_p(&pth_root_poly(&c.monic(), p), p) {
            out.push((g, j * p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::Fp;
    use crate::arith::rational::Rational;

    #[test]
    fn rational_example() {
        let a = Polynomial::<Rational>::from_i64s(&(), &[-1, 1]).pow(2)
            * Polynomial::from_i64s(&(), &[2, 1]);
        let d = squarefree_decompose(&a).unwrap();
        assert_eq!(
            d.parts,
            vec![
                (Polynomial::from_i64s(&(), &[2, 1]), 1),
                (Polynomial::from_i64s(&(), &[-1, 1]), 2)
            ]
        );
        assert_eq!(d.expand(), a);
    }

    #[test]
    fn prime_field_powers() {
        let p = 5;
        let base = Polynomial::<Fp>::from_i64s(&p, &[1, 0, 1]);
        let a = base.pow(3);
        let d = squarefree_decompose(&a).unwrap();
        assert_eq!(d.parts, vec![(base.clone(), 3)]);
        // multiplicity divisible by p goes through the p-th root branch
        let b = base.pow(5) * Polynomial::from_i64s(&p, &[1, 1]).pow(7);
        let d = squarefree_decompose(&b).unwrap();
        assert_eq!(d.expand(), b);
        assert_eq!(d.parts.iter().map(|x| x.1).collect::<Vec<_>>(), vec![5, 7]);
    }
}
