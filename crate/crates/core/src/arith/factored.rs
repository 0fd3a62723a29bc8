use std::cmp::Ordering;

use super::field::Field;
use super::poly::Polynomial;

/// `unit · Π factor^exponent` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredPolynomial<F: Field> {
    pub unit: F,
    pub factors: Vec<(Polynomial<F>, usize)>,
}

impl<F: Field + Ord> FactoredPolynomial<F> {
    pub fn new(unit: F, mut factors: Vec<(Polynomial<F>, usize)>) -> Self {
        factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
        FactoredPolynomial { unit, factors }
    }
}

impl<F: Field> FactoredPolynomial<F> {
    pub fn expand(&self) -> Polynomial<F> {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit.clone()), |acc, (p, e)| {
                &acc * &p.pow(*e as u32)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Factor degrees with multiplicity, ascending.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(p, e)| std::iter::repeat_n(p.degree().unwrap(), *e))
            .collect();
        v.sort_unstable();
        v
    }
}

/// Degree first, then coefficients lowest degree first.
pub fn cmp_poly<F: Field + Ord>(a: &Polynomial<F>, b: &Polynomial<F>) -> Ordering {
    a.coeffs()
        .len()
        .cmp(&b.coeffs().len())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}
