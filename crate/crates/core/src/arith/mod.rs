//! Exact arithmetic: rationals, prime fields, polynomials and factorization.

pub mod factor_fp;
pub mod factor_q;
pub mod factored;
pub mod field;
pub mod fp;
pub mod gcd;
pub mod hensel;
pub mod nmod;
pub mod poly;
pub mod primes;
pub mod ratfunc;
pub mod rational;
pub mod squarefree;
pub mod zpoly;

pub use factor_fp::factor_mod_p;
pub use factor_q::{certify_irreducible, factor_over_rationals, IrreducibilityCertificate};
pub use factored::FactoredPolynomial;
pub use field::Field;
pub use fp::Fp;
pub use hensel::hensel_lift_factors;
pub use poly::{poly_gcd, Polynomial};
pub use ratfunc::RationalFunction;
pub use rational::{int, rat, Rational};
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};
pub use zpoly::IntPoly;
