//! Elliptic curves in generalized Weierstrass form over a generic field.

mod curve;
mod divpoly;
mod isomorphism;
mod minimal;
mod velu;

pub use curve::{naive_point_count, point_multiply, CurvePoint, WeierstrassCurve};
pub use divpoly::{division_poly, x_of_multiple, x_of_multiple_with, DivPoly, DivisionPolynomials};
pub use isomorphism::Isomorphism;
pub use minimal::{minimal_at_place, LocalMinimalModel};
pub use velu::{velu_isogeny, Isogeny};
