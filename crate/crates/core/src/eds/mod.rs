//! Elliptic divisibility sequences over K(C), with D_{nP} pushed down to the
//! u-line: one component per place of Q(u), orders measured on C.

mod analysis;
mod context;
mod divisor;
mod magnify;
mod render;
mod survey;

pub use analysis::{
    canonical_height, primitive_report, rigid_divisibility_check, HeightReport, PlaceHistory,
    PrimitiveReport, PrimitiveRow, RigidReport,
};
pub use context::{EdsContext, EdsOptions, TORSION_CHECK_BOUND};
pub use divisor::{DivisorComponent, DivisorOverU};
pub use magnify::{
    isogeny_decomposition_check, magnified_check, DecompositionClass, DecompositionReport,
    MagnificationReport, MagnifiedPair,
};
pub use render::{eds_render, EdsTermRendering};
pub use survey::{reduction_survey, ReductionRow, ReductionSurvey};

pub fn eds_divisor(ctx: &EdsContext, n: u64) -> crate::Result<DivisorOverU> {
    ctx.divisor(n)
}
