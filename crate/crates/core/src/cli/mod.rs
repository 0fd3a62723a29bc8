//! Command-line front end: spec files, expression grammar and reports.

pub mod display;
pub mod expr;
mod input;
mod load;
mod run;

pub use display::{primitive_form, IntFactorization};
pub use expr::{format_poly, parse_poly, parse_value, Value};
pub use input::{parse_input, Binding, InputSpec, Kind};
pub use load::{eds_context, isogeny_pair, lucas_spec};
pub use run::{run_command, Outcome, Report, MAX_EDS_INDEX, MAX_LUCAS_INDEX, MAX_SURVEY_BOUND};
