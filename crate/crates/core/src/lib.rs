//! Exact arithmetic for Lucas sequences over Q[T] and elliptic divisibility
//! sequences over function fields of curves.

pub mod arith;
pub mod cli;
pub mod eds;
pub mod elliptic;
pub mod error;
pub mod function_field;
pub mod lucas;

pub use error::{Error, Result};
