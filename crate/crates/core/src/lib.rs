//! Exact Artin-Schreier ramification, torsor normal forms and extension
//! certificates over `F_q(t)`.

pub mod artin_schreier;
pub mod base_fields;
pub mod cli;
pub mod cover;
pub mod descent;
pub mod error;
pub mod random;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};
