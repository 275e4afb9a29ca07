//! Artin-Schreier layers and towers: exact arithmetic, valuations at tracked
//! places, ramification and the uniformizer identities.

pub mod defect;
pub mod nested;
pub mod ramification;
pub mod tower;

pub use defect::{defect_witness, expansion_defect, expansion_defect_for};
pub use nested::{Nested, Relations, ResidueElem, Scalar};
pub use ramification::{as_reduce, classify_ramification, AsReduction, RamificationCase, RamificationReport};
pub use tower::{bezout, format_nested, ASTower, LayerData, TowerElement, TrackedPlace, MAX_TOWER_DEGREE};
