//! Exact arithmetic in `F_q`, `F_q[t]` and `F_q(t)`, places of the projective
//! line, local expansions and constructive approximation.

pub mod approx;
pub mod expansion;
pub mod fq;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod wp;

pub use approx::{approximate, has_polar_divisor, polar_divisor, prescribe_valuations};
pub use expansion::{hensel_sth_root, local_expand, polar_part, terms_to_function, LocalExpansion};
pub use fq::{same_field, Embedding, Field, FieldSpec, Fq};
pub use place::{Place, Valuation};
pub use poly::{register_factor_hint, Poly};
pub use rational::RationalFunction;
pub use residue::ResidueField;
pub use wp::wp_preimage;
