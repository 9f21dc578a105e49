//! Decide and verify finiteness of double coset collections `X\G/P` for
//! classical groups `G`, maximal rank reductive subgroups `X` and parabolic
//! subgroups `P`.
//!
//! * [`rootsys`] builds root systems and their subsystems and tests Weyl conjugacy.
//! * [`subgroups`] describes `X` and `P` symbolically and classifies finiteness.
//! * [`criterion`] searches for root-system witnesses of infiniteness.
//! * [`fforacle`] counts orbits over small prime fields as independent evidence.

pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod subgroups;
pub mod criterion;
pub mod fforacle;

pub use error::{Error, Result};
