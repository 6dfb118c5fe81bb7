//! Numerical classification of non-Gorenstein ℚ-Fano threefolds of large
//! anticanonical degree.
//!
//! Everything is exact rational arithmetic. The building blocks are the
//! basket model and local Riemann–Roch corrections ([`basket`]), the
//! global invariants `L^3`, `chi(tL)`, `dim |-K|` ([`invariants`]), the
//! admissibility predicates ([`filters`]), the exhaustive search
//! ([`search`]), the toric scanner ([`wps`]) and a regression harness
//! against reference tables ([`reproduce`]).

pub mod basket;
pub mod error;
pub mod filters;
pub mod invariants;
pub mod rational;
pub mod reproduce;
pub mod search;
pub mod wps;

pub use basket::{parse_basket, Basket, LocalIndex, SingularityPoint};
pub use error::{Error, Result};
pub use invariants::NumericalFano;
pub use rational::Rational;
pub use search::{FanoCandidate, Mode, QMax, SearchConfig};
