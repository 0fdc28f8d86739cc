//! Exact computations for the cyclically presented groups
//!
//! ```text
//! Γ_n(k,l) = < x_0, ..., x_{n-1} | x_i x_{i+k} x_{i+l}  (0 <= i < n) >
//! ```
//!
//! The crate is `no_std` and only needs `alloc`. It covers parameter
//! normalisation and the four congruence conditions ([`params`]),
//! abelianisation invariants by Smith normal form with independent
//! determinant and polynomial-gcd routes ([`abelian`]), the star graph and
//! small-cancellation status ([`stargraph`]), isomorphism orbits under the
//! parameter moves ([`iso`]), and low-index kernel invariants obtained by
//! Reidemeister–Schreier rewriting ([`subgroup`]).
#![no_std]

extern crate alloc;

pub mod abelian;
pub mod classify;
pub mod error;
pub mod iso;
pub mod params;
pub mod stargraph;
pub mod subgroup;

pub use error::{Error, Result};
pub use params::{ConditionVector, GroupParams, NormalizationResult};
