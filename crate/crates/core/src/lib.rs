//! Computational toolkit for transfinite asymptotic dimension experiments.
//!
//! The crate is organized around a chain of constructions:
//!
//! * [`ordinal`] — countable ordinals below ε₀ in Cantor normal form, with
//!   the fixed fundamental sequences used everywhere else.
//! * [`finfam`] — finite subsets of ℕ, explicit families over bounded ground
//!   sets, and the Borst `Ord` rank with its combinators.
//! * [`sfamily`] — the recursive families `S_ξ` indexed by ordinals, with a
//!   terminating membership oracle and finite truncations.
//! * [`space`] — the lattice components `X_τ`, their sup-metric, and the
//!   weighted union metric `d_ξ` on labelled points.
//! * [`cover`] — verification and exhaustive search for r-disjoint uniformly
//!   bounded covers of finite point sets.
//! * [`partition`] — the discrete ε-partition chain and the skeleton-descent
//!   refuter that produces uncovered witness points.
//!
//! Everything is exact integer / exact ordinal arithmetic; no floating point.

pub mod cover;
pub mod finfam;
pub mod ordinal;
pub mod partition;
pub mod selftest;
pub mod sfamily;
pub mod space;

pub use finfam::{Family, FinSet};
pub use ordinal::Ordinal;
pub use space::{Label, LatticePoint};
