//! Analysis toolkit for bipartite `d ⊗ d` density matrices that are invariant
//! under diagonal phase subgroups of `U(d)`.
//!
//! The crate provides:
//!
//! - a small dense complex-matrix kernel ([`linalg`]): Kronecker products,
//!   Hermitian spectra, partial transposition, realignment, trace norms;
//! - phase subgroups of `U(d)` encoded as [`symmetry::Partition`]s of the
//!   local indices, with exact invariance tests, zero-pattern masks and
//!   twirl projections ([`symmetry`]);
//! - constructors for the state families built from those symmetries
//!   ([`states`]);
//! - direct-sum block decompositions and block-wise positivity checks
//!   ([`blocks`]);
//! - PPT and realignment (CCNR) diagnostics ([`criteria`]);
//! - a plain-text matrix file format used by the `symstate` CLI ([`dmat`]).

pub mod blocks;
pub mod criteria;
pub mod dmat;
pub mod linalg;
pub mod states;
pub mod symmetry;

mod error;

pub use error::{Error, Result};
pub use linalg::{BipartiteIndex, CMatrix};
