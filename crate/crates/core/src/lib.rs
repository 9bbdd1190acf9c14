//! Exact homological computations for connected graded-commutative
//! differential bigraded algebras.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: exact rank/kernel/cokernel over a prime field or the
//!   rationals,
//! - [`bigraded`]: bidegrees, windows, dimension tables and shifts,
//! - [`algebra`]: presentations of dg-algebras and their per-bidegree
//!   linearization,
//! - [`dgmodule`]: windowed complexes of dg-modules and the functor
//!   calculus (cohomology, shifts, truncations, duals, Hom complexes),
//! - [`resolve`]: minimal semifree resolutions with certified windows,
//! - [`homology`]: Ext tables, local cohomology (two pipelines), derived
//!   global sections and Ext in the quotient category,
//! - [`duality`]: the theorem-level checks (Gorenstein detection, balanced
//!   dualizing modules, local duality, Serre duality, condition chi,
//!   vanishing ranges), each reported as a dimension-table identity.
//!
//! All computations are windowed: every emitted table carries the
//! subwindow on which its entries are certified exact, and lookups outside
//! it fail loudly instead of returning zero.

pub mod algebra;
pub mod bigraded;
pub mod dgmodule;
pub mod duality;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod parse;
pub mod resolve;

pub use error::{EngineError, Result};
