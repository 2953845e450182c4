//! Small complete caps in PG(N,q) for even q.
//!
//! Plane arcs and their sum-points, the inductive product constructions that
//! lift suitable arcs to complete caps in every dimension `N >= 4`,
//! exhaustive cap/completeness verification, and the parity-check view of a
//! cap as a quasi-perfect code.

pub mod error;
pub mod gf2e;
pub mod projgeom;
pub mod coverage;
pub mod arcs;
pub mod caps;
pub mod codes;
pub mod io;
pub mod cli;

pub use error::{Error, Result};
pub use gf2e::{Elem, FieldCtx};
pub use projgeom::{Point, Space};
