//! Exact osculating spaces, inflectional loci and second-discriminant
//! invariants of rational parametric curves and the decomposable scrolls
//! they generate.
//!
//! Everything is computed over the rationals with exact arithmetic. Loci
//! that live over the complex numbers are described by squarefree binary
//! forms together with their rational roots, so no floating point appears
//! anywhere in the crate.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: rationals, univariate polynomials, binary forms and
//!   matrices over both, with fraction-free elimination.
//! - [`curvekit`]: rational curves, jet matrices, osculating subspaces,
//!   inflectional loci, projections and embedding checks.
//! - [`scrollkit`]: decomposable scrolls, block jet matrices, flex
//!   classification and the property verifier.
//! - [`discriminant`]: invariants of the discriminant components attached
//!   to flex components, with a ramification-count oracle.
//! - [`constructions`]: factories for the standard curves and scrolls and
//!   the named scenarios with their expectations.
//! - [`records`]: the exact JSON file format for curves, scrolls and
//!   subspaces.

pub mod constructions;
pub mod curvekit;
pub mod discriminant;
pub mod error;
pub mod exactmath;
pub mod records;
pub mod scrollkit;

pub use error::{Error, Result};
