//! Components of the second discriminant locus attached to the flex
//! components of a scroll: hyperplanes containing the second osculating
//! space at some flex.
//!
//! Components are never materialized in the dual space; only their
//! dimension, degree, span and scrollness are computed, and the degree is
//! cross-checked against a count of tangent hyperplanes in random pencils.

mod component;
mod oracle;

pub use component::{
    classify_scrollness, discr_component, has_curve_flexes, DiscriminantComponent, ScrollClassification,
    Scrollness,
};
pub use oracle::{degree_via_oracle, ramification_count, CurveOracle, OracleDegree, PencilAxis, Ramification};
