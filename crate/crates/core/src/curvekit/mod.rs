//! Rational parametric curves in projective space: jet matrices,
//! osculating subspaces, inflectional loci, linear projections and
//! osculating-developable membership.
//!
//! Every symbolic computation is done in the two affine charts of the
//! parameter line and merged. The affine chart uses `t = t1/t0`; the chart
//! at infinity uses `s = t0/t1` and only contributes the point `s = 0`.

mod curve;
mod embedding;
mod jets;
mod locus;
mod projection;
mod subspace;

pub use curve::{Chart, CurvePoint, RationalCurve};
pub use embedding::{check_embedding, EmbeddingReport, NODE_DEGREE_LIMIT};
pub use jets::{jet_matrix, osc_dim, osc_subspace, symbolic_jet_matrix};
pub use locus::{contains_in_osculating, inflectional_locus, BaseLocus, FlexLocus, LocusMode};
pub use projection::{project, projection_map};
pub use subspace::LinearSubspace;
