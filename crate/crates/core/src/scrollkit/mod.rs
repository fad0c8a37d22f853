//! Decomposable scrolls over the projective line: assembly from
//! generating curves, block jet matrices, osculating dimensions at
//! arbitrary scroll points, flex-locus classification and a verifier for
//! the structural properties relating scroll flexes to curve flexes.
//!
//! Curve indices are zero-based in the API and one-based in every
//! human-readable message.
//!
//! Two notions of "inflected" appear. [`is_flex`] compares with the
//! generic osculating dimension of the scroll. The fiber and verifier
//! functions use the expected dimension instead: a scroll point is
//! `k`-inflected when its osculating space has dimension below `n*k`, and
//! a curve point when its `k`-th osculating space has dimension below `k`
//! (so every point is inflected when `k` exceeds the curve's ambient
//! dimension). For `k = 2` the two notions agree unless every generating
//! curve is a line.

mod flexes;
mod formula;
mod jets;
mod scroll;
mod verify;

pub use flexes::{
    fiber_flex_profile, flex_components, flex_strata, ComponentKind, FiberProfile, FlexComponent,
    FlexReport, SymbolicFlexes,
};
pub use formula::rns_osc_dim_formula;
pub use jets::{
    curve_inflected, generic_osc_dim, in_expected_locus, is_flex, scroll_jet_matrix,
    scroll_jet_matrix_with_pivot, scroll_osc_dim, scroll_osc_subspace, stratum_locus,
    symbolic_scroll_jet_matrix, GenericOsc, Threshold,
};
pub use scroll::{build_scroll, DecomposableScroll, ScrollPoint};
pub use verify::{
    verify_paper_properties, StatementReport, Verdict, VerificationReport, VerifyOptions,
};
