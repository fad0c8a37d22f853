//! Exact arithmetic substrate: rationals, univariate polynomials, binary
//! forms and matrices over both.
//!
//! Ranks are computed by fraction-free elimination over the integers after
//! clearing row denominators. Polynomial matrices are handled by
//! evaluation at enough integer points to certify the answer, so every
//! "generic" statement made here is a theorem about the polynomial matrix
//! and not a probabilistic guess.

mod binform;
mod matrix;
mod poly;
mod quotient;
mod rat;

pub use binform::BinForm;
pub use matrix::{
    det_poly, generic_rank, minors_gcd, rank_drop_locus, rank_exact, DropLocus, GenericRank, Mat, PolyMat,
    RatMat, Witness,
};
pub(crate) use poly::sylvester;
pub use poly::{rational_roots, resultant, squarefree_part, UniPoly};
pub use quotient::{gcd_degree_modulo, rank_modulo, BiPoly};
pub use rat::{format_rat, int, parse_rat, ratio, Rat};
