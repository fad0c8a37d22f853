use std::collections::BTreeSet;

use num_traits::Zero;

use super::scroll::{DecomposableScroll, ScrollPoint};
use crate::curvekit::{
    osc_dim, symbolic_jet_matrix, BaseLocus, Chart, CurvePoint, LinearSubspace, RationalCurve,
};
use crate::error::{Error, Result};
use crate::exactmath::{generic_rank, rank_drop_locus, DropLocus, GenericRank, PolyMat, Rat, RatMat, UniPoly};

/// Which dimension counts as "too small" for a scroll point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// Below the generic osculating dimension of the scroll.
    Generic,
    /// Below `n*k`.
    Expected,
}

impl Threshold {
    /// Smallest rank of the jet matrix that does not count as a drop.
    fn target_rank(self, sc: &DecomposableScroll, k: usize) -> usize {
        match self {
            Threshold::Generic => generic_osc_dim(sc, k).dim + 1,
            Threshold::Expected => sc.n() * k + 1,
        }
    }
}

/// Symbolic jet matrix of the scroll at fiber coordinates `fiber`, using
/// coordinate `pivot` as the affine fiber chart.
///
/// The top `k+1` rows are `sum_i (lambda_i / lambda_pivot) M^i_k`, placed
/// block by block; below them, each curve `i` contributes its full
/// `(k-1)`-jet `M^i_{k-1}` in its own column block, except the pivot whose
/// block is zero. Rows: `(k+1) + n*k`.
pub fn symbolic_scroll_jet_matrix(
    sc: &DecomposableScroll,
    k: usize,
    fiber: &[Rat],
    pivot: usize,
    chart: Chart,
) -> Result<PolyMat> {
    let n = sc.n();
    if fiber.len() != n {
        return Err(Error::InvalidPoint(format!(
            "fiber coordinates {} do not match {} curves",
            fiber.len(),
            n
        )));
    }
    if pivot >= n || fiber[pivot].is_zero() {
        return Err(Error::InvalidPoint(format!(
            "pivot {} is outside the support of the fiber point",
            pivot + 1
        )));
    }
    let cols = sc.ambient_dim() + 1;
    let rows = (k + 1) + n * k;
    let mut m = PolyMat::zeros(rows, cols);
    for (i, c) in sc.curves().iter().enumerate() {
        let jets = symbolic_jet_matrix(c, k, chart);
        let off = sc.offsets()[i];
        let w = &fiber[i] / &fiber[pivot];
        for j in 0..=k {
            for a in 0..jets.cols() {
                let entry = jets.get(j, a);
                if !w.is_zero() {
                    m.set(j, off + a, entry.scale(&w));
                }
                if i != pivot && j < k {
                    m.set(k + 1 + i * k + j, off + a, entry.clone());
                }
            }
        }
    }
    Ok(m)
}

/// Jet matrix at `x` with an explicit pivot, evaluated in the chart the
/// base point is given in.
pub fn scroll_jet_matrix_with_pivot(
    sc: &DecomposableScroll,
    k: usize,
    x: &ScrollPoint,
    pivot: usize,
) -> Result<RatMat> {
    Ok(symbolic_scroll_jet_matrix(sc, k, &x.fiber, pivot, x.base.chart)?.eval(&x.base.parameter))
}

/// Jet matrix at `x`, pivoting on the largest index of the support.
pub fn scroll_jet_matrix(sc: &DecomposableScroll, k: usize, x: &ScrollPoint) -> Result<RatMat> {
    if x.fiber.len() != sc.n() {
        return Err(Error::InvalidPoint(format!(
            "fiber coordinates {} do not match {} curves",
            x.fiber.len(),
            sc.n()
        )));
    }
    scroll_jet_matrix_with_pivot(sc, k, x, x.pivot())
}

/// `dim Osc^k_x(S)`.
pub fn scroll_osc_dim(sc: &DecomposableScroll, k: usize, x: &ScrollPoint) -> Result<usize> {
    Ok(scroll_jet_matrix(sc, k, x)?.rank() - 1)
}

pub fn scroll_osc_subspace(
    sc: &DecomposableScroll,
    k: usize,
    x: &ScrollPoint,
) -> Result<LinearSubspace> {
    LinearSubspace::span(sc.ambient_dim(), &scroll_jet_matrix(sc, k, x)?)
}

/// Generic osculating dimension with its rank certificate.
#[derive(Clone, Debug)]
pub struct GenericOsc {
    pub dim: usize,
    pub certificate: GenericRank,
}

/// Generic `dim Osc^k(S)`.
///
/// The diagonal torus acting on the fiber coordinates preserves the scroll
/// and moves `(t; lambda)` to `(t; mu)` whenever both have the same
/// support, so the rank only depends on the base parameter and the
/// support. The full support is the open stratum; the generic rank over
/// the base line, at fiber `(1, ..., 1)`, is therefore the generic rank of
/// the scroll.
pub fn generic_osc_dim(sc: &DecomposableScroll, k: usize) -> GenericOsc {
    let ones = vec![Rat::from_integer(1.into()); sc.n()];
    let m = symbolic_scroll_jet_matrix(sc, k, &ones, sc.n() - 1, Chart::Affine)
        .expect("valid fiber");
    let certificate = generic_rank(&m);
    GenericOsc { dim: certificate.rank - 1, certificate }
}

/// Whether `x` is a `k`-th flex: its osculating space is smaller than the
/// generic one.
pub fn is_flex(sc: &DecomposableScroll, k: usize, x: &ScrollPoint) -> Result<bool> {
    Ok(scroll_osc_dim(sc, k, x)? < generic_osc_dim(sc, k).dim)
}

/// Whether `x` has `dim Osc^k_x(S) < n*k`.
pub fn in_expected_locus(sc: &DecomposableScroll, k: usize, x: &ScrollPoint) -> Result<bool> {
    Ok(scroll_osc_dim(sc, k, x)? < sc.n() * k)
}

/// Whether `p` is `k`-inflected on `c` in the expected sense: `k >= 1`
/// and either `k` exceeds the ambient dimension or `dim Osc^k_p < k`.
pub fn curve_inflected(c: &RationalCurve, k: usize, p: &CurvePoint) -> bool {
    k >= 1 && (k > c.ambient_dim() || osc_dim(c, k, p) < k)
}

fn indicator(n: usize, support: &BTreeSet<usize>) -> Vec<Rat> {
    (0..n)
        .map(|i| Rat::from_integer(u8::from(support.contains(&i)).into()))
        .collect()
}

/// Base parameters over which the points with fiber support `support` drop
/// below `threshold`. Support indices are zero-based.
pub fn stratum_locus(
    sc: &DecomposableScroll,
    k: usize,
    support: &BTreeSet<usize>,
    threshold: Threshold,
) -> Result<BaseLocus> {
    let Some(&pivot) = support.iter().next_back() else {
        return Err(Error::InvalidPoint("empty fiber support".into()));
    };
    if pivot >= sc.n() {
        return Err(Error::InvalidPoint(format!("index {} exceeds {} curves", pivot + 1, sc.n())));
    }
    let target = threshold.target_rank(sc, k);
    let fiber = indicator(sc.n(), support);
    let affine = symbolic_scroll_jet_matrix(sc, k, &fiber, pivot, Chart::Affine)?;
    Ok(match rank_drop_locus(&affine, target) {
        DropLocus::Everywhere => BaseLocus::Whole,
        DropLocus::Roots(g) => {
            let at_inf = symbolic_scroll_jet_matrix(sc, k, &fiber, pivot, Chart::Infinity)?
                .eval(&Rat::zero())
                .rank()
                < target;
            if g.is_unit() {
                BaseLocus::finite(&UniPoly::one(), at_inf)
            } else {
                BaseLocus::finite(&g, at_inf)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, BinForm};
    use crate::scrollkit::build_scroll;

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    fn curve(polys: &[&[i64]]) -> RationalCurve {
        let p: Vec<UniPoly> = polys.iter().map(|c| UniPoly::from_ints(c)).collect();
        RationalCurve::from_affine(&p, "c").unwrap()
    }

    fn sp(text: &str) -> ScrollPoint {
        ScrollPoint::parse(text).unwrap()
    }

    #[test]
    fn cubic_scroll_dimensions() {
        let s = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        assert_eq!(generic_osc_dim(&s, 1).dim, 2);
        assert_eq!(generic_osc_dim(&s, 2).dim, 4);
        assert_eq!(scroll_osc_dim(&s, 2, &sp("t=0;1,0")).unwrap(), 3);
        assert_eq!(scroll_osc_dim(&s, 2, &sp("t=0;0,1")).unwrap(), 4);
        assert_eq!(scroll_osc_dim(&s, 2, &sp("t=3;1,7")).unwrap(), 4);
        assert!(is_flex(&s, 2, &sp("inf;1,0")).unwrap());
        let strat = stratum_locus(&s, 2, &BTreeSet::from([0]), Threshold::Generic).unwrap();
        assert!(strat.is_whole());
        let strat = stratum_locus(&s, 2, &BTreeSet::from([0, 1]), Threshold::Generic).unwrap();
        assert!(strat.is_empty());
    }

    #[test]
    fn tangent_space_is_a_plane() {
        let s = build_scroll(vec![rnc(2), rnc(3)]).unwrap();
        for x in ["t=1;2,3", "t=0;1,0", "inf;0,1", "s=1/3;1,1"] {
            assert_eq!(scroll_osc_dim(&s, 1, &sp(x)).unwrap(), 2, "{x}");
        }
    }

    #[test]
    fn osculating_space_contains_the_point() {
        let s = build_scroll(vec![rnc(2), curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]])])
            .unwrap();
        for x in ["t=0;1,1", "t=2;3,-1", "inf;1,4"] {
            let x = sp(x);
            let osc = scroll_osc_subspace(&s, 2, &x).unwrap();
            assert!(osc.contains_point(&s.image(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn pivot_choice_does_not_change_rank() {
        let s = build_scroll(vec![rnc(1), rnc(2), rnc(3)]).unwrap();
        let x = sp("t=0;2,1,5");
        for k in 1..=3 {
            let ranks: Vec<usize> = (0..3)
                .map(|p| scroll_jet_matrix_with_pivot(&s, k, &x, p).unwrap().rank())
                .collect();
            assert!(ranks.windows(2).all(|w| w[0] == w[1]), "k={k}: {ranks:?}");
        }
        let y = sp("t=0;1,0,1");
        assert!(scroll_jet_matrix_with_pivot(&s, 2, &y, 1).is_err());
    }

    #[test]
    fn curve_inflection_convention() {
        let conic = rnc(2);
        let p = CurvePoint::affine(int(0));
        assert!(!curve_inflected(&conic, 0, &p));
        assert!(!curve_inflected(&conic, 2, &p));
        assert!(curve_inflected(&conic, 3, &p));
        assert!(curve_inflected(&rnc(1), 2, &p));
    }
}
