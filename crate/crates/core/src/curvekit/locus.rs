use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::curve::{Chart, CurvePoint, RationalCurve};
use super::jets::symbolic_jet_matrix;
use super::subspace::LinearSubspace;
use crate::error::{Error, Result};
use crate::exactmath::{
    generic_rank, minors_gcd, rational_roots, squarefree_part, BinForm, Mat, PolyMat, UniPoly,
};

/// A subset of the parameter line `P^1`: everything, or the roots of a
/// squarefree affine polynomial plus possibly `(0:1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseLocus {
    Whole,
    Finite {
        /// Monic squarefree; the constant 1 when there are no affine points.
        affine: UniPoly,
        infinity: bool,
    },
}

impl BaseLocus {
    pub fn empty() -> Self {
        BaseLocus::Finite { affine: UniPoly::one(), infinity: false }
    }

    /// From any nonzero affine polynomial (reduced to its squarefree part).
    pub fn finite(affine: &UniPoly, infinity: bool) -> Self {
        let affine = squarefree_part(affine).unwrap_or_else(|_| UniPoly::one());
        BaseLocus::Finite { affine, infinity }
    }

    pub fn point(p: &CurvePoint) -> Self {
        let p = p.canonical();
        if p.is_infinity() {
            BaseLocus::Finite { affine: UniPoly::one(), infinity: true }
        } else {
            BaseLocus::Finite { affine: UniPoly::linear_root(&p.parameter), infinity: false }
        }
    }

    pub fn is_whole(&self) -> bool {
        matches!(self, BaseLocus::Whole)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, BaseLocus::Finite { affine, infinity: false } if affine.is_unit())
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match self {
            BaseLocus::Whole => true,
            BaseLocus::Finite { affine, infinity } => {
                let p = p.canonical();
                if p.is_infinity() {
                    *infinity
                } else {
                    affine.eval(&p.parameter).is_zero()
                }
            }
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        match (self, other) {
            (BaseLocus::Finite { affine: a, infinity: i }, BaseLocus::Finite { affine: b, infinity: j }) => {
                let lcm = (a * b).exact_div(&a.gcd(b));
                BaseLocus::Finite { affine: lcm.monic(), infinity: *i || *j }
            }
            _ => BaseLocus::Whole,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        match (self, other) {
            (BaseLocus::Whole, x) | (x, BaseLocus::Whole) => x.clone(),
            (BaseLocus::Finite { affine: a, infinity: i }, BaseLocus::Finite { affine: b, infinity: j }) => {
                BaseLocus::Finite { affine: a.gcd(b), infinity: *i && *j }
            }
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        &self.intersection(other) == self
    }

    /// Number of points over the complex numbers; `None` for the whole line.
    pub fn distinct_count(&self) -> Option<usize> {
        match self {
            BaseLocus::Whole => None,
            BaseLocus::Finite { affine, infinity } => {
                Some(affine.degree().unwrap_or(0) + usize::from(*infinity))
            }
        }
    }

    /// Squarefree binary form vanishing exactly on the locus; `None` for the
    /// whole line.
    pub fn defining_form(&self) -> Option<BinForm> {
        match self {
            BaseLocus::Whole => None,
            BaseLocus::Finite { affine, infinity } => {
                let m = affine.degree().unwrap_or(0);
                Some(BinForm::from_affine(affine, m + usize::from(*infinity)).expect("degree fits"))
            }
        }
    }

    /// Rational points in canonical form, affine ones ascending, then
    /// infinity.
    pub fn rational_points(&self) -> Vec<CurvePoint> {
        match self {
            BaseLocus::Whole => Vec::new(),
            BaseLocus::Finite { affine, infinity } => {
                let mut pts: Vec<CurvePoint> = rational_roots(affine)
                    .unwrap_or_default()
                    .into_iter()
                    .map(CurvePoint::affine)
                    .collect();
                if *infinity {
                    pts.push(CurvePoint::infinity());
                }
                pts
            }
        }
    }

    /// True when every point is rational.
    pub fn all_rational(&self) -> bool {
        match self {
            BaseLocus::Whole => false,
            BaseLocus::Finite { affine, .. } => {
                rational_roots(affine).unwrap_or_default().len() == affine.degree().unwrap_or(0)
            }
        }
    }

    /// Locus from the minor gcds of the two charts: affine roots, plus
    /// `(0:1)` when the chart-at-infinity gcd vanishes at `s = 0`.
    pub(crate) fn from_chart_gcds(affine: &UniPoly, at_infinity: &UniPoly) -> Self {
        if affine.is_zero() || at_infinity.is_zero() {
            return BaseLocus::Whole;
        }
        BaseLocus::finite(affine, at_infinity.eval(&Zero::zero()).is_zero())
    }
}

/// Shape of a parameter locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocusMode {
    Empty,
    Finite,
    WholeCurve,
}

/// A parameter locus with its certificates: the inflectional locus of a
/// given order, or the parameters whose osculating space contains a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexLocus {
    /// Jet order `k` of the inflectional locus, or `m` for a membership set.
    pub order: usize,
    pub mode: LocusMode,
    /// Squarefree form vanishing exactly on the locus when it is finite
    /// and nonempty.
    pub defining_form: Option<BinForm>,
    /// Number of distinct complex points (0 for the whole curve).
    pub distinct_count: usize,
    pub rational_points: Vec<CurvePoint>,
    /// Minor gcd in the affine chart before squarefree reduction, kept for
    /// inspection only.
    pub affine_gcd: UniPoly,
    /// Minor gcd in the chart at infinity before squarefree reduction.
    pub infinity_gcd: UniPoly,
    set: BaseLocus,
}

impl FlexLocus {
    fn from_gcds(order: usize, affine_gcd: UniPoly, infinity_gcd: UniPoly) -> Self {
        let set = BaseLocus::from_chart_gcds(&affine_gcd, &infinity_gcd);
        Self::from_set(order, set, affine_gcd, infinity_gcd)
    }

    fn from_set(order: usize, set: BaseLocus, affine_gcd: UniPoly, infinity_gcd: UniPoly) -> Self {
        let mode = match &set {
            BaseLocus::Whole => LocusMode::WholeCurve,
            s if s.is_empty() => LocusMode::Empty,
            _ => LocusMode::Finite,
        };
        FlexLocus {
            order,
            mode,
            defining_form: if mode == LocusMode::Finite { set.defining_form() } else { None },
            distinct_count: set.distinct_count().unwrap_or(0),
            rational_points: set.rational_points(),
            affine_gcd,
            infinity_gcd,
            set,
        }
    }

    fn whole(order: usize) -> Self {
        Self::from_set(order, BaseLocus::Whole, UniPoly::zero(), UniPoly::zero())
    }

    /// The locus as a set, for exact set-level comparisons.
    pub fn as_set(&self) -> &BaseLocus {
        &self.set
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        self.set.contains(p)
    }

    pub fn is_empty(&self) -> bool {
        self.mode == LocusMode::Empty
    }
}

/// Inflectional locus of order `k`: the parameters where the `k`-jet has
/// rank below `k + 1`. The whole curve when `k > r`.
pub fn inflectional_locus(c: &RationalCurve, k: usize) -> FlexLocus {
    if k > c.ambient_dim() {
        return FlexLocus::whole(k);
    }
    let gcd_in = |chart| minors_gcd(&symbolic_jet_matrix(c, k, chart), k + 1);
    FlexLocus::from_gcds(k, gcd_in(Chart::Affine), gcd_in(Chart::Infinity))
}

fn augmented(c: &RationalCurve, m: usize, q: &[crate::exactmath::Rat], chart: Chart) -> PolyMat {
    let jets = symbolic_jet_matrix(c, m, chart);
    let qrow = Mat::from_rows(q.len(), vec![q.iter().map(|v| UniPoly::constant(v.clone())).collect()])
        .expect("single row");
    jets.vstack(&qrow).expect("same width")
}

/// Parameters `t` with `q` in the `m`-th osculating space at `t`: the
/// common roots of the `(m+2)`-minors of the jet matrix with `q` appended
/// as an extra row, in both charts.
///
/// At parameters where the `m`-jet itself drops rank these minors vanish
/// regardless of `q`, so such points are always included.
pub fn contains_in_osculating(c: &RationalCurve, m: usize, q: &LinearSubspace) -> Result<FlexLocus> {
    if !q.is_point() || q.ambient_dim() != c.ambient_dim() {
        return Err(Error::IllPosed(format!(
            "expected a point of P^{}, got a {}-dimensional subspace of P^{}",
            c.ambient_dim(),
            q.dim(),
            q.ambient_dim()
        )));
    }
    let g = generic_rank(&symbolic_jet_matrix(c, m, Chart::Affine));
    if g.rank < m + 1 {
        return Err(Error::IllPosed(format!(
            "{}: generic rank of the {m}-jet is {}, below {}",
            c.label(),
            g.rank,
            m + 1
        )));
    }
    if m + 2 > c.ambient_dim() + 1 {
        return Ok(FlexLocus::whole(m));
    }
    let q = q.basis().row(0).to_vec();
    let gcd_in = |chart| minors_gcd(&augmented(c, m, &q, chart), m + 2);
    Ok(FlexLocus::from_gcds(m, gcd_in(Chart::Affine), gcd_in(Chart::Infinity)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::{jet_matrix, osc_dim};
    use crate::exactmath::{int, Rat};

    fn curve(polys: &[&[i64]]) -> RationalCurve {
        let p: Vec<UniPoly> = polys.iter().map(|c| UniPoly::from_ints(c)).collect();
        RationalCurve::from_affine(&p, "c").unwrap()
    }

    #[test]
    fn flexed_quartic_has_two_flexes() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        let f = inflectional_locus(&c, 2);
        assert_eq!(f.mode, LocusMode::Finite);
        assert_eq!(f.distinct_count, 2);
        assert_eq!(f.rational_points, vec![CurvePoint::affine(int(0)), CurvePoint::infinity()]);
        assert_eq!(f.affine_gcd, UniPoly::x());
        assert_eq!(f.infinity_gcd, UniPoly::x());
        let form = f.defining_form.unwrap();
        assert_eq!(form.degree(), 2);
    }

    #[test]
    fn normal_curves_are_uninflected() {
        let cubic = curve(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]]);
        for k in 1..=3 {
            assert!(inflectional_locus(&cubic, k).is_empty());
        }
        assert_eq!(inflectional_locus(&cubic, 4).mode, LocusMode::WholeCurve);
    }

    #[test]
    fn base_locus_algebra() {
        let a = BaseLocus::finite(&UniPoly::from_ints(&[0, -1, 1]), false);
        let b = BaseLocus::finite(&UniPoly::from_ints(&[0, 1]), true);
        assert_eq!(a.union(&b).distinct_count(), Some(3));
        assert_eq!(a.intersection(&b), BaseLocus::finite(&UniPoly::x(), false));
        assert!(BaseLocus::point(&CurvePoint::affine(int(1))).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(BaseLocus::empty().is_subset(&a));
        assert!(a.is_subset(&BaseLocus::Whole));
        assert!(b.contains(&CurvePoint::infinity()));
        let form = b.defining_form().unwrap();
        assert_eq!(form.degree(), 2);
        assert!(form.vanishes_at_infinity());
    }

    #[test]
    fn curve_points_lie_in_their_osculating_spaces() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        let p = CurvePoint::affine(int(3));
        let q = LinearSubspace::point(c.point(&p)).unwrap();
        for m in 0..=2 {
            assert!(contains_in_osculating(&c, m, &q).unwrap().contains(&p));
        }
    }

    #[test]
    fn membership_matches_pointwise_rank() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        // a point of the osculating plane at t = 1
        let jets = jet_matrix(&c, 2, &CurvePoint::affine(int(1)));
        let q: Vec<Rat> = jets.left_apply(&[int(2), int(-3), int(5)]);
        let locus = contains_in_osculating(&c, 2, &LinearSubspace::point(q.clone()).unwrap()).unwrap();
        assert!(locus.contains(&CurvePoint::affine(int(1))));
        assert!((1..=2).contains(&locus.distinct_count));
        for t in -5..=5 {
            let p = CurvePoint::affine(int(t));
            let aug = jet_matrix(&c, 2, &p)
                .vstack(&crate::exactmath::RatMat::from_rows(5, vec![q.clone()]).unwrap())
                .unwrap();
            assert_eq!(aug.rank() < 4, locus.contains(&p), "t = {t}");
            assert_eq!(osc_dim(&c, 2, &p), 2);
        }
    }

    #[test]
    fn membership_rejects_degenerate_requests() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 1]]);
        let q = LinearSubspace::point(vec![int(1), int(0), int(0)]).unwrap();
        assert!(contains_in_osculating(&c, 3, &q).is_err());
        let line = LinearSubspace::from_vectors(2, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]).unwrap();
        assert!(contains_in_osculating(&c, 1, &line).is_err());
    }
}
