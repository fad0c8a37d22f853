use super::curve::{Chart, CurvePoint, RationalCurve};
use super::subspace::LinearSubspace;
use crate::exactmath::{Mat, PolyMat, RatMat, UniPoly};

/// Symbolic `(k+1) x (r+1)` jet matrix in the given chart: row `j` holds the
/// `j`-th derivatives of the dehomogenized forms.
pub fn symbolic_jet_matrix(c: &RationalCurve, k: usize, chart: Chart) -> PolyMat {
    let polys = c.chart_polys(chart);
    let rows: Vec<Vec<UniPoly>> = (0..=k)
        .map(|j| polys.iter().map(|p| p.nth_derivative(j)).collect())
        .collect();
    Mat::from_rows(polys.len(), rows).expect("uniform width")
}

/// Jet matrix evaluated at `p`, in the chart the point is given in.
pub fn jet_matrix(c: &RationalCurve, k: usize, p: &CurvePoint) -> RatMat {
    symbolic_jet_matrix(c, k, p.chart).eval(&p.parameter)
}

/// Dimension of the `k`-th osculating space at `p`.
pub fn osc_dim(c: &RationalCurve, k: usize, p: &CurvePoint) -> usize {
    jet_matrix(c, k, p).rank() - 1
}

/// The `k`-th osculating space at `p` as a subspace of `P^r`.
pub fn osc_subspace(c: &RationalCurve, k: usize, p: &CurvePoint) -> LinearSubspace {
    LinearSubspace::span(c.ambient_dim(), &jet_matrix(c, k, p)).expect("jet rows have r+1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, Rat};

    fn curve(polys: &[&[i64]]) -> RationalCurve {
        let p: Vec<UniPoly> = polys.iter().map(|c| UniPoly::from_ints(c)).collect();
        RationalCurve::from_affine(&p, "c").unwrap()
    }

    fn rows(m: &RatMat) -> Vec<Vec<Rat>> {
        m.to_rows()
    }

    fn ints(r: &[&[i64]]) -> Vec<Vec<Rat>> {
        r.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn conic_jets_at_zero() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 1]]);
        let m = jet_matrix(&c, 2, &CurvePoint::affine(int(0)));
        assert_eq!(rows(&m), ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
    }

    #[test]
    fn flexed_quartic_jets() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        let o = CurvePoint::affine(int(0));
        assert_eq!(
            rows(&jet_matrix(&c, 2, &o)),
            ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0]])
        );
        assert_eq!(osc_dim(&c, 2, &o), 1);
        let want = LinearSubspace::from_vectors(
            3,
            ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
        )
        .unwrap();
        assert_eq!(osc_subspace(&c, 3, &o), want);
    }

    #[test]
    fn line_is_its_own_osculating_space() {
        let c = curve(&[&[1], &[0, 1]]);
        let m = symbolic_jet_matrix(&c, 3, Chart::Affine);
        assert_eq!(m.rows(), 4);
        assert_eq!(m.get(0, 1), &UniPoly::x());
        assert!(m.get(2, 0).is_zero() && m.get(3, 1).is_zero());
        assert_eq!(osc_dim(&c, 5, &CurvePoint::affine(int(7))), 1);
    }

    #[test]
    fn twisted_cubic_tangent() {
        let c = curve(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]]);
        let want =
            LinearSubspace::from_vectors(3, ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        assert_eq!(osc_subspace(&c, 1, &CurvePoint::affine(int(0))), want);
        let conic = curve(&[&[1], &[0, 1], &[0, 0, 1]]);
        assert_eq!(osc_subspace(&conic, 2, &CurvePoint::affine(int(5))), LinearSubspace::whole(2));
    }
}
