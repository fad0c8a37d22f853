use num_traits::{One, Zero};

use super::curve::RationalCurve;
use super::subspace::LinearSubspace;
use crate::error::{Error, Result};
use crate::exactmath::{BinForm, Rat, RatMat, UniPoly};

/// Matrix of the linear projection away from `center`, acting on row
/// vectors: `(r+1) x (r+1-c)` where `c` is the rank of the center.
///
/// A vector is first reduced by the echelon basis of the center so that
/// its pivot coordinates vanish; the remaining coordinates are kept. The
/// kernel is exactly the center.
pub fn projection_map(center: &LinearSubspace) -> RatMat {
    let n = center.ambient_dim() + 1;
    let (basis, pivots) = center.basis().rref();
    let keep: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut m = RatMat::zeros(n, keep.len());
    for (col, &j) in keep.iter().enumerate() {
        m.set(j, col, Rat::one());
        for (row, &p) in pivots.iter().enumerate() {
            let v = -basis.get(row, j).clone();
            if !v.is_zero() {
                m.set(p, col, v);
            }
        }
    }
    m
}

/// Projects `c` from `center` to `P^(r - dim center - 1)`.
///
/// The projected parametrization must again be an embedding; a center
/// meeting the curve shows up as a common factor of the projected forms.
pub fn project(c: &RationalCurve, center: &LinearSubspace) -> Result<RationalCurve> {
    let r = c.ambient_dim();
    if center.ambient_dim() != r {
        return Err(Error::IllPosed(format!(
            "center lives in P^{} but the curve in P^{r}",
            center.ambient_dim()
        )));
    }
    if center.rank() + 1 > r {
        return Err(Error::IllPosed(format!(
            "center of dimension {} is too large to project a curve in P^{r}",
            center.dim()
        )));
    }
    let map = projection_map(center);
    let d = c.degree();
    let forms = c.forms();
    let projected: Vec<BinForm> = (0..map.cols())
        .map(|col| {
            let coeffs = (0..=d)
                .map(|j| {
                    (0..=r).fold(Rat::zero(), |acc, i| acc + map.get(i, col) * &forms[i].coeffs()[j])
                })
                .collect();
            BinForm::new(d, coeffs).expect("degree preserved")
        })
        .collect();
    let common = projected.iter().fold(UniPoly::zero(), |g, f| g.gcd(&f.affine()));
    if !common.is_unit() || projected.iter().all(BinForm::vanishes_at_infinity) {
        return Err(Error::IllPosed(format!("center meets the curve {}", c.label())));
    }
    let label = format!("{}/proj", c.label());
    match RationalCurve::parametrization(projected, &label) {
        Ok(p) => {
            let report = super::check_embedding(&p);
            if report.passed() {
                Ok(p)
            } else {
                Err(Error::NotEmbedded(format!("{label}: {}", report.summary())))
            }
        }
        Err(Error::InvalidCurve(msg)) => Err(Error::NotEmbedded(msg)),
        Err(e) => Err(e),
    }
}
