//! Factories for rational normal curves, monomial curves, rational normal
//! scrolls and projected curves, plus the named scenarios with their
//! machine-checkable expectations.
//!
//! Every randomized factory takes an explicit seed.

mod scenarios;

pub use scenarios::{
    scenario, scenario_ids, Check, CheckOutcome, Expectation, Projection, Provenance, Scenario,
    ScenarioParams,
};

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvekit::{
    contains_in_osculating, jet_matrix, osc_subspace, project, CurvePoint, LinearSubspace, RationalCurve,
};
use crate::error::{Error, Result};
use crate::exactmath::{int, BinForm, Rat};
use crate::scrollkit::{build_scroll, DecomposableScroll};

/// The rational normal curve of degree `d` in `P^d`.
pub fn rational_normal_curve(d: usize) -> Result<RationalCurve> {
    if d == 0 {
        return Err(Error::InvalidParameter("a rational normal curve needs degree >= 1".into()));
    }
    RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("rnc{d}"))
}

/// The curve `(t0^(degree-e) t1^e)` over the given exponents.
pub fn monomial_curve(exponents: &[usize], degree: usize) -> Result<RationalCurve> {
    let set: BTreeSet<usize> = exponents.iter().copied().collect();
    if set.len() != exponents.len() || set.len() < 2 {
        return Err(Error::InvalidParameter(format!("need at least two distinct exponents, got {exponents:?}")));
    }
    if !set.contains(&0) || !set.contains(&degree) || set.iter().any(|&e| e > degree) {
        return Err(Error::InvalidParameter(format!(
            "exponents {exponents:?} must lie in [0, {degree}] and include both ends"
        )));
    }
    let label = format!("mono({})", set.iter().join(","));
    RationalCurve::new(set.iter().map(|&e| BinForm::monomial(degree, e)).collect(), label)
}

/// The scroll generated by rational normal curves of the given degrees.
pub fn rational_normal_scroll(rs: &[usize]) -> Result<DecomposableScroll> {
    let curves = rs.iter().map(|&r| rational_normal_curve(r)).collect::<Result<Vec<_>>>()?;
    let label = format!("S({})", rs.iter().join(","));
    Ok(build_scroll(curves)?.with_label(label))
}

/// Where a projection center is drawn relative to the `m`-th osculating
/// spaces of the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterMode {
    /// A point on no `m`-th osculating space.
    Off,
    /// A point of `Osc^m` at a rational parameter, off `Osc^(m-1)` there.
    On,
}

pub(crate) const CENTER_RETRIES: usize = 50;

fn random_point(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rat> {
    (0..=r).map(|_| int(rng.gen_range(-20..=20))).collect()
}

/// Draws a point center for projecting `gamma` and returns it with the
/// projected curve, retrying up to 50 times until the projection is an
/// embedding and the mode holds.
pub fn sample_point_center(
    gamma: &RationalCurve,
    m: usize,
    mode: CenterMode,
    rng: &mut ChaCha8Rng,
) -> Result<(LinearSubspace, RationalCurve)> {
    let r = gamma.ambient_dim();
    for _ in 0..CENTER_RETRIES {
        let q = match mode {
            CenterMode::Off => random_point(rng, r),
            CenterMode::On => {
                let t = CurvePoint::affine(int(rng.gen_range(-4..=4)));
                let rows = jet_matrix(gamma, m, &t);
                let weights: Vec<Rat> = (0..=m).map(|_| int(rng.gen_range(-9..=9))).collect();
                let q = rows.left_apply(&weights);
                if q.iter().all(num_traits::Zero::is_zero)
                    || osc_subspace(gamma, m - 1, &t).contains_point(&q)?
                {
                    continue;
                }
                q
            }
        };
        let Ok(center) = LinearSubspace::point(q) else { continue };
        if mode == CenterMode::Off && !contains_in_osculating(gamma, m, &center)?.is_empty() {
            continue;
        }
        match project(gamma, &center) {
            Ok(c) => return Ok((center, c)),
            Err(Error::IllPosed(_) | Error::NotEmbedded(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!("no usable center for {} after {CENTER_RETRIES} draws", gamma.label())))
}

/// Draws a center of dimension `dim` (a random span of integer points)
/// whose projection embeds `gamma` without `m`-th flexes.
pub fn sample_uninflected_center(
    gamma: &RationalCurve,
    dim: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(LinearSubspace, RationalCurve)> {
    let r = gamma.ambient_dim();
    for _ in 0..CENTER_RETRIES {
        let rows = (0..=dim).map(|_| random_point(rng, r)).collect();
        let center = LinearSubspace::from_vectors(r, rows)?;
        if center.rank() != dim + 1 {
            continue;
        }
        match project(gamma, &center) {
            Ok(c) if crate::curvekit::inflectional_locus(&c, m).is_empty() => return Ok((center, c)),
            Ok(_) | Err(Error::IllPosed(_) | Error::NotEmbedded(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling(format!("no usable center for {} after {CENTER_RETRIES} draws", gamma.label())))
}

/// Seeded generator used by every randomized factory.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::inflectional_locus;

    #[test]
    fn normal_curves_are_uninflected() {
        for d in 1..=5 {
            let c = rational_normal_curve(d).unwrap();
            for k in 1..=d {
                assert!(inflectional_locus(&c, k).is_empty(), "d={d} k={k}");
            }
        }
        assert!(rational_normal_curve(0).is_err());
    }

    #[test]
    fn monomial_curves() {
        let c = monomial_curve(&[0, 1, 3, 4], 4).unwrap();
        let loc = inflectional_locus(&c, 2);
        assert_eq!(loc.rational_points, vec![CurvePoint::affine(int(0)), CurvePoint::infinity()]);
        assert_eq!(monomial_curve(&[0, 1, 2, 3], 3).unwrap().forms(), rational_normal_curve(3).unwrap().forms());
        assert!(monomial_curve(&[1, 3], 3).is_err());
        assert!(monomial_curve(&[0, 0, 3], 3).is_err());
        // a cusp at t = 0
        assert!(matches!(monomial_curve(&[0, 2, 3], 3), Err(Error::NotEmbedded(_))));
    }

    #[test]
    fn scroll_factory() {
        let s = rational_normal_scroll(&[1, 2]).unwrap();
        assert_eq!(s.ambient_dim(), 4);
        assert_eq!(s.label(), "S(1,2)");
    }

    #[test]
    fn centers_by_mode() {
        let gamma = rational_normal_curve(4).unwrap();
        let mut rng = seeded_rng(3);
        let (off, c) = sample_point_center(&gamma, 2, CenterMode::Off, &mut rng).unwrap();
        assert!(contains_in_osculating(&gamma, 2, &off).unwrap().is_empty());
        assert!(inflectional_locus(&c, 2).is_empty());
        let (on, c) = sample_point_center(&gamma, 2, CenterMode::On, &mut rng).unwrap();
        let eps = contains_in_osculating(&gamma, 2, &on).unwrap().distinct_count;
        assert!((1..=2).contains(&eps));
        assert_eq!(inflectional_locus(&c, 2).distinct_count, eps);
    }
}
