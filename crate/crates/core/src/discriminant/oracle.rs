use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::component::require_segre;
use crate::curvekit::{projection_map, LinearSubspace, RationalCurve};
use crate::error::{Error, Result};
use crate::exactmath::{squarefree_part, BinForm, Rat, UniPoly};
use crate::scrollkit::{DecomposableScroll, FlexComponent};

/// Codimension-two subspace of a curve's ambient space, the axis of a
/// pencil of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilAxis {
    subspace: LinearSubspace,
}

impl PencilAxis {
    pub fn new(subspace: LinearSubspace) -> Result<Self> {
        if subspace.rank() + 1 != subspace.ambient_dim() {
            return Err(Error::InvalidSubspace(format!(
                "a pencil axis in P^{} has dimension {}, got {}",
                subspace.ambient_dim(),
                subspace.ambient_dim() as isize - 2,
                subspace.dim()
            )));
        }
        Ok(PencilAxis { subspace })
    }

    pub fn subspace(&self) -> &LinearSubspace {
        &self.subspace
    }
}

/// Ramification of the projection of a curve from a pencil axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramification {
    pub with_multiplicity: usize,
    pub distinct: usize,
    /// Squarefree affine part of the ramification form.
    pub affine: UniPoly,
    pub at_infinity: usize,
}

fn wronskian(f: &UniPoly, g: &UniPoly) -> UniPoly {
    &(f * &g.derivative()) - &(&f.derivative() * g)
}

/// Ramification points of `c -> P^1` given by the pencil of hyperplanes
/// through `axis`, from the Wronskian `f g' - f' g` of the two pulled-back
/// pencil forms in both charts.
///
/// The total with multiplicity must equal `2d - 2`; a different total is
/// reported as an error.
pub fn ramification_count(c: &RationalCurve, axis: &PencilAxis) -> Result<Ramification> {
    let r = c.ambient_dim();
    if axis.subspace.ambient_dim() != r {
        return Err(Error::IllPosed(format!(
            "axis lives in P^{} but the curve in P^{r}",
            axis.subspace.ambient_dim()
        )));
    }
    let d = c.degree();
    let map = projection_map(&axis.subspace);
    let pull = |col: usize| -> BinForm {
        let coeffs = (0..=d)
            .map(|j| {
                (0..=r).fold(Rat::from_integer(0.into()), |acc, i| {
                    acc + map.get(i, col) * &c.forms()[i].coeffs()[j]
                })
            })
            .collect();
        BinForm::new(d, coeffs).expect("degree preserved")
    };
    let (f, g) = (pull(0), pull(1));
    if f.affine().gcd(&g.affine()).degree() != Some(0)
        || (f.vanishes_at_infinity() && g.vanishes_at_infinity())
    {
        return Err(Error::IllPosed(format!("the axis meets the curve {}", c.label())));
    }
    let affine = wronskian(&f.affine(), &g.affine());
    let at_inf = wronskian(&f.at_infinity(), &g.at_infinity());
    if affine.is_zero() || at_inf.is_zero() {
        return Err(Error::IllPosed("degenerate pencil: the pulled-back forms are proportional".into()));
    }
    let deg = affine.degree().expect("nonzero");
    let mult_inf = at_inf.order_at_zero().expect("nonzero");
    let total = deg + mult_inf;
    if total + 2 != 2 * d {
        return Err(Error::Inconsistent(format!(
            "ramification of {} totals {total}, expected {}",
            c.label(),
            2 * d - 2
        )));
    }
    let sqf = squarefree_part(&affine)?;
    let distinct = sqf.degree().unwrap_or(0) + usize::from(mult_inf > 0);
    Ok(Ramification { with_multiplicity: total, distinct, affine: sqf, at_infinity: mult_inf })
}

fn random_axis(rng: &mut ChaCha8Rng, r: usize) -> Result<PencilAxis> {
    let rows = (0..r - 1)
        .map(|_| (0..=r).map(|_| Rat::from_integer(rng.gen_range(-20i64..=20).into())).collect())
        .collect();
    PencilAxis::new(LinearSubspace::from_vectors(r, rows)?)
}

/// Per-curve oracle outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveOracle {
    pub curve: usize,
    /// Distinct ramification counts, one per trial.
    pub counts: Vec<usize>,
    pub modal: usize,
    /// Two or more counts were equally frequent; the smaller was taken.
    pub tie: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDegree {
    pub degree: usize,
    pub curves: Vec<CurveOracle>,
}

const MAX_RESAMPLES: usize = 50;

/// Degree of the discriminant component of a Segre flex component,
/// counted as the number of hyperplanes through random pencil axes that
/// are tangent to the non-line curves.
///
/// The sum of the modal counts must agree with `2 * sum (d_i - 1)`; any
/// disagreement is returned as [`Error::Inconsistent`].
pub fn degree_via_oracle(
    sc: &DecomposableScroll,
    g: &FlexComponent,
    trials: usize,
    seed: u64,
) -> Result<OracleDegree> {
    require_segre(sc, g)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one oracle trial is needed".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut curves = Vec::new();
    let mut degree = 0;
    for i in (0..sc.n()).filter(|i| !g.indices.contains(i)) {
        let c = sc.curve(i);
        let mut counts = Vec::with_capacity(trials);
        for _ in 0..trials {
            let mut attempts = 0;
            let count = loop {
                attempts += 1;
                if attempts > MAX_RESAMPLES {
                    return Err(Error::Sampling(format!(
                        "no usable pencil axis for {} after {MAX_RESAMPLES} draws",
                        c.label()
                    )));
                }
                let Ok(axis) = random_axis(&mut rng, c.ambient_dim()) else { continue };
                match ramification_count(c, &axis) {
                    Ok(r) => break r.distinct,
                    Err(Error::IllPosed(_)) => continue,
                    Err(e) => return Err(e),
                }
            };
            counts.push(count);
        }
        let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in &counts {
            *freq.entry(k).or_default() += 1;
        }
        let best = freq.values().copied().max().expect("trials > 0");
        let winners: Vec<usize> = freq.iter().filter(|(_, &f)| f == best).map(|(&k, _)| k).collect();
        let modal = winners[0];
        degree += modal;
        curves.push(CurveOracle { curve: i, counts, modal, tie: winners.len() > 1 });
    }
    let formula: usize = (0..sc.n())
        .filter(|i| !g.indices.contains(i))
        .map(|i| 2 * (sc.curve(i).degree() - 1))
        .sum();
    if degree != formula {
        return Err(Error::Inconsistent(format!(
            "oracle degree {degree} differs from the degree formula {formula}"
        )));
    }
    Ok(OracleDegree { degree, curves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    fn axis(rows: &[&[i64]]) -> PencilAxis {
        let r = rows[0].len() - 1;
        PencilAxis::new(
            LinearSubspace::from_vectors(r, rows.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect())
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn conic_from_an_outside_point() {
        // tangents from (0:1:0) to t0 t2 = t1^2 touch at t = 0 and t = inf
        let r = ramification_count(&rnc(2), &axis(&[&[0, 1, 0]])).unwrap();
        assert_eq!(r.with_multiplicity, 2);
        assert_eq!(r.distinct, 2);
        assert_eq!(r.at_infinity, 1);
    }

    #[test]
    fn axis_on_the_curve_is_rejected() {
        assert!(matches!(ramification_count(&rnc(2), &axis(&[&[1, 0, 0]])), Err(Error::IllPosed(_))));
        assert!(PencilAxis::new(LinearSubspace::whole(1)).is_err());
    }

    #[test]
    fn generic_axes_give_two_d_minus_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=5 {
            let c = rnc(d);
            let a = random_axis(&mut rng, d).unwrap();
            let r = ramification_count(&c, &a).unwrap();
            assert_eq!(r.with_multiplicity, 2 * d - 2);
            assert_eq!(r.distinct, 2 * d - 2, "degree {d}");
        }
    }
}
