//! Checks the structural relations between the osculating spaces of a
//! scroll and those of its generating curves over a finite sample of base
//! points and every fiber-support stratum above them.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::flexes::flex_strata;
use super::jets::{curve_inflected, scroll_jet_matrix_with_pivot, Threshold};
use super::scroll::{DecomposableScroll, ScrollPoint};
use crate::curvekit::{inflectional_locus, osc_subspace, BaseLocus, CurvePoint, LinearSubspace, RationalCurve};
use crate::error::Result;
use crate::exactmath::{ratio, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Number of random rational base parameters, on top of the flex
    /// witnesses, `0` and infinity.
    pub sample_budget: usize,
    pub seed: u64,
    /// Largest osculating order checked; orders start at 2.
    pub max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { sample_budget: 20, seed: 0, max_order: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypothesis never applied to a sampled instance.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementReport {
    pub id: &'static str,
    pub statement: &'static str,
    /// Instances where the hypothesis applied.
    pub instances: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl StatementReport {
    pub fn verdict(&self) -> Verdict {
        if !self.failures.is_empty() {
            Verdict::Fail
        } else if self.instances == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub scroll: String,
    pub base_points: Vec<CurvePoint>,
    pub max_order: usize,
    pub statements: Vec<StatementReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.statements.iter().all(|s| s.verdict() != Verdict::Fail)
    }

    pub fn statement(&self, id: &str) -> Option<&StatementReport> {
        self.statements.iter().find(|s| s.id == id)
    }
}

const STATEMENTS: &[(&str, &str)] = &[
    ("osc-dimension-bound", "dim Osc^k_x <= min(nk, N) at every point"),
    ("pivot-independence", "the jet-matrix rank does not depend on the pivot chosen in the support"),
    (
        "vertex-osculating-span",
        "Osc^k at the vertex p_s is spanned by Osc^(k-1) of the other curves and Osc^k of C_s",
    ),
    ("vertex-flex-sufficient", "if p_s is k-inflected on C_s then p_s is k-inflected on the scroll"),
    (
        "vertex-flex-necessary",
        "a k-inflected vertex p_s has p_s k-inflected on C_s or some p_j (k-1)-inflected",
    ),
    (
        "flexed-complement-span",
        "if Osc^k = Osc^(k-1) at p_i for every i != s, Osc^k_x is the same span for all x with lambda_s != 0",
    ),
    ("fiber-span-containment", "the span of the k-inflected vertices of a fiber is k-inflected"),
    (
        "fiber-span-exact",
        "if no inflected vertex is (k-1)-inflected and some vertex is not, the inflected part of the fiber is exactly their span",
    ),
    (
        "fiber-flex-criteria",
        "all vertices inflected forces the whole fiber; a whole inflected fiber has an inflected vertex",
    ),
    (
        "surface-fiber-criterion",
        "for surfaces the fiber is inflected iff some p_i is (k-1)-inflected or both are k-inflected",
    ),
    (
        "surface-flex-dichotomy",
        "for surfaces an inflected interior point forces the fiber; an inflected vertex forces the fiber or is inflected on its curve",
    ),
    (
        "flex-fiber-equivalence",
        "second order: interior point inflected iff all vertices inflected on their curves iff whole fiber inflected",
    ),
    ("vertex-flex", "second order: p_i is a flex of the scroll iff p is a flex of C_i"),
    ("pivot-flex", "second order: x is a flex iff every curve in its support is flexed at p"),
    (
        "flex-osculating-span",
        "second order: at a flex, Osc^2 is the span of the tangent lines of all curves, of dimension 2n-1",
    ),
    ("uninflected-criterion", "second order: the scroll has no flexes iff no generating curve has one"),
    ("surface-uninflected", "for surfaces the k-th inflectional locus is empty iff it is empty on both curves"),
    (
        "surface-line-fibers",
        "for surfaces, if C_i is everywhere k- but nowhere (k-1)-inflected, the locus is C_i plus the fibers over flexes of C_j",
    ),
    (
        "surface-lower-bound",
        "rational normal surface scrolls with r1 >= k-1, N >= 2k and k >= 3 have dim Osc^k_x >= k+2",
    ),
];

struct Checks(Vec<StatementReport>);

impl Checks {
    fn new() -> Self {
        Checks(
            STATEMENTS
                .iter()
                .map(|&(id, statement)| StatementReport {
                    id,
                    statement,
                    instances: 0,
                    failures: Vec::new(),
                    notes: Vec::new(),
                })
                .collect(),
        )
    }

    fn get(&mut self, id: &str) -> &mut StatementReport {
        self.0.iter_mut().find(|s| s.id == id).expect("known statement id")
    }

    /// Records one instance of `id`; `failure` is built only when `ok` is false.
    fn check(&mut self, id: &str, ok: bool, failure: impl FnOnce() -> String) {
        let s = self.get(id);
        s.instances += 1;
        if !ok {
            s.failures.push(failure());
        }
    }

    fn note(&mut self, id: &str, note: String) {
        self.get(id).notes.push(note);
    }
}

fn show(set: &BTreeSet<usize>) -> String {
    format!("{{{}}}", set.iter().map(|i| i + 1).join(","))
}

/// `Phi_k(C)` in the expected sense.
fn curve_flex_set(c: &RationalCurve, k: usize) -> BaseLocus {
    if k == 0 {
        BaseLocus::empty()
    } else if k > c.ambient_dim() {
        BaseLocus::Whole
    } else {
        inflectional_locus(c, k).as_set().clone()
    }
}

struct Sample {
    x: ScrollPoint,
    support: BTreeSet<usize>,
    rank: usize,
    osc: LinearSubspace,
}

impl Sample {
    fn dim(&self) -> usize {
        self.rank - 1
    }
}

/// Data of the curves at one base point for one order.
struct CurveData {
    inflected: Vec<bool>,
    deeper: Vec<bool>,
    osc: Vec<LinearSubspace>,
    osc_below: Vec<LinearSubspace>,
}

fn curve_data(sc: &DecomposableScroll, k: usize, p: &CurvePoint) -> Result<CurveData> {
    let big = sc.ambient_dim();
    let mut d = CurveData { inflected: vec![], deeper: vec![], osc: vec![], osc_below: vec![] };
    for (i, c) in sc.curves().iter().enumerate() {
        let off = sc.offsets()[i];
        d.inflected.push(curve_inflected(c, k, p));
        d.deeper.push(curve_inflected(c, k - 1, p));
        d.osc.push(osc_subspace(c, k, p).embed(off, big)?);
        d.osc_below.push(osc_subspace(c, k - 1, p).embed(off, big)?);
    }
    Ok(d)
}

fn join_all(ambient: usize, parts: impl IntoIterator<Item = LinearSubspace>) -> Result<LinearSubspace> {
    parts.into_iter().try_fold(LinearSubspace::empty(ambient), |acc, s| acc.join(&s))
}

fn nonzero_small(rng: &mut ChaCha8Rng) -> Rat {
    let v = rng.gen_range(1i64..=9);
    Rat::from_integer(if rng.gen_bool(0.5) { v } else { -v }.into())
}

/// Fiber samples over `p`: the indicator point of every support and, for
/// supports with two or more indices, one random point of the stratum.
fn fiber_samples(
    sc: &DecomposableScroll,
    k: usize,
    p: &CurvePoint,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Sample>> {
    let n = sc.n();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut points = vec![ScrollPoint::indicator(p.clone(), &support, n)?];
        if support.len() >= 2 {
            let fiber = (0..n)
                .map(|i| if support.contains(&i) { nonzero_small(rng) } else { Rat::from_integer(0.into()) })
                .collect();
            points.push(ScrollPoint::new(p.clone(), fiber)?);
        }
        for x in points {
            let m = scroll_jet_matrix_with_pivot(sc, k, &x, x.pivot())?;
            let osc = LinearSubspace::span(sc.ambient_dim(), &m)?;
            out.push(Sample { x, support: support.clone(), rank: osc.rank(), osc });
        }
    }
    Ok(out)
}

fn base_points(sc: &DecomposableScroll, opts: &VerifyOptions) -> Vec<CurvePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pts: BTreeSet<CurvePoint> = BTreeSet::new();
    pts.insert(CurvePoint::affine(Rat::from_integer(0.into())));
    pts.insert(CurvePoint::infinity());
    for c in sc.curves() {
        for k in 1..=opts.max_order.min(c.ambient_dim()) {
            pts.extend(inflectional_locus(c, k).rational_points.iter().map(CurvePoint::canonical));
        }
    }
    let mut added = 0;
    let mut tries = 0;
    while added < opts.sample_budget && tries < 50 * (opts.sample_budget + 1) {
        tries += 1;
        let p = CurvePoint::affine(ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9)));
        if pts.insert(p) {
            added += 1;
        }
    }
    pts.into_iter().collect()
}

/// Runs every statement over the sampled points of `sc`.
///
/// Inflection is taken in the expected-dimension sense throughout (see
/// the module docs). Fiber supports are sampled exhaustively, which covers
/// every fiber stratum and hence every span of vertices.
pub fn verify_paper_properties(sc: &DecomposableScroll, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = sc.n();
    let big = sc.ambient_dim();
    let mut checks = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x0f1b_e55e);
    let points = base_points(sc, opts);
    let orders = 2..=opts.max_order.max(2);
    let rnc_surface = n == 2 && sc.is_rational_normal();
    let r_min = sc.curves().iter().map(RationalCurve::ambient_dim).min().unwrap_or(0);

    for p in &points {
        for k in orders.clone() {
            let cd = curve_data(sc, k, p)?;
            let samples = fiber_samples(sc, k, p, &mut rng)?;
            let flexed = |s: &Sample| s.dim() < n * k;
            let inflected: BTreeSet<usize> = (0..n).filter(|&i| cd.inflected[i]).collect();
            let any_deeper = cd.deeper.iter().any(|&b| b);
            let all_flexed = samples.iter().all(flexed);
            let at = |x: &ScrollPoint| format!("k={k}, x={x}");

            for s in &samples {
                let bound = (n * k).min(big);
                checks.check("osc-dimension-bound", s.dim() <= bound, || {
                    format!("{}: dim {} > {bound}", at(&s.x), s.dim())
                });
                if s.support.len() >= 2 {
                    let mut ranks = Vec::new();
                    for &piv in &s.support {
                        ranks.push(scroll_jet_matrix_with_pivot(sc, k, &s.x, piv)?.rank());
                    }
                    checks.check("pivot-independence", ranks.iter().all(|&r| r == s.rank), || {
                        format!("{}: ranks {ranks:?} over pivots {}", at(&s.x), show(&s.support))
                    });
                }
                if rnc_surface && k >= 3 && r_min + 1 >= k && big >= 2 * k {
                    checks.check("surface-lower-bound", s.dim() >= k + 2, || {
                        format!("{}: dim {} < {}", at(&s.x), s.dim(), k + 2)
                    });
                }
            }

            let vertex = |s: usize| {
                samples.iter().find(|x| x.support.len() == 1 && x.support.contains(&s)).expect("vertex sample")
            };
            for s in 0..n {
                let v = vertex(s);
                let others: Vec<LinearSubspace> =
                    (0..n).filter(|&i| i != s).map(|i| cd.osc_below[i].clone()).collect();
                let want = join_all(big, others.into_iter().chain([cd.osc[s].clone()]))?;
                checks.check("vertex-osculating-span", v.osc == want, || {
                    format!("{}: dim {} but the curve spans give {}", at(&v.x), v.dim(), want.dim())
                });
                if cd.inflected[s] {
                    checks.check("vertex-flex-sufficient", flexed(v), || {
                        format!("{}: p_{} inflected on its curve, dim {}", at(&v.x), s + 1, v.dim())
                    });
                }
                if flexed(v) {
                    let explained = cd.inflected[s] || (0..n).any(|j| j != s && cd.deeper[j]);
                    checks.check("vertex-flex-necessary", explained, || {
                        format!("{}: dim {} with no inflected curve point", at(&v.x), v.dim())
                    });
                }

                let plateau = (0..n).filter(|&i| i != s).all(|i| cd.osc[i] == cd.osc_below[i]);
                let literal = (0..n).filter(|&i| i != s).all(|i| cd.inflected[i]);
                if plateau {
                    for x in samples.iter().filter(|x| x.support.contains(&s)) {
                        checks.check("flexed-complement-span", x.osc == want, || {
                            format!("{}: Osc has dim {}, span has dim {}", at(&x.x), x.dim(), want.dim())
                        });
                    }
                } else if literal {
                    checks.note(
                        "flexed-complement-span",
                        format!(
                            "p={p}, k={k}, s={}: the other curve points are k-inflected but Osc^k differs from Osc^(k-1), span check skipped",
                            s + 1
                        ),
                    );
                }
            }

            for x in samples.iter().filter(|x| x.support.is_subset(&inflected)) {
                checks.check("fiber-span-containment", flexed(x), || {
                    format!("{}: support inside {} but dim {}", at(&x.x), show(&inflected), x.dim())
                });
            }
            let exact_pattern =
                inflected.len() < n && inflected.iter().all(|&i| !cd.deeper[i]);
            if exact_pattern {
                for x in &samples {
                    let inside = x.support.is_subset(&inflected);
                    checks.check("fiber-span-exact", flexed(x) == inside, || {
                        format!(
                            "{}: dim {} but inflected vertices are {}",
                            at(&x.x),
                            x.dim(),
                            show(&inflected)
                        )
                    });
                }
            }
            if inflected.len() == n {
                checks.check("fiber-flex-criteria", all_flexed, || {
                    format!("p={p}, k={k}: all vertices inflected on their curves but not the whole fiber")
                });
            }
            if all_flexed {
                checks.check("fiber-flex-criteria", !inflected.is_empty(), || {
                    format!("p={p}, k={k}: whole fiber inflected with no inflected vertex")
                });
            }

            if n == 2 {
                let predicted = any_deeper || inflected.len() == 2;
                checks.check("surface-fiber-criterion", all_flexed == predicted, || {
                    format!("p={p}, k={k}: whole fiber inflected is {all_flexed}, criterion says {predicted}")
                });
                for x in samples.iter().filter(|x| flexed(x)) {
                    let ok = if x.support.len() == 2 {
                        all_flexed
                    } else {
                        let s = *x.support.first().expect("nonempty");
                        all_flexed || cd.inflected[s]
                    };
                    checks.check("surface-flex-dichotomy", ok, || {
                        format!("{}: inflected but neither case holds", at(&x.x))
                    });
                }
            }

            if k == 2 {
                let interior: Vec<&Sample> = samples.iter().filter(|x| x.support.len() == n).collect();
                let interior_flexed = interior.iter().all(|x| flexed(x));
                let interior_any = interior.iter().any(|x| flexed(x));
                let all_curves = inflected.len() == n;
                checks.check(
                    "flex-fiber-equivalence",
                    interior_flexed == interior_any && interior_any == all_curves && all_curves == all_flexed,
                    || {
                        format!(
                            "p={p}: interior {interior_any}, curve points {all_curves}, whole fiber {all_flexed}"
                        )
                    },
                );
                for s in 0..n {
                    let v = vertex(s);
                    checks.check("vertex-flex", flexed(v) == cd.inflected[s], || {
                        format!("{}: dim {}, flex of C_{} is {}", at(&v.x), v.dim(), s + 1, cd.inflected[s])
                    });
                }
                let tangents = join_all(big, cd.osc_below.iter().cloned())?;
                for x in &samples {
                    let inside = x.support.is_subset(&inflected);
                    checks.check("pivot-flex", flexed(x) == inside, || {
                        format!("{}: dim {}, flexed curves {}", at(&x.x), x.dim(), show(&inflected))
                    });
                    if flexed(x) {
                        let ok = x.osc == tangents && x.dim() == 2 * n - 1;
                        checks.check("flex-osculating-span", ok, || {
                            format!(
                                "{}: dim {}, span of tangent lines has dim {}",
                                at(&x.x),
                                x.dim(),
                                tangents.dim()
                            )
                        });
                    }
                }
            }
        }
    }

    for k in orders {
        let strata = flex_strata(sc, k, Threshold::Expected)?;
        let scroll_empty = strata.iter().all(|(_, l)| l.is_empty());
        let curve_sets: Vec<BaseLocus> = sc.curves().iter().map(|c| curve_flex_set(c, k)).collect();
        let curves_empty = curve_sets.iter().all(BaseLocus::is_empty);
        if k == 2 {
            checks.check("uninflected-criterion", scroll_empty == curves_empty, || {
                format!("scroll uninflected is {scroll_empty}, curves uninflected is {curves_empty}")
            });
        }
        if n != 2 {
            continue;
        }
        checks.check("surface-uninflected", scroll_empty == curves_empty, || {
            format!("k={k}: scroll locus empty is {scroll_empty}, curve loci empty is {curves_empty}")
        });
        for i in 0..2 {
            let j = 1 - i;
            if !(curve_flex_set(sc.curve(i), k - 1).is_empty() && curve_sets[i].is_whole()) {
                continue;
            }
            for (support, locus) in &strata {
                let want = if support.len() == 1 && support.contains(&i) {
                    BaseLocus::Whole
                } else {
                    curve_sets[j].clone()
                };
                checks.check("surface-line-fibers", locus == &want, || {
                    format!("k={k}, support {}: locus {locus:?}, expected {want:?}", show(support))
                });
            }
        }
    }

    Ok(VerificationReport {
        scroll: sc.to_string(),
        base_points: points,
        max_order: opts.max_order.max(2),
        statements: checks.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{BinForm, UniPoly};
    use crate::scrollkit::build_scroll;

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    fn flexed_quartic() -> RationalCurve {
        let p: Vec<UniPoly> = [&[1][..], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]
            .iter()
            .map(|c| UniPoly::from_ints(c))
            .collect();
        RationalCurve::from_affine(&p, "q").unwrap()
    }

    fn quick() -> VerifyOptions {
        VerifyOptions { sample_budget: 4, seed: 1, max_order: 3 }
    }

    fn assert_passes(sc: &DecomposableScroll) -> VerificationReport {
        let r = verify_paper_properties(sc, &quick()).unwrap();
        for s in &r.statements {
            assert!(s.failures.is_empty(), "{}: {:?}", s.id, s.failures);
        }
        r
    }

    #[test]
    fn cubic_scroll_passes() {
        let r = assert_passes(&build_scroll(vec![rnc(1), rnc(2)]).unwrap());
        assert_eq!(r.statement("flex-osculating-span").unwrap().verdict(), Verdict::Pass);
    }

    #[test]
    fn flexed_surface_passes() {
        let r = assert_passes(&build_scroll(vec![rnc(1), flexed_quartic()]).unwrap());
        assert_eq!(r.statement("surface-fiber-criterion").unwrap().verdict(), Verdict::Pass);
        assert!(r.base_points.contains(&CurvePoint::infinity()));
    }

    #[test]
    fn uninflected_threefold_passes() {
        let r = assert_passes(&build_scroll(vec![rnc(2), rnc(2), rnc(2)]).unwrap());
        assert_eq!(r.statement("vertex-flex-sufficient").unwrap().verdict(), Verdict::Pass);
        assert_eq!(r.statement("surface-uninflected").unwrap().verdict(), Verdict::Vacuous);
    }
}
