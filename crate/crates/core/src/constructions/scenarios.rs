use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use super::{
    monomial_curve, rational_normal_curve, rational_normal_scroll, sample_point_center,
    sample_uninflected_center, seeded_rng, CenterMode,
};
use crate::curvekit::{contains_in_osculating, inflectional_locus, CurvePoint, LinearSubspace, RationalCurve};
use crate::error::{Error, Result};
use crate::exactmath::int;
use crate::scrollkit::{
    build_scroll, fiber_flex_profile, flex_components, flex_strata, generic_osc_dim, is_flex,
    rns_osc_dim_formula, scroll_osc_dim, ComponentKind, DecomposableScroll, FiberProfile, ScrollPoint,
    Threshold,
};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// Stated in the source literature.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Computed independently of the operation under test.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "PAPER",
            Provenance::Trivial => "TRIVIAL",
            Provenance::Derived => "DERIVED",
        })
    }
}

/// A machine-checkable claim about a scenario. Curve indices are
/// zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    GenericOscDim { k: usize, expected: usize },
    OscDim { k: usize, point: ScrollPoint, expected: usize },
    IsFlex { k: usize, point: ScrollPoint, expected: bool },
    /// Emptiness of the scroll's `k`-th inflectional locus (expected
    /// dimension `nk`).
    ScrollUninflected { k: usize, expected: bool },
    CurveUninflected { curve: usize, k: usize, expected: bool },
    CurveFlexPoints { curve: usize, k: usize, points: Vec<CurvePoint> },
    /// Second-order flex components: the Segre indices (if any), the
    /// allowed number of flexed fibers, and the indices every subfiber
    /// must carry.
    FlexComponents { segre: Option<BTreeSet<usize>>, fibers: (usize, usize), subfiber_indices: Option<BTreeSet<usize>> },
    FiberProfile { k: usize, base: CurvePoint, expected: FiberProfile },
    /// Ambient dimensions of the generating curves and of the scroll.
    Fingerprint { curve_dims: Vec<usize>, ambient: usize },
    /// Points of the projected source curve whose order-`order` osculating
    /// space contains the center.
    CenterMembership { order: usize, allowed: (usize, usize) },
    /// The number of osculating spaces of the source through the center
    /// equals the number of flexes of the projected curve.
    FlexCountAgreement { order: usize, curve: usize },
}

fn show_set(s: &BTreeSet<usize>) -> String {
    format!("{{{}}}", s.iter().map(|i| i + 1).join(","))
}

fn show_range((lo, hi): (usize, usize)) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

fn show_profile(p: &FiberProfile) -> String {
    match p {
        FiberProfile::Empty => "empty".into(),
        FiberProfile::SpanOf(s) => format!("span_of {}", show_set(s)),
        FiberProfile::WholeFiber => "whole_fiber".into(),
        FiberProfile::Undetermined { flexed_supports } => {
            format!("undetermined [{}]", flexed_supports.iter().map(show_set).join(" "))
        }
    }
}

impl Check {
    /// Name of the operation exercised.
    pub fn operation(&self) -> &'static str {
        match self {
            Check::GenericOscDim { .. } => "generic_osc_dim",
            Check::OscDim { .. } => "scroll_osc_dim",
            Check::IsFlex { .. } => "is_flex",
            Check::ScrollUninflected { .. } => "inflectional_locus(scroll)",
            Check::CurveUninflected { .. } | Check::CurveFlexPoints { .. } => "inflectional_locus",
            Check::FlexComponents { .. } => "flex_components",
            Check::FiberProfile { .. } => "fiber_flex_profile",
            Check::Fingerprint { .. } => "build_scroll",
            Check::CenterMembership { .. } => "contains_in_osculating",
            Check::FlexCountAgreement { .. } => "contains_in_osculating=inflectional_locus",
        }
    }

    pub fn arguments(&self) -> String {
        match self {
            Check::GenericOscDim { k, .. } | Check::ScrollUninflected { k, .. } => format!("k={k}"),
            Check::OscDim { k, point, .. } | Check::IsFlex { k, point, .. } => format!("k={k} x={point}"),
            Check::CurveUninflected { curve, k, .. } | Check::CurveFlexPoints { curve, k, .. } => {
                format!("curve={} k={k}", curve + 1)
            }
            Check::FlexComponents { .. } | Check::Fingerprint { .. } => String::new(),
            Check::FiberProfile { k, base, .. } => format!("k={k} p={base}"),
            Check::CenterMembership { order, .. } => format!("m={order}"),
            Check::FlexCountAgreement { order, curve } => format!("m={order} curve={}", curve + 1),
        }
    }

    pub fn expected(&self) -> String {
        match self {
            Check::GenericOscDim { expected, .. } | Check::OscDim { expected, .. } => expected.to_string(),
            Check::IsFlex { expected, .. } => expected.to_string(),
            Check::ScrollUninflected { expected, .. } | Check::CurveUninflected { expected, .. } => {
                if *expected { "empty" } else { "nonempty" }.into()
            }
            Check::CurveFlexPoints { points, .. } => format!("[{}]", points.iter().join(", ")),
            Check::FlexComponents { segre, fibers, subfiber_indices } => format!(
                "segre={} fibers={}{}",
                segre.as_ref().map_or("none".into(), show_set),
                show_range(*fibers),
                subfiber_indices.as_ref().map_or(String::new(), |s| format!(" indices={}", show_set(s)))
            ),
            Check::FiberProfile { expected, .. } => show_profile(expected),
            Check::Fingerprint { curve_dims, ambient } => {
                format!("r=({}) N={ambient}", curve_dims.iter().join(","))
            }
            Check::CenterMembership { allowed, .. } => format!("count {}", show_range(*allowed)),
            Check::FlexCountAgreement { .. } => "equal counts".into(),
        }
    }
}

/// Observed value of a check and whether it matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub observed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub check: Check,
    pub provenance: Provenance,
}

/// A curve projected from a center to produce one of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub source: RationalCurve,
    pub center: LinearSubspace,
    /// Index of the projected curve in the scroll.
    pub curve: usize,
}

/// Key-value parameters of a scenario.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioParams {
    pub values: BTreeMap<String, i64>,
    pub seed: u64,
}

impl ScenarioParams {
    pub fn with_seed(seed: u64) -> Self {
        ScenarioParams { values: BTreeMap::new(), seed }
    }

    pub fn set(mut self, key: &str, value: i64) -> Self {
        self.values.insert(key.to_string(), value);
        self
    }

    /// Parses `key=value` pairs with integer values.
    pub fn parse_pairs<'a>(pairs: impl IntoIterator<Item = &'a str>, seed: u64) -> Result<Self> {
        let mut p = Self::with_seed(seed);
        for pair in pairs {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got '{pair}'")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("parameter {k} needs an integer, got '{v}'")))?;
            p.values.insert(k.trim().to_string(), v);
        }
        Ok(p)
    }

    fn nat(&self, key: &str, default: usize, min: usize) -> Result<usize> {
        let v = self.values.get(key).copied().unwrap_or(default as i64);
        if v < min as i64 {
            return Err(Error::InvalidParameter(format!("{key} must be at least {min}, got {v}")));
        }
        Ok(v as usize)
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: String,
    pub description: &'static str,
    /// Parameter values actually used, defaults included.
    pub params: BTreeMap<String, i64>,
    pub seed: u64,
    pub scroll: DecomposableScroll,
    pub projection: Option<Projection>,
    pub expectations: Vec<Expectation>,
}

const IDS: &[(&str, &str)] = &[
    ("ex3.1", "rational normal surface scroll S(r1, r2): osculating dimension table"),
    ("ex3.2", "line plus monomial curve: osculating plateau along the fiber over t = 0"),
    ("ex3.3", "normal curve plus projected curve in P^(2m+2) with empty m-th inflectional locus"),
    ("ex3.5-off", "line plus quartic projected from a point on no osculating plane"),
    ("ex3.5-on", "line plus quartic projected from a point on an osculating plane"),
    ("ex3.6-on", "conic plus quartic projected from a point on an osculating plane"),
    ("cubic", "cubic scroll S(1, 2)"),
    ("quartic-F0", "quartic scroll generated by two conics"),
    ("quartic-F2", "quartic scroll generated by a line and a twisted cubic"),
];

/// Known scenario ids with one-line descriptions.
pub fn scenario_ids() -> &'static [(&'static str, &'static str)] {
    IDS
}

fn pt(t: i64) -> CurvePoint {
    CurvePoint::affine(int(t))
}

fn sp(base: CurvePoint, fiber: &[i64]) -> ScrollPoint {
    ScrollPoint::new(base, fiber.iter().map(|&x| int(x)).collect()).expect("nonzero fiber")
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn exp(check: Check, provenance: Provenance) -> Expectation {
    Expectation { check, provenance }
}

/// Builds a named scenario.
pub fn scenario(id: &str, params: &ScenarioParams) -> Result<Scenario> {
    let description = IDS
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, d)| *d)
        .ok_or_else(|| Error::UnknownScenario(id.to_string()))?;
    let mut used = BTreeMap::new();
    let mut projection = None;
    let mut expectations = Vec::new();
    use Provenance::*;
    let scroll = match id {
        "ex3.1" => {
            let r1 = params.nat("r1", 2, 1)?;
            let r2 = params.nat("r2", 3, r1)?;
            used.insert("r1".into(), r1 as i64);
            used.insert("r2".into(), r2 as i64);
            for k in 1..=5 {
                let want = rns_osc_dim_formula(r1, r2, k)?;
                expectations.push(exp(Check::GenericOscDim { k, expected: want }, Paper));
                for x in [sp(pt(2), &[1, 1]), sp(pt(-1), &[3, -2]), sp(pt(0), &[0, 1])] {
                    expectations.push(exp(Check::OscDim { k, point: x, expected: want }, Paper));
                }
            }
            rational_normal_scroll(&[r1, r2])?
        }
        "ex3.2" => {
            let k = params.nat("k", 2, 2)?;
            let r = params.nat("r", 3, 3)?;
            used.insert("k".into(), k as i64);
            used.insert("r".into(), r as i64);
            let degree = k + r - 1;
            let exps: Vec<usize> = [0, 1].into_iter().chain(k + 1..=degree).collect();
            let c2 = monomial_curve(&exps, degree)?;
            let o = pt(0);
            expectations.push(exp(
                Check::CurveFlexPoints { curve: 1, k: 2, points: vec![o.clone(), CurvePoint::infinity()] },
                Derived,
            ));
            let fiber_points = [&[1, 0][..], &[0, 1], &[1, 1], &[2, -3]];
            for h in 2..=k {
                for f in fiber_points {
                    expectations.push(exp(Check::OscDim { k: h, point: sp(o.clone(), f), expected: 3 }, Paper));
                }
            }
            // one order higher only the point on the line keeps dimension 3;
            // the other vertex spans the line and an osculating plane
            for (f, want) in fiber_points.into_iter().zip([3, 4, 4, 4]) {
                expectations.push(exp(Check::OscDim { k: k + 1, point: sp(o.clone(), f), expected: want }, Derived));
            }
            expectations.push(exp(
                Check::FiberProfile { k: k + 1, base: o, expected: FiberProfile::WholeFiber },
                Paper,
            ));
            build_scroll(vec![rational_normal_curve(1)?, c2])?
        }
        "ex3.3" => {
            let m = params.nat("m", 2, 2)?;
            let d = params.nat("d", m + 2, m + 2)?;
            used.insert("m".into(), m as i64);
            used.insert("d".into(), d as i64);
            let gamma = rational_normal_curve(d)?;
            let mut rng = seeded_rng(params.seed);
            let (center, c2) = if d == m + 2 {
                sample_point_center(&gamma, m, CenterMode::Off, &mut rng)?
            } else {
                sample_uninflected_center(&gamma, d - m - 2, m, &mut rng)?
            };
            if d == m + 2 {
                expectations.push(exp(Check::CenterMembership { order: m, allowed: (0, 0) }, Derived));
            }
            expectations.push(exp(Check::CurveUninflected { curve: 0, k: m, expected: true }, Trivial));
            expectations.push(exp(Check::CurveUninflected { curve: 1, k: m, expected: true }, Paper));
            expectations.push(exp(Check::ScrollUninflected { k: m, expected: true }, Paper));
            expectations.push(exp(
                Check::Fingerprint { curve_dims: vec![m, m + 1], ambient: 2 * m + 2 },
                Paper,
            ));
            projection = Some(Projection { source: gamma, center, curve: 1 });
            build_scroll(vec![rational_normal_curve(m)?, c2.with_label(format!("rnc{d}/proj"))])?
        }
        "ex3.5-off" | "ex3.5-on" | "ex3.6-on" => {
            let gamma = rational_normal_curve(4)?;
            let mut rng = seeded_rng(params.seed);
            let on = id != "ex3.5-off";
            let mode = if on { CenterMode::On } else { CenterMode::Off };
            let (center, c2) = sample_point_center(&gamma, 2, mode, &mut rng)?;
            let first = if id == "ex3.6-on" { 2 } else { 1 };
            let allowed = if on { (1, 2) } else { (0, 0) };
            expectations.push(exp(Check::CenterMembership { order: 2, allowed }, if on { Paper } else { Derived }));
            expectations.push(exp(Check::FlexCountAgreement { order: 2, curve: 1 }, Derived));
            let segre = (first == 1).then(|| set(&[0]));
            let subfiber_indices = if first == 1 { set(&[0, 1]) } else { set(&[1]) };
            expectations.push(exp(
                Check::FlexComponents { segre, fibers: allowed, subfiber_indices: Some(subfiber_indices) },
                Paper,
            ));
            expectations.push(exp(Check::Fingerprint { curve_dims: vec![first, 3], ambient: first + 4 }, Trivial));
            projection = Some(Projection { source: gamma, center, curve: 1 });
            build_scroll(vec![rational_normal_curve(first)?, c2.with_label("rnc4/proj")])?
        }
        "cubic" => {
            expectations.push(exp(
                Check::FlexComponents { segre: Some(set(&[0])), fibers: (0, 0), subfiber_indices: None },
                Paper,
            ));
            expectations.push(exp(Check::GenericOscDim { k: 2, expected: 4 }, Derived));
            for t in [-2, 0, 3] {
                expectations.push(exp(Check::IsFlex { k: 2, point: sp(pt(t), &[1, 0]), expected: true }, Paper));
                expectations.push(exp(Check::IsFlex { k: 2, point: sp(pt(t), &[1, 2]), expected: false }, Paper));
            }
            expectations.push(exp(
                Check::FiberProfile { k: 2, base: pt(5), expected: FiberProfile::SpanOf(set(&[0])) },
                Paper,
            ));
            rational_normal_scroll(&[1, 2])?
        }
        "quartic-F0" => {
            expectations.push(exp(
                Check::FlexComponents { segre: None, fibers: (0, 0), subfiber_indices: None },
                Paper,
            ));
            expectations.push(exp(Check::ScrollUninflected { k: 2, expected: true }, Paper));
            rational_normal_scroll(&[2, 2])?
        }
        "quartic-F2" => {
            expectations.push(exp(
                Check::FlexComponents { segre: Some(set(&[0])), fibers: (0, 0), subfiber_indices: None },
                Paper,
            ));
            for t in [1, 4] {
                expectations.push(exp(Check::IsFlex { k: 2, point: sp(pt(t), &[2, 1]), expected: false }, Paper));
                expectations.push(exp(Check::IsFlex { k: 2, point: sp(pt(t), &[1, 0]), expected: true }, Paper));
            }
            rational_normal_scroll(&[1, 3])?
        }
        _ => unreachable!("id validated above"),
    };
    if let Some(k) = params.values.keys().find(|k| !used.contains_key(*k)) {
        return Err(Error::InvalidParameter(format!("scenario {id} has no parameter '{k}'")));
    }
    Ok(Scenario {
        id: id.to_string(),
        description,
        params: used,
        seed: params.seed,
        scroll,
        projection,
        expectations,
    })
}

fn count_in((lo, hi): (usize, usize), n: usize) -> bool {
    (lo..=hi).contains(&n)
}

impl Scenario {
    fn projection(&self) -> Result<&Projection> {
        self.projection
            .as_ref()
            .ok_or_else(|| Error::IllPosed(format!("scenario {} has no projection", self.id)))
    }

    /// Evaluates one check against this scenario.
    pub fn evaluate(&self, check: &Check) -> Result<CheckOutcome> {
        let sc = &self.scroll;
        let out = |observed: String, passed: bool| Ok(CheckOutcome { observed, passed });
        match check {
            Check::GenericOscDim { k, expected } => {
                let d = generic_osc_dim(sc, *k).dim;
                out(d.to_string(), d == *expected)
            }
            Check::OscDim { k, point, expected } => {
                let d = scroll_osc_dim(sc, *k, point)?;
                out(d.to_string(), d == *expected)
            }
            Check::IsFlex { k, point, expected } => {
                let f = is_flex(sc, *k, point)?;
                out(f.to_string(), f == *expected)
            }
            Check::ScrollUninflected { k, expected } => {
                let empty = flex_strata(sc, *k, Threshold::Expected)?.iter().all(|(_, l)| l.is_empty());
                out(if empty { "empty" } else { "nonempty" }.into(), empty == *expected)
            }
            Check::CurveUninflected { curve, k, expected } => {
                let empty = inflectional_locus(sc.curve(*curve), *k).is_empty();
                out(if empty { "empty" } else { "nonempty" }.into(), empty == *expected)
            }
            Check::CurveFlexPoints { curve, k, points } => {
                let loc = inflectional_locus(sc.curve(*curve), *k);
                let ok = loc.as_set().all_rational() && loc.rational_points == *points;
                out(format!("[{}]", loc.rational_points.iter().join(", ")), ok)
            }
            Check::FlexComponents { segre, fibers, subfiber_indices } => {
                let r = flex_components(sc);
                let seg = r
                    .components
                    .iter()
                    .find(|c| c.kind == ComponentKind::SegreSubscroll)
                    .map(|c| c.indices.clone());
                let subs: Vec<_> = r.subfibers().collect();
                let n_fibers = subs.len() + r.symbolic.iter().map(|s| s.count).sum::<usize>();
                let indices_ok = subfiber_indices
                    .as_ref()
                    .map_or(true, |want| subs.iter().all(|c| &c.indices == want));
                let observed = format!(
                    "segre={} fibers={n_fibers}{}",
                    seg.as_ref().map_or("none".into(), show_set),
                    if subs.is_empty() {
                        String::new()
                    } else {
                        format!(" indices=[{}]", subs.iter().map(|c| show_set(&c.indices)).join(" "))
                    }
                );
                out(observed, !r.whole_scroll && seg == *segre && count_in(*fibers, n_fibers) && indices_ok)
            }
            Check::FiberProfile { k, base, expected } => {
                let p = fiber_flex_profile(sc, *k, base)?;
                out(show_profile(&p), p == *expected)
            }
            Check::Fingerprint { curve_dims, ambient } => {
                let dims: Vec<usize> = sc.curves().iter().map(RationalCurve::ambient_dim).collect();
                out(
                    format!("r=({}) N={}", dims.iter().join(","), sc.ambient_dim()),
                    dims == *curve_dims && sc.ambient_dim() == *ambient,
                )
            }
            Check::CenterMembership { order, allowed } => {
                let p = self.projection()?;
                let n = contains_in_osculating(&p.source, *order, &p.center)?.distinct_count;
                out(format!("count {n}"), count_in(*allowed, n))
            }
            Check::FlexCountAgreement { order, curve } => {
                let p = self.projection()?;
                let a = contains_in_osculating(&p.source, *order, &p.center)?.distinct_count;
                let b = inflectional_locus(sc.curve(*curve), *order).distinct_count;
                out(format!("{a} osculating spaces through the center, {b} flexes"), a == b)
            }
        }
    }

    /// Evaluates every expectation in order.
    pub fn run(&self) -> Result<Vec<(Expectation, CheckOutcome)>> {
        self.expectations.iter().map(|e| Ok((e.clone(), self.evaluate(&e.check)?))).collect()
    }

    /// Parameter summary such as `k=2 r=3 seed=0`.
    pub fn param_summary(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .chain([format!("seed={}", self.seed)])
            .join(" ")
    }
}
