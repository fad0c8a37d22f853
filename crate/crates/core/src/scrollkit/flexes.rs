use std::collections::BTreeSet;

use serde::Serialize;

use super::jets::{curve_inflected, stratum_locus, Threshold};
use super::scroll::DecomposableScroll;
use crate::curvekit::{inflectional_locus, BaseLocus, CurvePoint};
use crate::error::Result;
use crate::exactmath::{BinForm, UniPoly};

/// Kind of an irreducible piece of the second inflectional locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// A linear subspace `<p_i : i in S>` of a single fiber.
    Subfiber,
    /// The product of the line generators with `P^(|S|-1)`, swept over the
    /// whole base.
    SegreSubscroll,
}

/// A component of the second inflectional locus. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlexComponent {
    pub kind: ComponentKind,
    /// The base point of a subfiber component.
    pub base: Option<CurvePoint>,
    pub indices: BTreeSet<usize>,
    pub level: usize,
}

/// Flexes of one generating curve at parameters that are not rational;
/// they are described by their defining form only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicFlexes {
    pub curve: usize,
    pub defining_form: BinForm,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexReport {
    /// Every point is a flex (all generating curves are lines); no
    /// components are listed then.
    pub whole_scroll: bool,
    pub components: Vec<FlexComponent>,
    pub symbolic: Vec<SymbolicFlexes>,
}

impl FlexReport {
    /// True when some component or symbolic flex exists.
    pub fn has_flexes(&self) -> bool {
        self.whole_scroll || !self.components.is_empty() || !self.symbolic.is_empty()
    }

    pub fn subfibers(&self) -> impl Iterator<Item = &FlexComponent> {
        self.components.iter().filter(|c| c.kind == ComponentKind::Subfiber)
    }
}

/// Components of the second inflectional locus, read off from the flexes
/// of the generating curves: the point `p_i` of a fiber is a flex exactly
/// when `p` is a flex of `C_i`, and a fiber point is a flex exactly when
/// every curve in its support is flexed there.
pub fn flex_components(sc: &DecomposableScroll) -> FlexReport {
    let lines: BTreeSet<usize> = sc.line_indices().into_iter().collect();
    if lines.len() == sc.n() {
        return FlexReport { whole_scroll: true, components: Vec::new(), symbolic: Vec::new() };
    }
    let mut components = Vec::new();
    if !lines.is_empty() {
        components.push(FlexComponent {
            kind: ComponentKind::SegreSubscroll,
            base: None,
            indices: lines.clone(),
            level: 2,
        });
    }
    let mut bases = BTreeSet::new();
    let mut symbolic = Vec::new();
    for i in (0..sc.n()).filter(|i| !lines.contains(i)) {
        let locus = inflectional_locus(sc.curve(i), 2);
        let rational = locus.rational_points.clone();
        if let BaseLocus::Finite { affine, .. } = locus.as_set() {
            let mut rest = affine.clone();
            for p in rational.iter().filter(|p| !p.is_infinity()) {
                rest = rest.exact_div(&UniPoly::linear_root(&p.parameter));
            }
            if let Some(deg) = rest.degree().filter(|&d| d > 0) {
                symbolic.push(SymbolicFlexes {
                    curve: i,
                    defining_form: BinForm::from_affine(&rest, deg).expect("degree matches"),
                    count: deg,
                });
            }
        }
        bases.extend(rational);
    }
    for p in bases {
        let indices: BTreeSet<usize> = (0..sc.n())
            .filter(|&i| lines.contains(&i) || curve_inflected(sc.curve(i), 2, &p))
            .collect();
        components.push(FlexComponent { kind: ComponentKind::Subfiber, base: Some(p), indices, level: 2 });
    }
    FlexReport { whole_scroll: false, components, symbolic }
}

/// Drop locus of every fiber-support stratum, in increasing bitmask order.
///
/// Every point of the scroll lies in exactly one stratum (base point,
/// support) and the osculating dimension is constant along the torus
/// orbit, so these loci describe the `k`-th inflectional locus exactly.
pub fn flex_strata(
    sc: &DecomposableScroll,
    k: usize,
    threshold: Threshold,
) -> Result<Vec<(BTreeSet<usize>, BaseLocus)>> {
    let n = sc.n();
    (1u32..(1 << n))
        .map(|mask| {
            let support: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let locus = stratum_locus(sc, k, &support, threshold)?;
            Ok((support, locus))
        })
        .collect()
}

/// The `k`-inflected part of a fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberProfile {
    Empty,
    /// The span of the vertices with the given indices.
    SpanOf(BTreeSet<usize>),
    WholeFiber,
    /// No closed form applies; the flexed fiber supports are listed
    /// instead, which determines the locus exactly.
    Undetermined { flexed_supports: Vec<BTreeSet<usize>> },
}

/// `k`-inflected points of the fiber over `p`, in the expected-dimension
/// sense, from the inflection of the curve points `p_i` alone whenever a
/// closed form applies.
pub fn fiber_flex_profile(sc: &DecomposableScroll, k: usize, p: &CurvePoint) -> Result<FiberProfile> {
    let n = sc.n();
    let flexed: BTreeSet<usize> = (0..n).filter(|&i| curve_inflected(sc.curve(i), k, p)).collect();
    let deeper = (0..n).any(|i| curve_inflected(sc.curve(i), k.saturating_sub(1), p));
    if n == 2 {
        return Ok(if deeper || flexed.len() == 2 {
            FiberProfile::WholeFiber
        } else if flexed.is_empty() {
            FiberProfile::Empty
        } else {
            FiberProfile::SpanOf(flexed)
        });
    }
    if flexed.len() == n {
        return Ok(FiberProfile::WholeFiber);
    }
    if !deeper {
        return Ok(if flexed.is_empty() { FiberProfile::Empty } else { FiberProfile::SpanOf(flexed) });
    }
    let mut flexed_supports = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let x = super::ScrollPoint::indicator(p.clone(), &support, n)?;
        if super::in_expected_locus(sc, k, &x)? {
            flexed_supports.push(support);
        }
    }
    Ok(FiberProfile::Undetermined { flexed_supports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::RationalCurve;
    use crate::exactmath::int;
    use crate::scrollkit::build_scroll;

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    fn curve(polys: &[&[i64]]) -> RationalCurve {
        let p: Vec<UniPoly> = polys.iter().map(|c| UniPoly::from_ints(c)).collect();
        RationalCurve::from_affine(&p, "c").unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn flexed_quartic() -> RationalCurve {
        curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]])
    }

    #[test]
    fn line_conic_conic_has_one_segre_component() {
        let s = build_scroll(vec![rnc(1), rnc(2), rnc(2)]).unwrap();
        let r = flex_components(&s);
        assert_eq!(
            r.components,
            vec![FlexComponent {
                kind: ComponentKind::SegreSubscroll,
                base: None,
                indices: set(&[0]),
                level: 2
            }]
        );
        assert!(r.symbolic.is_empty());
    }

    #[test]
    fn flexed_quartic_gives_two_subfibers() {
        let s = build_scroll(vec![rnc(2), flexed_quartic()]).unwrap();
        let r = flex_components(&s);
        let bases: Vec<_> = r.subfibers().map(|c| (c.base.clone().unwrap(), c.indices.clone())).collect();
        assert_eq!(
            bases,
            vec![(CurvePoint::affine(int(0)), set(&[1])), (CurvePoint::infinity(), set(&[1]))]
        );
    }

    #[test]
    fn irrational_flexes_are_symbolic() {
        // both second derivatives vanish where t^2 = 2
        let c = curve(&[&[1], &[0, 1], &[0, 0, -12, 0, 1], &[0, 0, 0, -20, 0, 3]]);
        let s = build_scroll(vec![rnc(2), c]).unwrap();
        let r = flex_components(&s);
        let loc = inflectional_locus(s.curve(1), 2);
        let irr = loc.distinct_count - loc.rational_points.len();
        let sym: usize = r.symbolic.iter().map(|x| x.count).sum();
        assert_eq!(sym, irr);
        assert!(r.symbolic.iter().any(|x| x.count == 2));
        assert_eq!(r.subfibers().count(), loc.rational_points.len());
    }

    #[test]
    fn uninflected_and_degenerate_cases() {
        let s = build_scroll(vec![rnc(2), rnc(2)]).unwrap();
        assert!(!flex_components(&s).has_flexes());
        let segre = build_scroll(vec![rnc(1), rnc(1)]).unwrap();
        assert!(flex_components(&segre).whole_scroll);
    }

    #[test]
    fn strata_match_components() {
        let s = build_scroll(vec![rnc(2), flexed_quartic()]).unwrap();
        let strata = flex_strata(&s, 2, Threshold::Generic).unwrap();
        let zero_inf = BaseLocus::point(&CurvePoint::affine(int(0)))
            .union(&BaseLocus::point(&CurvePoint::infinity()));
        for (support, locus) in strata {
            if support == set(&[1]) {
                assert_eq!(locus, zero_inf);
            } else {
                assert!(locus.is_empty(), "{support:?}: {locus:?}");
            }
        }
    }

    #[test]
    fn fiber_profiles() {
        let cubic = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        let p = CurvePoint::affine(int(3));
        assert_eq!(fiber_flex_profile(&cubic, 2, &p).unwrap(), FiberProfile::SpanOf(set(&[0])));
        let f0 = build_scroll(vec![rnc(2), rnc(2)]).unwrap();
        assert_eq!(fiber_flex_profile(&f0, 2, &p).unwrap(), FiberProfile::Empty);
        let ex = build_scroll(vec![rnc(1), flexed_quartic()]).unwrap();
        let o = CurvePoint::affine(int(0));
        assert_eq!(fiber_flex_profile(&ex, 3, &o).unwrap(), FiberProfile::WholeFiber);
    }
}
