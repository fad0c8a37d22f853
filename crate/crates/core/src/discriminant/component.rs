use std::collections::BTreeSet;

use serde::Serialize;

use crate::curvekit::{inflectional_locus, LinearSubspace};
use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::scrollkit::{
    curve_inflected, scroll_osc_subspace, ComponentKind, DecomposableScroll, FlexComponent, ScrollPoint,
};

/// Three-valued answer to "is the discriminant component a scroll".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scrollness {
    Scroll,
    NotScroll,
    /// No known criterion applies.
    NotDetermined,
}

/// Classification of the discriminant component of a Segre flex component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollClassification {
    pub scrollness: Scrollness,
    pub rational_normal: bool,
    /// `2 * sum (d_i - 1)` over the non-line curves.
    pub degree: usize,
    /// Codimension plus one in the span, `2(n - s)`; a nondegenerate
    /// variety has degree at least this.
    pub minimal_degree: usize,
}

/// Invariants of the hyperplanes containing the second osculating space
/// at some point of a flex component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantComponent {
    pub source: FlexComponent,
    /// `N`: the component lives in the dual `P^N`.
    pub ambient_dual_dim: usize,
    pub dim: usize,
    pub degree: usize,
    pub linear: bool,
    /// Dimension of the linear span in the dual space.
    pub span_dim: usize,
    /// Subspace every relevant osculating space contains: the fixed
    /// osculating space of a subfiber, or the span of the line curves.
    pub core: LinearSubspace,
    /// `None` for subfiber components, which are linear.
    pub classification: Option<ScrollClassification>,
}

impl DiscriminantComponent {
    pub fn is_rational_normal_scroll(&self) -> bool {
        self.classification.as_ref().is_some_and(|c| c.rational_normal)
    }
}

pub(crate) fn require_segre(sc: &DecomposableScroll, g: &FlexComponent) -> Result<()> {
    check_component(sc, g)?;
    if g.kind != ComponentKind::SegreSubscroll {
        return Err(Error::IllPosed("the component is not swept by line generators".into()));
    }
    Ok(())
}

fn check_component(sc: &DecomposableScroll, g: &FlexComponent) -> Result<()> {
    let lines: BTreeSet<usize> = sc.line_indices().into_iter().collect();
    if lines.len() == sc.n() {
        return Err(Error::IllPosed("every point of a scroll of lines is a flex".into()));
    }
    if g.indices.is_empty() || g.indices.iter().any(|&i| i >= sc.n()) {
        return Err(Error::Inconsistent(format!("component indices {:?} do not fit the scroll", g.indices)));
    }
    if g.level != 2 {
        return Err(Error::Inconsistent(format!("component of order {}, expected 2", g.level)));
    }
    match (g.kind, &g.base) {
        (ComponentKind::SegreSubscroll, None) => {
            if g.indices != lines {
                return Err(Error::Inconsistent("Segre component must use exactly the line curves".into()));
            }
        }
        (ComponentKind::Subfiber, Some(p)) => {
            let flexed: BTreeSet<usize> =
                (0..sc.n()).filter(|&i| curve_inflected(sc.curve(i), 2, p)).collect();
            if g.indices != flexed || g.indices.is_subset(&lines) {
                return Err(Error::Inconsistent(format!(
                    "subfiber over {p} must consist of the curves flexed there, including a non-line"
                )));
            }
        }
        _ => return Err(Error::Inconsistent("base point present exactly for subfibers".into())),
    }
    Ok(())
}

/// Scrollness and normality of the discriminant component of a Segre
/// flex component, from the degrees and spans of the non-line curves.
pub fn classify_scrollness(sc: &DecomposableScroll, g: &FlexComponent) -> Result<ScrollClassification> {
    require_segre(sc, g)?;
    let others: Vec<usize> = (0..sc.n()).filter(|i| !g.indices.contains(i)).collect();
    let degs: Vec<(usize, usize)> =
        others.iter().map(|&i| (sc.curve(i).degree(), sc.curve(i).ambient_dim())).collect();
    let scrollness = if degs.iter().all(|&(d, _)| d <= 3) {
        Scrollness::Scroll
    } else if degs.iter().any(|&(d, r)| r >= 4 || (r == 3 && d >= 4)) {
        Scrollness::NotScroll
    } else {
        Scrollness::NotDetermined
    };
    let degree: usize = degs.iter().map(|&(d, _)| 2 * (d - 1)).sum();
    let minimal_degree = 2 * others.len();
    let rational_normal = degs.iter().all(|&(d, _)| d == 2);
    if rational_normal != (degree == minimal_degree) {
        return Err(Error::Inconsistent(format!(
            "degree {degree} vs minimal degree {minimal_degree} disagrees with the conic test"
        )));
    }
    Ok(ScrollClassification { scrollness, rational_normal, degree, minimal_degree })
}

/// Points of the span `<p_i : i in S>` used to pin down a fixed osculating
/// space: the indicator point and two more with small distinct weights.
fn span_points(sc: &DecomposableScroll, g: &FlexComponent) -> Result<Vec<ScrollPoint>> {
    let base = g.base.clone().expect("subfiber has a base");
    let n = sc.n();
    let mut out = vec![ScrollPoint::indicator(base.clone(), &g.indices, n)?];
    for shift in [2i64, 3] {
        let fiber = (0..n)
            .map(|i| match g.indices.iter().position(|&j| j == i) {
                Some(pos) => Rat::from_integer((shift + pos as i64 * shift).into()),
                None => Rat::from_integer(0.into()),
            })
            .collect();
        out.push(ScrollPoint::new(base.clone(), fiber)?);
    }
    if let Some(&last) = g.indices.iter().next_back() {
        out.push(ScrollPoint::vertex(base, last, n));
    }
    Ok(out)
}

/// Dimension, degree, span and classification of the discriminant
/// component attached to a flex component of `sc`.
///
/// A subfiber component has one fixed osculating `P^(2n-1)`, so its
/// hyperplanes form a linear `P^(N-2n)`; this is checked at several points
/// of the span. A Segre component gives a one-parameter family of such
/// spaces, of dimension `N - 2n + 1`, spanning the hyperplanes through the
/// lines.
pub fn discr_component(sc: &DecomposableScroll, g: &FlexComponent) -> Result<DiscriminantComponent> {
    check_component(sc, g)?;
    let big = sc.ambient_dim();
    let n = sc.n();
    if big < 2 * n {
        return Err(Error::IllPosed(format!("P^{big} is too small for a flex component")));
    }
    match g.kind {
        ComponentKind::Subfiber => {
            let mut core: Option<LinearSubspace> = None;
            for x in span_points(sc, g)? {
                let osc = scroll_osc_subspace(sc, 2, &x)?;
                if osc.dim() != 2 * n as isize - 1 {
                    return Err(Error::Inconsistent(format!("Osc^2 at {x} has dimension {}", osc.dim())));
                }
                match &core {
                    None => core = Some(osc),
                    Some(c) if *c != osc => {
                        return Err(Error::Inconsistent(format!("Osc^2 moves inside the subfiber at {x}")))
                    }
                    _ => {}
                }
            }
            let core = core.expect("at least one point");
            let span_dim = big - core.rank();
            Ok(DiscriminantComponent {
                source: g.clone(),
                ambient_dual_dim: big,
                dim: big - 2 * n,
                degree: 1,
                linear: true,
                span_dim,
                core,
                classification: None,
            })
        }
        ComponentKind::SegreSubscroll => {
            let classification = classify_scrollness(sc, g)?;
            let core = g.indices.iter().try_fold(LinearSubspace::empty(big), |acc, &i| {
                acc.join(&LinearSubspace::whole(sc.curve(i).ambient_dim()).embed(sc.offsets()[i], big)?)
            })?;
            let span_dim = big - core.rank();
            debug_assert_eq!(span_dim, big - 2 * g.indices.len());
            Ok(DiscriminantComponent {
                source: g.clone(),
                ambient_dual_dim: big,
                dim: big + 1 - 2 * n,
                degree: classification.degree,
                linear: false,
                span_dim,
                core,
                classification: Some(classification),
            })
        }
    }
}

/// Whether a non-line curve of `sc` has flexes; a Segre component is then
/// partly covered by subfiber components.
pub fn has_curve_flexes(sc: &DecomposableScroll) -> bool {
    sc.curves().iter().any(|c| !c.is_line() && !inflectional_locus(c, 2).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::RationalCurve;
    use crate::exactmath::{BinForm, UniPoly};
    use crate::scrollkit::{build_scroll, flex_components};

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    fn curve(polys: &[&[i64]]) -> RationalCurve {
        let p: Vec<UniPoly> = polys.iter().map(|c| UniPoly::from_ints(c)).collect();
        RationalCurve::from_affine(&p, "c").unwrap()
    }

    fn segre(sc: &DecomposableScroll) -> FlexComponent {
        flex_components(sc)
            .components
            .into_iter()
            .find(|c| c.kind == ComponentKind::SegreSubscroll)
            .unwrap()
    }

    #[test]
    fn cubic_scroll_discriminant_is_a_conic() {
        let s = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        let d = discr_component(&s, &segre(&s)).unwrap();
        assert_eq!((d.dim, d.degree, d.span_dim), (1, 2, 2));
        assert!(d.is_rational_normal_scroll());
    }

    #[test]
    fn line_and_space_quartic() {
        let q = curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        let s = build_scroll(vec![rnc(1), q]).unwrap();
        let d = discr_component(&s, &segre(&s)).unwrap();
        assert_eq!((d.dim, d.degree), (2, 6));
        assert_eq!(d.classification.unwrap().scrollness, Scrollness::NotScroll);
    }

    #[test]
    fn subfiber_component_is_linear() {
        let q = curve(&[&[1], &[0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 1]]);
        let s = build_scroll(vec![rnc(2), q]).unwrap();
        let comps = flex_components(&s).components;
        let d = discr_component(&s, &comps[0]).unwrap();
        assert_eq!((d.dim, d.degree, d.linear), (2, 1, true));
        assert_eq!(d.span_dim, 2);
        assert_eq!(d.core.dim(), 3);
    }

    #[test]
    fn classification_table() {
        let cases: [(Vec<RationalCurve>, Scrollness, bool); 3] = [
            (vec![rnc(1), rnc(2), rnc(2)], Scrollness::Scroll, true),
            (vec![rnc(1), rnc(2), rnc(3)], Scrollness::Scroll, false),
            (vec![rnc(1), rnc(4)], Scrollness::NotScroll, false),
        ];
        for (curves, want, rns) in cases {
            let s = build_scroll(curves).unwrap();
            let c = classify_scrollness(&s, &segre(&s)).unwrap();
            assert_eq!((c.scrollness, c.rational_normal), (want, rns));
            assert!(c.degree >= c.minimal_degree);
        }
    }

    #[test]
    fn inconsistent_components_are_rejected() {
        let s = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        let mut g = segre(&s);
        g.indices.insert(1);
        assert!(discr_component(&s, &g).is_err());
        let lines = build_scroll(vec![rnc(1), rnc(1)]).unwrap();
        let g = FlexComponent {
            kind: ComponentKind::SegreSubscroll,
            base: None,
            indices: BTreeSet::from([0, 1]),
            level: 2,
        };
        assert!(discr_component(&lines, &g).is_err());
    }
}
