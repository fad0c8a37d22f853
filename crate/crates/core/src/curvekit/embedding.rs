use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::{Chart, CurvePoint, RationalCurve};
use super::locus::{inflectional_locus, BaseLocus, FlexLocus};
use crate::exactmath::{
    det_poly, gcd_degree_modulo, rational_roots, squarefree_part, sylvester, BiPoly, Rat, RatMat,
    UniPoly,
};

/// Largest degree for which the node search is run.
pub const NODE_DEGREE_LIMIT: usize = 12;

/// Outcome of the embedding checks on a parametrization.
///
/// A passing report means the parametrization is verified to be an
/// embedding of `P^1`; it says nothing about the linear system being
/// complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub nondegenerate: bool,
    pub unramified: bool,
    /// Parameters where the first jet drops rank (cusps).
    pub ramification: FlexLocus,
    /// `Some(true)` when no node exists, `Some(false)` when one was found,
    /// `None` when the degree exceeds [`NODE_DEGREE_LIMIT`].
    pub injective: Option<bool>,
    /// Parameters involved in some node.
    pub node_parameters: BaseLocus,
    /// Rational parameter pairs with the same image.
    pub node_pairs: Vec<(CurvePoint, CurvePoint)>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.nondegenerate && self.unramified && self.injective != Some(false)
    }

    /// One-line description of the outcome.
    pub fn summary(&self) -> String {
        let mut problems = Vec::new();
        if !self.nondegenerate {
            problems.push("degenerate image".to_string());
        }
        if !self.unramified {
            let pts = self.ramification.rational_points.iter().map(|p| p.to_string()).join(", ");
            problems.push(format!(
                "ramified at {} point(s) [{pts}]",
                self.ramification.distinct_count
            ));
        }
        if self.injective == Some(false) {
            let pairs = self.node_pairs.iter().map(|(a, b)| format!("{a}~{b}")).join(", ");
            problems.push(format!("not injective [{pairs}]"));
        }
        if problems.is_empty() {
            match self.injective {
                Some(true) => "embedding verified".into(),
                _ => "immersion verified, injectivity not checked".into(),
            }
        } else {
            problems.join("; ")
        }
    }
}

/// Runs the three embedding checks.
pub fn check_embedding(c: &RationalCurve) -> EmbeddingReport {
    let coeffs = RatMat::from_rows(
        c.degree() + 1,
        c.forms().iter().map(|f| f.coeffs().to_vec()).collect(),
    )
    .expect("forms share a degree");
    let nondegenerate = coeffs.rank() == c.forms().len();
    let ramification = inflectional_locus(c, 1);
    let unramified = ramification.is_empty();
    let (injective, node_parameters, node_pairs) = if !unramified {
        // node search assumes an immersion
        (None, BaseLocus::empty(), Vec::new())
    } else if c.degree() > NODE_DEGREE_LIMIT {
        (None, BaseLocus::empty(), Vec::new())
    } else {
        let n = find_nodes(c);
        (Some(n.0.is_empty()), n.0, n.1)
    };
    EmbeddingReport { nondegenerate, unramified, ramification, injective, node_parameters, node_pairs }
}

/// `(F_i(s) F_j(t) - F_j(s) F_i(t)) / (s - t)` as a polynomial in `s` with
/// coefficients in `Q[t]`.
fn divided_difference(fi: &UniPoly, fj: &UniPoly, d: usize) -> BiPoly {
    let n: Vec<UniPoly> = (0..=d)
        .map(|a| &fj.scale(&fi.coeff(a)) - &fi.scale(&fj.coeff(a)))
        .collect();
    if d == 0 {
        return Vec::new();
    }
    let mut q = vec![UniPoly::zero(); d];
    q[d - 1] = n[d].clone();
    for a in (1..d).rev() {
        q[a - 1] = &n[a] + &(&UniPoly::x() * &q[a]);
    }
    debug_assert!((&n[0] + &(&UniPoly::x() * &q[0])).is_zero());
    while q.last().is_some_and(UniPoly::is_zero) {
        q.pop();
    }
    q
}

fn combine(gs: &[BiPoly], weights: &[i64]) -> BiPoly {
    let len = gs.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|a| {
            gs.iter().zip(weights).fold(UniPoly::zero(), |acc, (g, &w)| match g.get(a) {
                Some(c) => &acc + &c.scale(&Rat::from_integer(w.into())),
                None => acc,
            })
        })
        .collect()
}

fn resultant_in_s(a: &BiPoly, b: &BiPoly, formal: usize) -> UniPoly {
    let m = sylvester(a, b, formal, formal);
    det_poly(&m)
}

/// Whether two coordinates define a degree-one map to `P^1` away from at
/// most one base point. Points off the base locus are then separated by
/// the pencil, and a node would need two distinct base points.
fn has_isomorphic_pencil(f: &[UniPoly], d: usize) -> bool {
    (0..f.len()).tuple_combinations().any(|(i, j)| {
        let (Some(di), Some(dj)) = (f[i].degree(), f[j].degree()) else { return false };
        let g = f[i].gcd(&f[j]);
        let (a, b) = (f[i].exact_div(&g), f[j].exact_div(&g));
        if a.degree().unwrap_or(0).max(b.degree().unwrap_or(0)) != 1 {
            return false;
        }
        let affine_base = squarefree_part(&g).map_or(0, |h| h.degree().unwrap_or(0));
        affine_base + usize::from(di < d && dj < d) <= 1
    })
}

/// Parameters involved in nodes and rational witness pairs. Assumes the
/// curve is unramified.
fn find_nodes(c: &RationalCurve) -> (BaseLocus, Vec<(CurvePoint, CurvePoint)>) {
    let d = c.degree();
    let f = c.chart_polys(Chart::Affine);
    if c.ambient_dim() == 1 {
        // a map to P^1 of degree d is d-to-1
        return if d == 1 { (BaseLocus::empty(), Vec::new()) } else { (BaseLocus::Whole, Vec::new()) };
    }
    if has_isomorphic_pencil(&f, d) {
        return (BaseLocus::empty(), Vec::new());
    }
    resultant_nodes(c, &f)
}

/// Node search through resultants of the divided differences.
fn resultant_nodes(c: &RationalCurve, f: &[UniPoly]) -> (BaseLocus, Vec<(CurvePoint, CurvePoint)>) {
    let d = c.degree();
    let gs: Vec<BiPoly> = (0..f.len())
        .tuple_combinations()
        .map(|(i, j)| divided_difference(&f[i], &f[j], d))
        .collect();
    let formal = gs.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1);

    // Common parameters of all G_ij are roots of the resultant of any two
    // combinations; intersecting two resultants discards most spurious roots.
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut res = UniPoly::zero();
    let mut found = 0;
    for _ in 0..8 {
        let mut w = || (0..gs.len()).map(|_| rng.gen_range(-20i64..=20)).collect::<Vec<_>>();
        let (wa, wb) = (w(), w());
        let r = resultant_in_s(&combine(&gs, &wa), &combine(&gs, &wb), formal);
        if r.is_zero() {
            continue;
        }
        res = res.gcd(&r);
        found += 1;
        if found == 2 || res.is_unit() {
            break;
        }
    }
    if res.is_zero() {
        // coincidences along a whole curve of parameter pairs
        return (BaseLocus::Whole, Vec::new());
    }

    let h = squarefree_part(&res).expect("nonzero resultant");
    let mut affine_nodes = UniPoly::one();
    if !h.is_unit() {
        for (factor, deg) in gcd_degree_modulo(&gs, &h) {
            if deg != Some(0) {
                affine_nodes = &affine_nodes * &factor;
            }
        }
    }

    // pairs with (0:1): F(t) proportional to the leading coefficient vector
    let e: Vec<Rat> = c.forms().iter().map(|form| form.coeffs()[d].clone()).collect();
    let inf_gcd = (0..f.len()).tuple_combinations().fold(UniPoly::zero(), |g, (i, j)| {
        g.gcd(&(&f[j].scale(&e[i]) - &f[i].scale(&e[j])))
    });
    let inf_nodes = !inf_gcd.is_unit();
    let inf_part = if inf_nodes && !inf_gcd.is_zero() { inf_gcd.clone() } else { UniPoly::one() };
    let params = BaseLocus::finite(&(&affine_nodes * &inf_part), inf_nodes);

    let mut pairs = Vec::new();
    for t0 in rational_roots(&affine_nodes).unwrap_or_default() {
        let at: Vec<UniPoly> = gs
            .iter()
            .map(|g| UniPoly::new(g.iter().map(|cf| cf.eval(&t0)).collect()))
            .collect();
        let common = at.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
        if common.is_zero() {
            continue;
        }
        for s0 in rational_roots(&common).unwrap_or_default() {
            if s0 < t0 {
                pairs.push((CurvePoint::affine(s0), CurvePoint::affine(t0.clone())));
            }
        }
    }
    if inf_nodes && !inf_gcd.is_zero() {
        for t0 in rational_roots(&inf_gcd).unwrap_or_default() {
            pairs.push((CurvePoint::affine(t0), CurvePoint::infinity()));
        }
    }
    (params, pairs)
}
