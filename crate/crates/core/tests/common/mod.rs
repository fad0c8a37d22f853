//! Independent oracles and instance pools shared by the integration tests.
//!
//! The oracles work from the raw coefficient rows of the curves with their
//! own derivative and elimination code; they do not call the engine's jet
//! or rank routines.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use osculate::constructions::{monomial_curve, rational_normal_curve};
use osculate::curvekit::{CurvePoint, RationalCurve};
use osculate::exactmath::{int, Rat, UniPoly};
use osculate::scrollkit::{build_scroll, DecomposableScroll};

/// Affine coefficient lists, lowest degree first, of each coordinate.
/// `at_infinity` reverses them to give the chart `s = 1/t`.
fn coordinates(c: &RationalCurve, at_infinity: bool) -> Vec<Vec<Rat>> {
    c.forms()
        .iter()
        .map(|f| {
            let mut v = f.coeffs().to_vec();
            if at_infinity {
                v.reverse();
            }
            v
        })
        .collect()
}

fn falling(j: usize, a: usize) -> BigInt {
    (0..a).fold(BigInt::one(), |acc, i| acc * BigInt::from(j - i))
}

/// `a`-th derivative of each coordinate at `t`.
fn derivative(coords: &[Vec<Rat>], a: usize, t: &Rat) -> Vec<Rat> {
    coords
        .iter()
        .map(|row| {
            row.iter().enumerate().skip(a).fold(Rat::zero(), |acc, (j, c)| {
                let mut term = c * Rat::from_integer(falling(j, a));
                for _ in 0..j - a {
                    term *= t;
                }
                acc + term
            })
        })
        .collect()
}

/// Row rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        let pivot_row: Vec<Rat> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// `dim Osc^k` of a curve at `t` (`None` is the point at infinity).
pub fn curve_osc_dim(c: &RationalCurve, k: usize, t: Option<&Rat>) -> usize {
    let coords = coordinates(c, t.is_none());
    let zero = Rat::zero();
    let t = t.unwrap_or(&zero);
    rank((0..=k).map(|a| derivative(&coords, a, t)).collect()) - 1
}

/// `dim Osc^k` of a scroll at `(t; lambda)`, spanned by the partial
/// derivatives of order at most `k` of the cone map
/// `(t, lambda) -> (lambda_1 C_1(t), ..., lambda_n C_n(t))`.
/// At infinity the curves are read in the chart `s = 1/t` and `lambda`
/// are the coordinates there.
pub fn scroll_osc_dim(sc: &DecomposableScroll, k: usize, t: Option<&Rat>, lambda: &[Rat]) -> usize {
    let zero = Rat::zero();
    let at = t.unwrap_or(&zero);
    let coords: Vec<Vec<Vec<Rat>>> = sc.curves().iter().map(|c| coordinates(c, t.is_none())).collect();
    let width: usize = coords.iter().map(Vec::len).sum();
    let mut rows = Vec::new();
    for a in 0..=k {
        let mut row = Vec::with_capacity(width);
        for (i, co) in coords.iter().enumerate() {
            row.extend(derivative(co, a, at).into_iter().map(|x| x * &lambda[i]));
        }
        rows.push(row);
    }
    for a in 0..k {
        for (i, co) in coords.iter().enumerate() {
            let mut row = vec![Rat::zero(); width];
            let off: usize = coords[..i].iter().map(Vec::len).sum();
            for (j, x) in derivative(co, a, at).into_iter().enumerate() {
                row[off + j] = x;
            }
            rows.push(row);
        }
    }
    rank(rows) - 1
}

/// Pool of embedded curves used to build random scrolls, built once since
/// the embedding checks are not free.
pub fn curve_pool() -> &'static [RationalCurve] {
    static POOL: OnceLock<Vec<RationalCurve>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut pool: Vec<RationalCurve> = (1..=4).map(|d| rational_normal_curve(d).unwrap()).collect();
        pool.push(monomial_curve(&[0, 1, 3, 4], 4).unwrap());
        pool.push(monomial_curve(&[0, 1, 2, 4, 5], 5).unwrap());
        pool.push(irrational_flex_curve());
        pool
    })
}

/// `(1, t, t^4 - 12 t^2, 3 t^5 - 20 t^3)`, whose flexes are irrational.
pub fn irrational_flex_curve() -> RationalCurve {
    let p = |c: &[i64]| UniPoly::from_ints(c);
    RationalCurve::from_affine(&[p(&[1]), p(&[0, 1]), p(&[0, 0, -12, 0, 1]), p(&[0, 0, 0, -20, 0, 3])], "irr")
        .unwrap()
}

/// `(1, t, t^3, t^4)`: flexes at `t = 0` and `inf`.
pub fn flexed_quartic() -> RationalCurve {
    monomial_curve(&[0, 1, 3, 4], 4).unwrap()
}

pub fn scroll_of(pool: &[RationalCurve], picks: &[usize]) -> DecomposableScroll {
    build_scroll(picks.iter().map(|&i| pool[i].clone()).collect()).unwrap()
}

pub fn point(t: Option<(i64, i64)>) -> CurvePoint {
    match t {
        Some((p, q)) => CurvePoint::affine(Rat::new(p.into(), q.into())),
        None => CurvePoint::infinity(),
    }
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}
