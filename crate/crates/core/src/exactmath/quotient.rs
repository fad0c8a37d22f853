//! Computation over `Q[t]/(h)` for squarefree `h` by dynamic evaluation:
//! whenever a zero test is inconclusive the modulus is split into coprime
//! factors and each branch continues separately.

use super::matrix::PolyMat;
use super::poly::UniPoly;

/// Polynomial in a second variable `s` with coefficients in `Q[t]`;
/// index `a` holds the coefficient of `s^a`.
pub type BiPoly = Vec<UniPoly>;

enum Class {
    Zero,
    Unit(UniPoly),
    Split(UniPoly, UniPoly),
}

fn classify(a: &UniPoly, h: &UniPoly) -> Class {
    let a = a.rem(h);
    if a.is_zero() {
        return Class::Zero;
    }
    let (g, u, _) = a.ext_gcd(h);
    if g.is_unit() {
        Class::Unit(u.rem(h))
    } else {
        Class::Split(g.clone(), h.exact_div(&g).monic())
    }
}

fn mul_mod(a: &UniPoly, b: &UniPoly, h: &UniPoly) -> UniPoly {
    (a * b).rem(h)
}

/// Rank of `m` over each residue field branch of `Q[t]/(h)`.
///
/// Returns pairwise coprime monic factors whose product is `h`, each with
/// the rank of `m(t)` at every root of that factor.
pub fn rank_modulo(m: &PolyMat, h: &UniPoly) -> Vec<(UniPoly, usize)> {
    let reduce = |rows: &[Vec<UniPoly>], h: &UniPoly| -> Vec<Vec<UniPoly>> {
        rows.iter()
            .map(|r| r.iter().map(|p| p.rem(h)).collect())
            .collect()
    };
    let mut out = Vec::new();
    let mut stack = vec![(h.monic(), reduce(&m.to_rows(), h), 0usize, 0usize)];
    'branch: while let Some((h, mut a, mut r, mut c)) = stack.pop() {
        while c < m.cols() && r < a.len() {
            let mut found = false;
            for i in r..a.len() {
                match classify(&a[i][c], &h) {
                    Class::Zero => continue,
                    Class::Split(g1, g2) => {
                        stack.push((g2.clone(), reduce(&a, &g2), r, c));
                        stack.push((g1.clone(), reduce(&a, &g1), r, c));
                        continue 'branch;
                    }
                    Class::Unit(inv) => {
                        a.swap(i, r);
                        let pivot: Vec<UniPoly> =
                            a[r].iter().map(|p| mul_mod(p, &inv, &h)).collect();
                        for row in a.iter_mut().skip(r + 1) {
                            let f = row[c].clone();
                            if f.is_zero() {
                                continue;
                            }
                            for (v, pv) in row.iter_mut().zip(&pivot) {
                                *v = (&*v - &(&f * pv)).rem(&h);
                            }
                        }
                        a[r] = pivot;
                        found = true;
                        break;
                    }
                }
            }
            if found {
                r += 1;
            }
            c += 1;
        }
        out.push((h, r));
    }
    out
}

/// Makes `p` monic in `s` over `Q[t]/(h)`, dropping leading coefficients
/// that vanish. `Err` carries a splitting of `h`.
fn normalize(p: &[UniPoly], h: &UniPoly) -> Result<BiPoly, (UniPoly, UniPoly)> {
    let mut p: BiPoly = p.iter().map(|c| c.rem(h)).collect();
    while let Some(top) = p.last() {
        match classify(top, h) {
            Class::Zero => {
                p.pop();
            }
            Class::Split(g1, g2) => return Err((g1, g2)),
            Class::Unit(inv) => {
                return Ok(p.iter().map(|c| mul_mod(c, &inv, h)).collect());
            }
        }
    }
    Ok(p)
}

/// Remainder of `a` by monic `b` in `s`.
fn rem_monic(a: &BiPoly, b: &BiPoly, h: &UniPoly) -> BiPoly {
    let mut a = a.clone();
    let db = b.len() - 1;
    while a.len() > db && !a.is_empty() {
        let shift = a.len() - 1 - db;
        let f = a.last().unwrap().clone();
        for (j, bc) in b.iter().enumerate() {
            a[shift + j] = (&a[shift + j] - &(&f * bc)).rem(h);
        }
        a.pop();
        while a.last().is_some_and(UniPoly::is_zero) {
            a.pop();
        }
    }
    a
}

fn gcd_branch(polys: &[BiPoly], h: &UniPoly) -> Result<BiPoly, (UniPoly, UniPoly)> {
    let mut acc: BiPoly = Vec::new();
    for p in polys {
        let mut b = normalize(p, h)?;
        while !b.is_empty() {
            let r = if acc.is_empty() { Vec::new() } else { rem_monic(&acc, &b, h) };
            acc = b;
            b = normalize(&r, h)?;
        }
    }
    Ok(acc)
}

/// Degree in `s` of the gcd of `polys` over each branch of `Q[t]/(h)`.
///
/// `None` means every polynomial vanishes identically on that branch.
pub fn gcd_degree_modulo(polys: &[BiPoly], h: &UniPoly) -> Vec<(UniPoly, Option<usize>)> {
    let mut out = Vec::new();
    let mut stack = vec![h.monic()];
    while let Some(h) = stack.pop() {
        match gcd_branch(polys, &h) {
            Ok(g) => out.push((h, g.len().checked_sub(1))),
            Err((g1, g2)) => {
                stack.push(g2);
                stack.push(g1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::matrix::Mat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn rank_splits_over_factors() {
        // diag(t, t - 1) modulo t(t - 1)(t - 2)
        let m = Mat::from_rows(2, vec![vec![p(&[0, 1]), p(&[])], vec![p(&[]), p(&[-1, 1])]]).unwrap();
        let h = &(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[-2, 1]);
        let mut res = rank_modulo(&m, &h);
        res.sort_by_key(|(f, _)| f.eval(&crate::exactmath::int(5)));
        let ranks: Vec<(UniPoly, usize)> = res;
        let total = ranks.iter().fold(UniPoly::one(), |acc, (f, _)| &acc * f);
        assert_eq!(total, h);
        for (f, r) in ranks {
            let expected = if f == p(&[-2, 1]) { 2 } else { 1 };
            assert_eq!(r, expected, "factor {f}");
        }
    }

    #[test]
    fn gcd_degree_detects_common_roots() {
        // s - t and s + t share a root in s only when t = 0
        let a: BiPoly = vec![p(&[0, -1]), p(&[1])];
        let b: BiPoly = vec![p(&[0, 1]), p(&[1])];
        let h = &p(&[0, 1]) * &p(&[-1, 1]);
        let res = gcd_degree_modulo(&[a, b], &h);
        for (f, d) in res {
            if f == p(&[0, 1]) {
                assert_eq!(d, Some(1));
            } else {
                assert_eq!(d, Some(0));
            }
        }
    }
}
