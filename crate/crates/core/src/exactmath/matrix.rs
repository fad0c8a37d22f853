use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{squarefree_part, UniPoly};
use super::quotient::rank_modulo;
use super::rat::{denominator_lcm, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMat = Mat<Rat>;
pub type PolyMat = Mat<UniPoly>;

impl<T: Clone> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub(crate) fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    /// Builds from row vectors that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Mat { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.cols, cols: self.rows, data }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

/// Outcome of fraction-free elimination.
struct Elimination {
    rank: usize,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    /// Determinant of the pivot submatrix (rows in pivot order).
    last_pivot: BigInt,
    swaps: usize,
}

/// Bareiss elimination with column skipping. After each step every
/// remaining entry is a minor of the input, so all divisions are exact.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Elimination {
    let m = a.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    let mut swaps = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            perm.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    perm.truncate(r);
    Elimination { rank: r, pivot_rows: perm, pivot_cols, last_pivot: prev, swaps }
}

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
fn integer_rows(m: &RatMat) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            let out = row
                .iter()
                .map(|v| (v * Rat::from_integer(l.clone())).to_integer())
                .collect();
            scale *= l;
            out
        })
        .collect();
    (rows, scale)
}

/// Row rank of a rational matrix by fraction-free elimination.
pub fn rank_exact(m: &RatMat) -> usize {
    m.rank()
}

impl Mat<Rat> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    fn eliminate(&self) -> Elimination {
        let (rows, _) = integer_rows(self);
        bareiss(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }

    /// Determinant; panics for non-square input.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Rat::one();
        }
        let (rows, scale) = integer_rows(self);
        let e = bareiss(rows, self.cols);
        if e.rank < self.rows {
            return Rat::zero();
        }
        let sign = if e.swaps % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        Rat::new(sign * e.last_pivot, scale)
    }

    /// Row and column indices of a nonzero maximal minor.
    pub fn pivot_minor(&self) -> (Vec<usize>, Vec<usize>) {
        let e = self.eliminate();
        (e.pivot_rows, e.pivot_cols)
    }

    /// Reduced row echelon form with zero rows removed, plus pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.len() {
                break;
            }
        }
        a.truncate(r);
        (Mat::from_rows(self.cols, a).expect("rref keeps width"), pivots)
    }

    pub fn mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies the row vector `v` by this matrix.
    pub fn left_apply(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(Rat::zero(), |acc, (i, x)| acc + x * self.get(i, j))
            })
            .collect()
    }
}

impl Mat<UniPoly> {
    pub fn eval(&self, t: &Rat) -> RatMat {
        self.map(|p| p.eval(t))
    }

    pub fn from_rat(m: &RatMat) -> Self {
        m.map(|v| UniPoly::constant(v.clone()))
    }

    fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().filter_map(UniPoly::degree).max())
            .collect()
    }

    fn col_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.get(i, j).degree()).max())
            .collect()
    }

    /// Upper bound for the degree of every `size x size` minor, or `None`
    /// when all such minors vanish because fewer than `size` rows or
    /// columns are nonzero.
    pub fn minor_degree_bound(&self, size: usize) -> Option<usize> {
        fn top_sum(mut degs: Vec<Option<usize>>, k: usize) -> Option<usize> {
            degs.retain(Option::is_some);
            if degs.len() < k {
                return None;
            }
            degs.sort_unstable_by(|a, b| b.cmp(a));
            Some(degs.iter().take(k).map(|d| d.unwrap()).sum())
        }
        let r = top_sum(self.row_degrees(), size)?;
        let c = top_sum(self.col_degrees(), size)?;
        Some(r.min(c))
    }
}

/// A nonzero minor certifying a rank lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Parameter value at which the minor was seen to be nonzero.
    pub point: Rat,
    /// Value of the minor there.
    pub value: Rat,
}

/// Generic rank of a polynomial matrix with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: usize,
    pub witness: Witness,
    /// Number of integer evaluation points used.
    pub points_checked: usize,
    /// Degree bound of the `(rank+1)`-minors that justified stopping, when
    /// the rank is not full. The minors vanish at `points_checked > bound`
    /// points, hence identically.
    pub vanishing_bound: Option<usize>,
}

impl GenericRank {
    /// Determinant polynomial of the witness minor.
    pub fn witness_det(&self, m: &PolyMat) -> UniPoly {
        det_poly(&m.select(&self.witness.rows, &self.witness.cols))
    }
}

/// Maximum rank of `m(t)` over all parameter values.
///
/// Evaluates at `t = 0, 1, 2, ...`. A nonzero minor at one point proves
/// the lower bound; once the number of points exceeds the degree bound of
/// the next larger minors, all of them have vanished at more points than
/// their degree and so are identically zero.
pub fn generic_rank(m: &PolyMat) -> GenericRank {
    let full = m.rows.min(m.cols);
    let mut best: Option<(usize, Witness)> = None;
    let mut checked = 0usize;
    let mut t = 0i64;
    loop {
        let point = Rat::from_integer(t.into());
        let at = m.eval(&point);
        let e = at.eliminate();
        checked += 1;
        if best.as_ref().map_or(true, |(r, _)| e.rank > *r) {
            let sub = at.select(&e.pivot_rows, &e.pivot_cols);
            let witness = Witness {
                rows: e.pivot_rows.clone(),
                cols: e.pivot_cols.clone(),
                value: sub.det(),
                point: point.clone(),
            };
            best = Some((e.rank, witness));
        }
        let (rank, _) = best.as_ref().unwrap();
        if *rank == full {
            let (rank, witness) = best.unwrap();
            return GenericRank { rank, witness, points_checked: checked, vanishing_bound: None };
        }
        match m.minor_degree_bound(rank + 1) {
            Some(bound) if checked <= bound => {}
            bound => {
                let (rank, witness) = best.unwrap();
                return GenericRank {
                    rank,
                    witness,
                    points_checked: checked,
                    vanishing_bound: bound,
                };
            }
        }
        t += 1;
    }
}

/// Determinant of a square polynomial matrix, by evaluation at
/// `deg bound + 1` integer points and interpolation.
pub fn det_poly(m: &PolyMat) -> UniPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let Some(bound) = m.minor_degree_bound(m.rows) else {
        return if m.rows == 0 { UniPoly::one() } else { UniPoly::zero() };
    };
    let xs: Vec<Rat> = (0..=bound as i64).map(|t| Rat::from_integer(t.into())).collect();
    let ys: Vec<Rat> = xs.iter().map(|x| m.eval(x).det()).collect();
    UniPoly::interpolate(&xs, &ys)
}

/// Monic gcd of all `size x size` minors; zero if they all vanish and one
/// for `size = 0`. Stops as soon as the running gcd is constant.
pub fn minors_gcd(m: &PolyMat, size: usize) -> UniPoly {
    assert!(size <= m.rows.min(m.cols), "minor size exceeds matrix shape");
    if size == 0 {
        return UniPoly::one();
    }
    let mut g = UniPoly::zero();
    for rows in (0..m.rows).combinations(size) {
        for cols in (0..m.cols).combinations(size) {
            let d = det_poly(&m.select(&rows, &cols));
            if d.is_zero() {
                continue;
            }
            g = g.gcd(&d);
            if g.is_unit() {
                return UniPoly::one();
            }
        }
    }
    g
}

/// Parameters where the rank of `m(t)` drops below `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DropLocus {
    /// The rank is below `target` for every parameter.
    Everywhere,
    /// Monic squarefree polynomial whose roots are exactly the drop points
    /// in this chart (the constant 1 when there are none).
    Roots(UniPoly),
}

fn random_int_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PolyMat {
    Mat::from_vec(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| UniPoly::constant(Rat::from_integer(rng.gen_range(-20i64..=20).into())))
            .collect(),
    )
}

fn poly_mat_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let mut out = PolyMat::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let v = out.get(i, j) + &(x * b.get(k, j));
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Exact locus where `rank m(t) < target`.
///
/// Two random integer compressions `P m Q` of size `target` have
/// determinants lying in the ideal of the `target`-minors, so their gcd
/// vanishes on the whole drop locus. Spurious roots are then discarded by
/// computing the rank over each factor of the squarefree gcd.
pub fn rank_drop_locus(m: &PolyMat, target: usize) -> DropLocus {
    if target == 0 {
        return DropLocus::Roots(UniPoly::one());
    }
    if target > m.rows.min(m.cols) {
        return DropLocus::Everywhere;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f_d20b);
    let compressed_det = |rng: &mut ChaCha8Rng| {
        let left = if m.rows == target { None } else { Some(random_int_mat(rng, target, m.rows)) };
        let right = if m.cols == target { None } else { Some(random_int_mat(rng, m.cols, target)) };
        let mut c = match left {
            Some(p) => poly_mat_mul(&p, m),
            None => m.clone(),
        };
        if let Some(q) = right {
            c = poly_mat_mul(&c, &q);
        }
        det_poly(&c)
    };
    let mut dets = Vec::new();
    let mut attempts = 0;
    while dets.len() < 2 {
        attempts += 1;
        let d = compressed_det(&mut rng);
        if d.is_zero() {
            if attempts == 1 && generic_rank(m).rank < target {
                return DropLocus::Everywhere;
            }
            assert!(attempts < 64, "random compressions keep vanishing");
            continue;
        }
        dets.push(d);
        // a square matrix needs no second compression
        if m.rows == target && m.cols == target {
            break;
        }
    }
    let h = dets.iter().fold(UniPoly::zero(), |g, d| g.gcd(d));
    let h = squarefree_part(&h).expect("nonzero gcd");
    if h.is_unit() {
        return DropLocus::Roots(h);
    }
    let mut out = UniPoly::one();
    for (factor, rank) in rank_modulo(m, &h) {
        if rank < target {
            out = &out * &factor;
        }
    }
    DropLocus::Roots(out.monic())
}
