use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{Rat, RatMat};

/// Linear subspace of `P^n`, stored as the reduced row echelon basis of
/// its affine cone. The echelon form is canonical, so `==` is equality of
/// subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: RatMat,
}

impl LinearSubspace {
    /// Span of the rows of `rows`, which must have `ambient_dim + 1`
    /// columns.
    pub fn span(ambient_dim: usize, rows: &RatMat) -> Result<Self> {
        if rows.cols() != ambient_dim + 1 {
            return Err(Error::InvalidSubspace(format!(
                "rows of length {} do not live in P^{ambient_dim}",
                rows.cols()
            )));
        }
        Ok(LinearSubspace { ambient_dim, basis: rows.rref().0 })
    }

    /// Span of the given coordinate vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        Self::span(ambient_dim, &RatMat::from_rows(ambient_dim + 1, vectors)?)
    }

    /// A single point; rejects the zero vector.
    pub fn point(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() || coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidSubspace("the zero vector is not a point".into()));
        }
        let n = coords.len() - 1;
        Self::from_vectors(n, vec![coords])
    }

    pub fn empty(ambient_dim: usize) -> Self {
        LinearSubspace { ambient_dim, basis: RatMat::zeros(0, ambient_dim + 1) }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        LinearSubspace { ambient_dim, basis: RatMat::identity(ambient_dim + 1) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Reduced row echelon basis.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    /// Dimension of the affine cone.
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.rank() as isize - 1
    }

    pub fn is_point(&self) -> bool {
        self.rank() == 1
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::InvalidSubspace(format!(
                "P^{} and P^{} subspaces cannot be combined",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Self::span(self.ambient_dim, &self.basis.vstack(&other.basis)?)
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        Ok(self.join(other)?.rank() == self.rank())
    }

    pub fn contains_point(&self, coords: &[Rat]) -> Result<bool> {
        self.contains(&Self::point(coords.to_vec())?)
    }

    /// Dimension of the intersection, from the dimension of the join.
    pub fn meet_dim(&self, other: &Self) -> Result<isize> {
        let j = self.join(other)?;
        Ok(self.dim() + other.dim() - j.dim())
    }

    /// Places this subspace into coordinates `offset..offset + n + 1` of
    /// `P^total`, zero elsewhere.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.ambient_dim + 1 > total + 1 {
            return Err(Error::InvalidSubspace(format!(
                "block at {offset} of width {} overflows P^{total}",
                self.ambient_dim + 1
            )));
        }
        let rows = self
            .basis
            .to_rows()
            .into_iter()
            .map(|r| {
                let mut v = vec![Rat::zero(); total + 1];
                v[offset..offset + r.len()].clone_from_slice(&r);
                v
            })
            .collect();
        Self::from_vectors(total, rows)
    }

    /// Coordinates `offset..offset + width` of every basis vector, as a
    /// subspace of `P^(width-1)`.
    pub fn restrict(&self, offset: usize, width: usize) -> Result<Self> {
        let rows = self
            .basis
            .to_rows()
            .into_iter()
            .map(|r| r[offset..offset + width].to_vec())
            .collect();
        Self::from_vectors(width - 1, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn v(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn equality_is_canonical() {
        let a = LinearSubspace::from_vectors(3, vec![v(&[1, 1, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let b = LinearSubspace::from_vectors(3, vec![v(&[1, 0, 0, 0]), v(&[0, 2, 0, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn join_meet_and_containment() {
        let l1 = LinearSubspace::from_vectors(3, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let l2 = LinearSubspace::from_vectors(3, vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(l1.join(&l2).unwrap(), LinearSubspace::whole(3));
        assert_eq!(l1.meet_dim(&l2).unwrap(), -1);
        assert!(l1.contains_point(&v(&[3, 4, 0, 0])).unwrap());
        assert!(!l1.contains_point(&v(&[3, 4, 1, 0])).unwrap());
        assert!(LinearSubspace::point(v(&[0, 0])).is_err());
    }

    #[test]
    fn embed_and_restrict() {
        let p = LinearSubspace::point(v(&[1, 2])).unwrap();
        let e = p.embed(2, 4).unwrap();
        assert_eq!(e.basis().row(0), &v(&[0, 0, 1, 2, 0])[..]);
        assert_eq!(e.restrict(2, 2).unwrap(), p);
        assert!(p.embed(4, 4).is_err());
    }
}
