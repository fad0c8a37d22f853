use std::fmt;

use num_traits::Zero;

use super::poly::UniPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Binary form of fixed degree `d` in `t0, t1`.
///
/// `coeffs[j]` multiplies `t0^(d-j) * t1^j`. The affine chart sets `t0 = 1`
/// with parameter `t = t1`; the chart at infinity sets `t1 = 1` with
/// parameter `s = t0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinForm {
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::Shape(format!(
                "binary form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinForm { degree, coeffs })
    }

    /// `t0^(d-j) * t1^j`.
    pub fn monomial(degree: usize, j: usize) -> Self {
        assert!(j <= degree);
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[j] = Rat::from_integer(1.into());
        BinForm { degree, coeffs }
    }

    /// Homogenizes an affine polynomial in `t = t1/t0` to degree `degree`.
    pub fn from_affine(p: &UniPoly, degree: usize) -> Result<Self> {
        if p.degree().is_some_and(|e| e > degree) {
            return Err(Error::Shape(format!(
                "polynomial of degree {} does not fit in a form of degree {degree}",
                p.degree().unwrap()
            )));
        }
        Ok(BinForm {
            degree,
            coeffs: (0..=degree).map(|j| p.coeff(j)).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Dehomogenization `t0 = 1`, a polynomial in `t`.
    pub fn affine(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Dehomogenization `t1 = 1`, a polynomial in `s`.
    pub fn at_infinity(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, t0: &Rat, t1: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..self.degree - j {
                term *= t0;
            }
            for _ in 0..j {
                term *= t1;
            }
            acc += term;
        }
        acc
    }

    /// Number of roots in P^1 counted with multiplicity: the degree. For
    /// squarefree forms this is the number of distinct roots.
    pub fn root_count(&self) -> usize {
        self.degree
    }

    /// True if `(0:1)` is a root, i.e. the `t1^d` coefficient vanishes.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.coeffs[self.degree].is_zero()
    }
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            let (a, b) = (self.degree - j, j);
            if a > 0 {
                mono.push(if a == 1 { "t0".to_string() } else { format!("t0^{a}") });
            }
            if b > 0 {
                mono.push(if b == 1 { "t1".to_string() } else { format!("t1^{b}") });
            }
            let c_str = super::rat::format_rat(c);
            terms.push(match (mono.is_empty(), c_str.as_str()) {
                (true, _) => c_str,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                (false, _) => format!("{c_str}*{}", mono.join("*")),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + ").replace("+ -", "- "))
        }
    }
}
