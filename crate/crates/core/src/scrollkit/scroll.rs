use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::curvekit::{check_embedding, Chart, CurvePoint, RationalCurve};
use crate::error::{Error, Result};
use crate::exactmath::{format_rat, parse_rat, Rat};

/// Scroll `S(C_1, ..., C_n)` swept by the lines joining corresponding
/// points of curves placed in complementary coordinate blocks of `P^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposableScroll {
    curves: Vec<RationalCurve>,
    offsets: Vec<usize>,
    ambient_dim: usize,
    label: String,
}

/// Assembles a scroll from at least two embedded rational curves. Curve
/// `i` occupies coordinates `offset_i .. offset_i + r_i + 1`.
pub fn build_scroll(curves: Vec<RationalCurve>) -> Result<DecomposableScroll> {
    if curves.len() < 2 {
        return Err(Error::InvalidScroll(format!(
            "a scroll needs at least two curves, got {}",
            curves.len()
        )));
    }
    for (i, c) in curves.iter().enumerate() {
        let report = check_embedding(c);
        if !report.passed() {
            return Err(Error::NotEmbedded(format!(
                "curve {} ({}): {}",
                i + 1,
                c.label(),
                report.summary()
            )));
        }
    }
    let mut offsets = Vec::with_capacity(curves.len());
    let mut next = 0;
    for c in &curves {
        offsets.push(next);
        next += c.ambient_dim() + 1;
    }
    let label = format!("S({})", curves.iter().map(RationalCurve::label).join(", "));
    Ok(DecomposableScroll { curves, offsets, ambient_dim: next - 1, label })
}

impl DecomposableScroll {
    pub fn curves(&self) -> &[RationalCurve] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &RationalCurve {
        &self.curves[i]
    }

    /// Number of generating curves.
    pub fn n(&self) -> usize {
        self.curves.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `N`, with `N + 1 = sum (r_i + 1)`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.curves.iter().map(RationalCurve::degree).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Indices of the generating curves that are lines.
    pub fn line_indices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.curves[i].is_line()).collect()
    }

    /// True when every generating curve is a rational normal curve.
    pub fn is_rational_normal(&self) -> bool {
        self.curves.iter().all(|c| c.degree() == c.ambient_dim())
    }

    /// Checks arity and normalizes the base point to the affine chart where
    /// possible, rescaling the fiber so that its pivot coordinate is 1.
    pub fn canonical_point(&self, x: &ScrollPoint) -> Result<ScrollPoint> {
        if x.fiber.len() != self.n() {
            return Err(Error::InvalidPoint(format!(
                "fiber coordinates {} do not match {} curves",
                x.fiber.len(),
                self.n()
            )));
        }
        let mut fiber = x.fiber.clone();
        let base = x.base.canonical();
        if x.base.chart == Chart::Infinity && base.chart == Chart::Affine {
            // F_i(s, 1) = s^d_i F_i(1, 1/s)
            let s = &x.base.parameter;
            for (l, c) in fiber.iter_mut().zip(&self.curves) {
                *l = &*l * num_traits::pow(s.clone(), c.degree());
            }
        }
        ScrollPoint::new(base, fiber)
    }

    /// Homogeneous coordinates of `x` in `P^N`.
    pub fn image(&self, x: &ScrollPoint) -> Result<Vec<Rat>> {
        if x.fiber.len() != self.n() {
            return Err(Error::InvalidPoint(format!(
                "fiber coordinates {} do not match {} curves",
                x.fiber.len(),
                self.n()
            )));
        }
        let mut v = vec![Rat::zero(); self.ambient_dim + 1];
        for (i, c) in self.curves.iter().enumerate() {
            for (j, y) in c.point(&x.base).into_iter().enumerate() {
                v[self.offsets[i] + j] = &x.fiber[i] * y;
            }
        }
        Ok(v)
    }
}

impl fmt::Display for DecomposableScroll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in P^{}", self.label, self.ambient_dim)
    }
}

/// A point of the scroll: a base parameter and fiber coordinates
/// `(lambda_1 : ... : lambda_n)` on the span of the corresponding curve
/// points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScrollPoint {
    pub base: CurvePoint,
    pub fiber: Vec<Rat>,
}

impl ScrollPoint {
    /// Rejects the zero fiber vector; normalizes the pivot coordinate to 1.
    pub fn new(base: CurvePoint, fiber: Vec<Rat>) -> Result<Self> {
        let Some(pivot) = fiber.iter().rposition(|l| !l.is_zero()) else {
            return Err(Error::InvalidPoint("fiber coordinates are all zero".into()));
        };
        let scale = fiber[pivot].recip();
        let fiber = fiber.into_iter().map(|l| l * &scale).collect();
        Ok(ScrollPoint { base, fiber })
    }

    /// The point of `C_i` over `base`, as a point of the scroll.
    pub fn vertex(base: CurvePoint, i: usize, n: usize) -> Self {
        let mut fiber = vec![Rat::zero(); n];
        fiber[i] = Rat::one();
        ScrollPoint { base, fiber }
    }

    /// The point with coordinate 1 on every index of `support` and 0
    /// elsewhere.
    pub fn indicator(base: CurvePoint, support: &BTreeSet<usize>, n: usize) -> Result<Self> {
        let fiber = (0..n).map(|i| if support.contains(&i) { Rat::one() } else { Rat::zero() }).collect();
        Self::new(base, fiber)
    }

    /// Largest index with a nonzero coordinate.
    pub fn pivot(&self) -> usize {
        self.fiber.iter().rposition(|l| !l.is_zero()).expect("nonzero fiber")
    }

    /// Indices with nonzero coordinates.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.fiber.len()).filter(|&i| !self.fiber[i].is_zero()).collect()
    }

    /// Parses `"<base>;<l1>,<l2>,..."`, e.g. `t=0;0,1` or `inf;1,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let (base, fiber) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidPoint(format!("expected '<base>;<fiber>', got '{text}'")))?;
        let base = CurvePoint::parse(base.trim())?;
        let fiber = fiber
            .split(',')
            .map(|s| parse_rat(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, fiber)
    }
}

impl fmt::Display for ScrollPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.base, self.fiber.iter().map(format_rat).join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio, BinForm};

    fn rnc(d: usize) -> RationalCurve {
        RationalCurve::new((0..=d).map(|j| BinForm::monomial(d, j)).collect(), format!("C{d}"))
            .unwrap()
    }

    #[test]
    fn cubic_scroll_layout() {
        let s = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        assert_eq!(s.ambient_dim(), 4);
        assert_eq!(s.offsets(), &[0, 2]);
        assert_eq!(s.line_indices(), vec![0]);
        assert!(s.is_rational_normal());
        let x = ScrollPoint::parse("t=2;1,1").unwrap();
        assert_eq!(s.image(&x).unwrap(), [1, 2, 1, 2, 4].map(int).to_vec());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_scroll(vec![rnc(2)]).is_err());
        assert!(ScrollPoint::parse("t=0;0,0").is_err());
        assert!(ScrollPoint::parse("t=0").is_err());
        let s = build_scroll(vec![rnc(1), rnc(2)]).unwrap();
        assert!(s.image(&ScrollPoint::parse("t=0;1,1,1").unwrap()).is_err());
    }

    #[test]
    fn chart_change_keeps_the_image_point() {
        let s = build_scroll(vec![rnc(1), rnc(3)]).unwrap();
        let x = ScrollPoint::new(CurvePoint::in_infinity_chart(ratio(1, 2)), vec![int(3), int(5)])
            .unwrap();
        let y = s.canonical_point(&x).unwrap();
        assert_eq!(y.base, CurvePoint::affine(int(2)));
        let (a, b) = (s.image(&x).unwrap(), s.image(&y).unwrap());
        // proportional vectors
        let k = &b[0] / &a[0];
        assert!(a.iter().zip(&b).all(|(u, v)| &(u * &k) == v));
        assert_eq!(y.pivot(), 1);
        assert_eq!(x.to_string(), "s=1/2;3/5,1");
    }
}
