use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::embedding::check_embedding;
use crate::error::{Error, Result};
use crate::exactmath::{format_rat, parse_rat, BinForm, Rat, RatMat, UniPoly};

/// Affine chart of the parameter line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `t0 = 1`, parameter `t = t1`.
    Affine,
    /// `t1 = 1`, parameter `s = t0`.
    Infinity,
}

/// A rational point of the parameter line `P^1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint {
    pub chart: Chart,
    pub parameter: Rat,
}

impl CurvePoint {
    pub fn affine(t: Rat) -> Self {
        CurvePoint { chart: Chart::Affine, parameter: t }
    }

    /// The point `(0:1)`.
    pub fn infinity() -> Self {
        CurvePoint { chart: Chart::Infinity, parameter: Rat::zero() }
    }

    /// A point given in the chart at infinity by `s`, not canonicalized.
    pub fn in_infinity_chart(s: Rat) -> Self {
        CurvePoint { chart: Chart::Infinity, parameter: s }
    }

    /// Affine representation whenever possible; only `(0:1)` stays in the
    /// chart at infinity.
    pub fn canonical(&self) -> Self {
        match self.chart {
            Chart::Infinity if !self.parameter.is_zero() => Self::affine(self.parameter.recip()),
            _ => self.clone(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.chart == Chart::Infinity && self.parameter.is_zero()
    }

    /// Homogeneous coordinates `(t0, t1)`.
    pub fn homogeneous(&self) -> (Rat, Rat) {
        match self.chart {
            Chart::Affine => (Rat::one(), self.parameter.clone()),
            Chart::Infinity => (self.parameter.clone(), Rat::one()),
        }
    }

    /// Parses `t=<rat>`, `s=<rat>` or `inf`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s == "inf" || s == "infinity" {
            return Ok(Self::infinity());
        }
        if let Some(v) = s.strip_prefix("t=") {
            return Ok(Self::affine(parse_rat(v)?));
        }
        if let Some(v) = s.strip_prefix("s=") {
            return Ok(Self::in_infinity_chart(parse_rat(v)?));
        }
        Err(Error::InvalidPoint(format!(
            "expected `t=<rational>`, `s=<rational>` or `inf`, got {text:?}"
        )))
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chart {
            Chart::Affine => write!(f, "t={}", format_rat(&self.parameter)),
            Chart::Infinity if self.parameter.is_zero() => f.write_str("inf"),
            Chart::Infinity => write!(f, "s={}", format_rat(&self.parameter)),
        }
    }
}

/// Non-degenerate rational curve in `P^r` given by `r + 1` binary forms of
/// a common degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    forms: Vec<BinForm>,
    degree: usize,
    label: String,
}

impl RationalCurve {
    /// Validates the parametrization and its embedding checks. Nodes are
    /// only searched for up to degree
    /// [`NODE_DEGREE_LIMIT`](super::NODE_DEGREE_LIMIT); beyond that the
    /// injectivity check is reported as not performed and accepted.
    pub fn new(forms: Vec<BinForm>, label: impl Into<String>) -> Result<Self> {
        let c = Self::parametrization(forms, label)?;
        let report = check_embedding(&c);
        if !report.passed() {
            return Err(Error::NotEmbedded(format!("{}: {}", c.label, report.summary())));
        }
        Ok(c)
    }

    /// Validates the structural invariants only: at least two forms of one
    /// common degree, linearly independent, without common zero on `P^1`.
    /// Used for curves whose embedding checks are expected to fail.
    pub fn parametrization(forms: Vec<BinForm>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if forms.len() < 2 {
            return Err(Error::InvalidCurve(format!(
                "{label}: need at least two forms, got {}",
                forms.len()
            )));
        }
        let degree = forms[0].degree();
        if forms.iter().any(|f| f.degree() != degree) {
            return Err(Error::InvalidCurve(format!("{label}: forms have different degrees")));
        }
        let coeffs = RatMat::from_rows(
            degree + 1,
            forms.iter().map(|f| f.coeffs().to_vec()).collect(),
        )?;
        if coeffs.rank() < forms.len() {
            return Err(Error::InvalidCurve(format!(
                "{label}: forms are linearly dependent (degenerate image)"
            )));
        }
        let g = forms
            .iter()
            .fold(UniPoly::zero(), |g, f| g.gcd(&f.affine()));
        if !g.is_unit() {
            return Err(Error::InvalidCurve(format!("{label}: forms share the base point root of {g}")));
        }
        if forms.iter().all(BinForm::vanishes_at_infinity) {
            return Err(Error::InvalidCurve(format!("{label}: forms share the base point (0:1)")));
        }
        Ok(RationalCurve { forms, degree, label })
    }

    /// Builds from affine polynomials, homogenized to the largest degree.
    pub fn from_affine(polys: &[UniPoly], label: impl Into<String>) -> Result<Self> {
        let degree = polys.iter().filter_map(UniPoly::degree).max().unwrap_or(0);
        let forms = polys
            .iter()
            .map(|p| BinForm::from_affine(p, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(forms, label)
    }

    /// Ambient dimension `r`: the curve lives in `P^r`.
    pub fn ambient_dim(&self) -> usize {
        self.forms.len() - 1
    }

    /// Common degree `d` of the forms.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn forms(&self) -> &[BinForm] {
        &self.forms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_line(&self) -> bool {
        self.ambient_dim() == 1
    }

    /// Dehomogenized coordinate polynomials in the given chart.
    pub fn chart_polys(&self, chart: Chart) -> Vec<UniPoly> {
        self.forms
            .iter()
            .map(|f| match chart {
                Chart::Affine => f.affine(),
                Chart::Infinity => f.at_infinity(),
            })
            .collect()
    }

    /// Homogeneous coordinates of the image of `p`.
    pub fn point(&self, p: &CurvePoint) -> Vec<Rat> {
        let (t0, t1) = p.homogeneous();
        self.forms.iter().map(|f| f.eval(&t0, &t1)).collect()
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let polys: Vec<String> = self.chart_polys(Chart::Affine).iter().map(|p| p.to_string()).collect();
        write!(f, "{} = ({})", self.label, polys.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio};

    #[test]
    fn point_canonicalization() {
        let p = CurvePoint::in_infinity_chart(ratio(1, 2));
        assert_eq!(p.canonical(), CurvePoint::affine(int(2)));
        assert_eq!(CurvePoint::infinity().canonical(), CurvePoint::infinity());
        assert_eq!(CurvePoint::parse("t=-1/3").unwrap(), CurvePoint::affine(ratio(-1, 3)));
        assert_eq!(CurvePoint::parse("inf").unwrap().to_string(), "inf");
        assert!(CurvePoint::parse("x=1").is_err());
    }

    #[test]
    fn structural_checks() {
        let p = |c: &[i64]| UniPoly::from_ints(c);
        assert!(RationalCurve::from_affine(&[p(&[1]), p(&[0, 1]), p(&[0, 0, 1])], "conic").is_ok());
        // common root t = 0
        assert!(RationalCurve::from_affine(&[p(&[0, 1]), p(&[0, 0, 1])], "x").is_err());
        // dependent forms
        assert!(RationalCurve::from_affine(&[p(&[1, 1]), p(&[2, 2]), p(&[0, 0, 1])], "x").is_err());
        // common root at infinity: (t0^2, t0 t1) after homogenization to degree 2
        let f = vec![BinForm::monomial(2, 0), BinForm::monomial(2, 1)];
        assert!(RationalCurve::parametrization(f, "x").is_err());
    }

    #[test]
    fn image_points() {
        let p = |c: &[i64]| UniPoly::from_ints(c);
        let c = RationalCurve::from_affine(&[p(&[1]), p(&[0, 1]), p(&[0, 0, 1])], "conic").unwrap();
        assert_eq!(c.point(&CurvePoint::affine(int(3))), vec![int(1), int(3), int(9)]);
        assert_eq!(c.point(&CurvePoint::infinity()), vec![int(0), int(0), int(1)]);
    }
}
