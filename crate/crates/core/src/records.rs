//! Serializable records for curves, scrolls and subspaces.
//!
//! Every number is an exact rational written as a string, `"p"` or
//! `"p/q"`; floating point never appears. A curve lists one coefficient
//! row per form, entry `j` being the coefficient of `t0^(d-j) t1^j`.

use serde::{Deserialize, Serialize};

use crate::curvekit::{LinearSubspace, RationalCurve};
use crate::error::{Error, Result};
use crate::exactmath::{format_rat, parse_rat, BinForm, Rat};
use crate::scrollkit::{build_scroll, DecomposableScroll};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ambient_dim: usize,
    pub form_degree: usize,
    pub coefficients: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScrollRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub curves: Vec<CurveRecord>,
}

/// A subspace spanned by the listed vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceRecord {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<String>>,
}

fn rats(row: &[String], what: &str) -> Result<Vec<Rat>> {
    row.iter()
        .map(|s| parse_rat(s).map_err(|_| Error::Record(format!("{what}: '{s}' is not an exact rational"))))
        .collect()
}

fn strings(row: &[Rat]) -> Vec<String> {
    row.iter().map(format_rat).collect()
}

impl CurveRecord {
    pub fn from_curve(c: &RationalCurve) -> Self {
        CurveRecord {
            label: Some(c.label().to_string()),
            ambient_dim: c.ambient_dim(),
            form_degree: c.degree(),
            coefficients: c.forms().iter().map(|f| strings(f.coeffs())).collect(),
        }
    }

    /// Parametrization with the structural checks only; embedding checks
    /// are left to the caller so that they can be reported.
    pub fn to_parametrization(&self, default_label: &str) -> Result<RationalCurve> {
        if self.coefficients.len() != self.ambient_dim + 1 {
            return Err(Error::Record(format!(
                "ambient_dim {} needs {} coefficient rows, got {}",
                self.ambient_dim,
                self.ambient_dim + 1,
                self.coefficients.len()
            )));
        }
        let forms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != self.form_degree + 1 {
                    return Err(Error::Record(format!(
                        "coefficients[{i}] has {} entries, form_degree {} needs {}",
                        row.len(),
                        self.form_degree,
                        self.form_degree + 1
                    )));
                }
                BinForm::new(self.form_degree, rats(row, &format!("coefficients[{i}]"))?)
            })
            .collect::<Result<Vec<_>>>()?;
        let label = self.label.clone().unwrap_or_else(|| default_label.to_string());
        RationalCurve::parametrization(forms, label)
    }

    /// Curve with the full embedding checks.
    pub fn to_curve(&self, default_label: &str) -> Result<RationalCurve> {
        let c = self.to_parametrization(default_label)?;
        RationalCurve::new(c.forms().to_vec(), c.label())
    }
}

impl ScrollRecord {
    pub fn from_scroll(sc: &DecomposableScroll) -> Self {
        ScrollRecord {
            label: Some(sc.label().to_string()),
            curves: sc.curves().iter().map(CurveRecord::from_curve).collect(),
        }
    }

    pub fn to_scroll(&self) -> Result<DecomposableScroll> {
        let curves = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_curve(&format!("C{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let sc = build_scroll(curves)?;
        Ok(match &self.label {
            Some(l) => sc.with_label(l.clone()),
            None => sc,
        })
    }
}

impl SubspaceRecord {
    pub fn from_subspace(s: &LinearSubspace) -> Self {
        SubspaceRecord {
            ambient_dim: s.ambient_dim(),
            vectors: s.basis().to_rows().iter().map(|r| strings(r)).collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<LinearSubspace> {
        let rows = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() != self.ambient_dim + 1 {
                    return Err(Error::Record(format!(
                        "vectors[{i}] has {} entries, P^{} needs {}",
                        v.len(),
                        self.ambient_dim,
                        self.ambient_dim + 1
                    )));
                }
                rats(v, &format!("vectors[{i}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearSubspace::from_vectors(self.ambient_dim, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{monomial_curve, rational_normal_scroll};
    use crate::exactmath::ratio;

    #[test]
    fn curve_round_trip() {
        let c = monomial_curve(&[0, 1, 3, 4], 4).unwrap();
        let rec = CurveRecord::from_curve(&c);
        let json = serde_json::to_string(&rec).unwrap();
        let back: CurveRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_curve("x").unwrap(), c);
    }

    #[test]
    fn scroll_round_trip() {
        let s = rational_normal_scroll(&[1, 2]).unwrap();
        let rec = ScrollRecord::from_scroll(&s);
        assert_eq!(rec.to_scroll().unwrap(), s);
    }

    #[test]
    fn subspace_keeps_fractions() {
        let s = LinearSubspace::point(vec![ratio(1, 2), ratio(-3, 4), ratio(0, 1)]).unwrap();
        let rec = SubspaceRecord::from_subspace(&s);
        assert_eq!(rec.vectors, vec![vec!["1", "-3/2", "0"]]);
        assert_eq!(rec.to_subspace().unwrap(), s);
    }

    #[test]
    fn diagnostics() {
        let bad = r#"{"ambient_dim": 1, "form_degree": 1, "coefficients": [["1", "0"], ["0", "0.5"]]}"#;
        let rec: CurveRecord = serde_json::from_str(bad).unwrap();
        let err = rec.to_parametrization("c").unwrap_err().to_string();
        assert!(err.contains("coefficients[1]"), "{err}");
        let extra = r#"{"ambient_dim": 1, "form_degree": 1, "coefficients": [], "colour": 1}"#;
        assert!(serde_json::from_str::<CurveRecord>(extra).is_err());
        let short = CurveRecord { label: None, ambient_dim: 2, form_degree: 1, coefficients: vec![] };
        assert!(short.to_parametrization("c").is_err());
    }
}
