//! JSON manifests describing one instance, and their conversion into exact
//! engine types.
//!
//! Rationals may be written as JSON integers or as `"p/q"` strings. Frame
//! indices in `structure_constants` are 1-based.

use crate::lie::{ChartFrame, LieError, StructureConstants};
use crate::linalg::Matrix;
use crate::scalar::{parse_rational, HypExpr, Rational, ScalarError, SymbolContext};
use crate::soliton::VectorField;
use crate::structure::{PiStructure, StructureError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self, field: &str) -> Result<Rational, ManifestError> {
        match self {
            Number::Int(n) => Ok(crate::scalar::rat(*n)),
            Number::Text(s) => parse_rational(s).map_err(|e| ManifestError::field(field, e)),
        }
    }
}

impl From<i64> for Number {
    fn from(n: i64) -> Self {
        Number::Int(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    /// Sparse `[i, j, k, c_ij^k]`; a missing mirror `[j, i, k]` gets `-c_ij^k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_constants: Option<Vec<(usize, usize, usize, Number)>>,
    /// Row `i` gives the coordinate components of `e_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart_frame: Option<Vec<Vec<String>>>,
    /// Defaults to the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<Number>>>,
    /// `phi[i][j] = φ^i_j`, so column `j` is `φ e_j`.
    pub phi: Vec<Vec<Number>>,
    pub xi: Vec<Number>,
    /// Defaults to `g ξ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedBlock>,
}

/// Values the analysis must reproduce exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub para_sasaki_like: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_assoc: Option<Number>,
    /// `[a, b, c]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub einstein_like: Option<[Number; 3]>,
    /// `[λ, μ, ν]` as expressions in the parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soliton: Option<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifestError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("{0}")]
    Schema(String),
}

impl ManifestError {
    fn field(field: &str, msg: impl ToString) -> Self {
        ManifestError::Field {
            field: field.to_string(),
            msg: msg.to_string(),
        }
    }
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        serde_json::from_str(text).map_err(|e| ManifestError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub para_sasaki_like: Option<bool>,
    pub tau: Option<Rational>,
    pub tau_assoc: Option<Rational>,
    pub einstein_like: Option<[Rational; 3]>,
    pub soliton: Option<[HypExpr; 3]>,
}

/// A manifest after parsing and schema checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub structure_constants: StructureConstants,
    pub chart: Option<ChartFrame>,
    pub pi: PiStructure,
    pub symbols: SymbolContext,
    pub potential: Option<VectorField>,
    pub expected: Option<Expected>,
}

fn square(field: &str, rows: &[Vec<Number>], dim: usize) -> Result<Matrix, ManifestError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(ManifestError::field(field, format!("must be a {dim}x{dim} matrix")));
    }
    let mut out = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(dim);
        for (j, x) in row.iter().enumerate() {
            parsed.push(x.to_rational(&format!("{field}[{}][{}]", i + 1, j + 1))?);
        }
        out.push(parsed);
    }
    Ok(Matrix::from_rows(out))
}

fn vector(field: &str, v: &[Number], dim: usize) -> Result<Vec<Rational>, ManifestError> {
    if v.len() != dim {
        return Err(ManifestError::field(field, format!("must have {dim} entries")));
    }
    v.iter()
        .enumerate()
        .map(|(i, x)| x.to_rational(&format!("{field}[{}]", i + 1)))
        .collect()
}

fn check_parameter_name(name: &str) -> Result<(), ManifestError> {
    let field = format!("parameters `{name}`");
    let mut chars = name.chars();
    let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(ManifestError::field(&field, "not an identifier"));
    }
    let is_coordinate = name.len() > 1
        && name.starts_with('x')
        && name[1..].chars().all(|c| c.is_ascii_digit());
    if is_coordinate || name == "sinh" || name == "cosh" {
        return Err(ManifestError::field(&field, "reserved symbol"));
    }
    Ok(())
}

fn parse_expr_field(ctx: &SymbolContext, field: &str, src: &str) -> Result<HypExpr, ManifestError> {
    ctx.parse(src).map_err(|e: ScalarError| ManifestError::field(field, e))
}

impl Instance {
    pub fn from_manifest(m: &Manifest) -> Result<Self, ManifestError> {
        let dim = m.dim;
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(ManifestError::field("dim", StructureError::EvenDimension(dim)));
        }
        let mut seen = std::collections::BTreeSet::new();
        for p in &m.parameters {
            check_parameter_name(p)?;
            if !seen.insert(p) {
                return Err(ManifestError::field(&format!("parameters `{p}`"), "declared twice"));
            }
        }
        let symbols = SymbolContext::new(dim as u32, m.parameters.iter().cloned());

        let (structure_constants, chart) = match (&m.structure_constants, &m.chart_frame) {
            (Some(_), Some(_)) => {
                return Err(ManifestError::Schema(
                    "give exactly one of `structure_constants` and `chart_frame`, not both".into(),
                ))
            }
            (None, None) => {
                return Err(ManifestError::Schema(
                    "one of `structure_constants` or `chart_frame` is required".into(),
                ))
            }
            (Some(triples), None) => {
                let mut parsed = Vec::with_capacity(triples.len());
                for (n, (i, j, k, v)) in triples.iter().enumerate() {
                    parsed.push((*i, *j, *k, v.to_rational(&format!("structure_constants[{}]", n + 1))?));
                }
                let sc = StructureConstants::from_triples(dim, &parsed)
                    .map_err(|e| ManifestError::field("structure_constants", e))?;
                (sc, None)
            }
            (None, Some(rows)) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(ManifestError::field("chart_frame", format!("must be a {dim}x{dim} matrix")));
                }
                let frame_ctx = SymbolContext::new(dim as u32, Vec::<String>::new());
                let mut entries = Vec::with_capacity(dim);
                for (i, row) in rows.iter().enumerate() {
                    let mut parsed = Vec::with_capacity(dim);
                    for (a, src) in row.iter().enumerate() {
                        parsed.push(parse_expr_field(&frame_ctx, &format!("chart_frame[{}][{}]", i + 1, a + 1), src)?);
                    }
                    entries.push(parsed);
                }
                let chart = ChartFrame::new(entries).map_err(|e| ManifestError::field("chart_frame", e))?;
                let sc = chart
                    .commutators()
                    .map_err(|e: LieError| ManifestError::field("chart_frame", e))?;
                (sc, Some(chart))
            }
        };

        let g = match &m.g {
            Some(rows) => square("g", rows, dim)?,
            None => Matrix::identity(dim),
        };
        let phi = square("phi", &m.phi, dim)?;
        let xi = vector("xi", &m.xi, dim)?;
        let eta = m.eta.as_ref().map(|e| vector("eta", e, dim)).transpose()?;
        let pi = PiStructure::new(g, phi, xi, eta).map_err(|e| ManifestError::field("structure", e))?;

        let potential = match &m.potential {
            None => None,
            Some(coeffs) => {
                if coeffs.len() != dim {
                    return Err(ManifestError::field("potential", format!("must have {dim} entries")));
                }
                let mut parsed = Vec::with_capacity(dim);
                for (i, src) in coeffs.iter().enumerate() {
                    parsed.push(parse_expr_field(&symbols, &format!("potential[{}]", i + 1), src)?);
                }
                let v = VectorField::new(parsed);
                if chart.is_none() && !v.is_chart_free() {
                    return Err(ManifestError::field(
                        "potential",
                        "coordinate-dependent coefficients need a `chart_frame`",
                    ));
                }
                Some(v)
            }
        };

        let expected = match &m.expected {
            None => None,
            Some(e) => Some(Expected {
                para_sasaki_like: e.para_sasaki_like,
                tau: e.tau.as_ref().map(|t| t.to_rational("expected.tau")).transpose()?,
                tau_assoc: e.tau_assoc.as_ref().map(|t| t.to_rational("expected.tau_assoc")).transpose()?,
                einstein_like: match &e.einstein_like {
                    None => None,
                    Some([a, b, c]) => Some([
                        a.to_rational("expected.einstein_like[1]")?,
                        b.to_rational("expected.einstein_like[2]")?,
                        c.to_rational("expected.einstein_like[3]")?,
                    ]),
                },
                soliton: match &e.soliton {
                    None => None,
                    Some([l, mu, nu]) => Some([
                        parse_expr_field(&symbols, "expected.soliton[1]", l)?,
                        parse_expr_field(&symbols, "expected.soliton[2]", mu)?,
                        parse_expr_field(&symbols, "expected.soliton[3]", nu)?,
                    ]),
                },
            }),
        };

        Ok(Instance {
            name: m.name.clone().unwrap_or_else(|| "unnamed".into()),
            structure_constants,
            chart,
            pi,
            symbols,
            potential,
            expected,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        Instance::from_manifest(&Manifest::from_json(text)?)
    }
}
