//! JSON interchange records.
//!
//! Exact quantities travel as decimal strings (`"7"`, `"-3/13"`); key order
//! follows field declaration order, so emit → parse → emit is byte-stable.

use arakelov_core::existence::{ConstructionWitness, ExistenceVerdict};
use arakelov_core::field::{EmbeddingLayout, EmbeddingMatrix, Field, FieldElement};
use arakelov_core::lattice::{IdealLattice, LatticeReport};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLatticeRecord {
    pub field: String,
    pub ideal: String,
    pub level: u64,
    /// Power-basis coefficients.
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<String>>>,
    pub report: JsonReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<JsonEmbedding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub dimension: usize,
    pub determinant: String,
    pub integral: bool,
    pub even: bool,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular_level: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kissing: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<JsonThetaTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonThetaTerm {
    pub norm: String,
    pub count: u64,
}

/// Numeric generator matrix; entries are decimal expansions at
/// `precision_bits`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEmbedding {
    pub precision_bits: u32,
    pub layout: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonWitness {
    pub level: u64,
    pub ideal: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVerdict {
    pub field: String,
    pub trace_type: bool,
    pub levels: Vec<u64>,
    pub complete: bool,
    pub rule: String,
    pub witnesses: Vec<JsonWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<JsonQuery>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonQuery {
    pub level: u64,
    pub exists: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded_by: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVerifyOutput {
    pub verified: bool,
    pub mismatches: Vec<String>,
    pub report: JsonReport,
}

pub fn rat_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rat(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Spec(format!("'{s}' is not a rational number")))
}

pub fn element_strings(x: &FieldElement) -> Vec<String> {
    x.coeffs().iter().map(rat_string).collect()
}

pub fn parse_element(field: &Field, coeffs: &[String]) -> Result<FieldElement, CliError> {
    if coeffs.len() != field.degree() {
        return Err(CliError::Spec(format!(
            "expected {} coefficients for {field}, found {}",
            field.degree(),
            coeffs.len()
        )));
    }
    let qs = coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(FieldElement::from_rationals(field, &qs)?)
}

pub fn gram_strings(lat: &IdealLattice) -> Vec<Vec<String>> {
    lat.gram().to_rows().iter().map(|r| r.iter().map(rat_string).collect()).collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

impl JsonReport {
    pub fn from_report(r: &LatticeReport, theta_bound: Option<&BigRational>) -> Self {
        JsonReport {
            dimension: r.dimension,
            determinant: rat_string(&r.determinant),
            integral: r.integral,
            even: r.even,
            verified: r.witness_checked,
            modular_level: r.modular_level,
            minimum: r.minimum.as_ref().map(rat_string),
            kissing: r.kissing,
            theta_bound: theta_bound.map(rat_string),
            theta: r.theta.as_ref().map(|t| {
                t.iter().map(|(n, c)| JsonThetaTerm { norm: rat_string(n), count: *c }).collect()
            }),
        }
    }
}

impl JsonWitness {
    pub fn from_witness(w: &ConstructionWitness) -> Self {
        JsonWitness {
            level: w.level,
            ideal: w.ideal.to_string(),
            alpha: element_strings(&w.alpha),
            beta: element_strings(&w.beta),
        }
    }
}

impl JsonVerdict {
    pub fn from_verdict(field: &Field, v: &ExistenceVerdict) -> Self {
        JsonVerdict {
            field: field.to_string(),
            trace_type: v.trace_type,
            levels: v.levels.clone(),
            complete: v.complete,
            rule: v.rule.tag().to_string(),
            witnesses: v.witnesses.iter().flatten().map(JsonWitness::from_witness).collect(),
            query: None,
        }
    }
}

impl JsonEmbedding {
    pub fn from_matrix(m: &EmbeddingMatrix) -> Self {
        // enough digits to carry every bit
        let digits = (m.precision as usize * 30103).div_ceil(100000);
        JsonEmbedding {
            precision_bits: m.precision,
            layout: match m.layout {
                EmbeddingLayout::TotallyReal => "totally-real",
                EmbeddingLayout::Cm => "cm",
            }
            .to_string(),
            rows: m.rows.iter().map(|r| r.iter().map(|x| x.to_decimal(digits)).collect()).collect(),
        }
    }
}

impl JsonLatticeRecord {
    pub fn new(field: &Field, w: &ConstructionWitness, lat: &IdealLattice, report: &LatticeReport) -> Self {
        JsonLatticeRecord {
            field: field.to_string(),
            ideal: w.ideal.to_string(),
            level: w.level,
            alpha: element_strings(&w.alpha),
            beta: element_strings(&w.beta),
            gram: Some(gram_strings(lat)),
            report: JsonReport::from_report(report, None),
            embedding: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Spec(format!("malformed record: {e}")))
    }

    /// The witness described by the record, re-parsed against `field`.
    pub fn witness(&self, field: &Field) -> Result<ConstructionWitness, CliError> {
        Ok(ConstructionWitness {
            level: self.level,
            beta: parse_element(field, &self.beta)?,
            alpha: parse_element(field, &self.alpha)?,
            ideal: self.ideal.parse()?,
        })
    }
}
