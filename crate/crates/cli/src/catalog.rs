//! Reference lattices with their reference invariants.

use arakelov_core::existence::{mod_nonprimepower_trace, mod_odd_degree, ConstructionWitness};
use arakelov_core::field::{make_field, Field, FieldElement};
use arakelov_core::ideal::IdealRecipe;
use arakelov_core::lattice::IdealLattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::record::{element_strings, rat_string};
use crate::CliError;

/// Invariants a catalog entry is expected to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub verifies: bool,
    pub dimension: usize,
    pub determinant: String,
    pub minimum: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    /// Number of vectors of norm `minimum`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kissing: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    pub verifies: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub dimension: usize,
    pub determinant: String,
    pub minimum: String,
    pub kissing: u64,
    pub even: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub index: usize,
    pub name: String,
    /// `"row"` entries decide the exit status; `"discrepancy"` entries
    /// document a recorded form that the definitional check rejects.
    pub kind: String,
    pub field: String,
    pub level: u64,
    pub ideal: String,
    pub alpha: Vec<String>,
    pub expected: Expected,
    pub computed: Computed,
    pub pass: bool,
}

struct Spec {
    name: String,
    kind: &'static str,
    field: Field,
    witness: ConstructionWitness,
    expected: Expected,
}

fn q(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn expected(dimension: usize, level: u64, minimum: u64) -> Expected {
    Expected {
        verifies: true,
        dimension,
        determinant: rat_string(&q(level).pow(dimension as i32 / 2)),
        minimum: minimum.to_string(),
        even: None,
        ideal: None,
        kissing: None,
    }
}

fn missing(field: &Field, level: u64) -> CliError {
    CliError::Nonexistence {
        rule: "none".into(),
        message: format!("no witness of level {level} over {field}"),
    }
}

fn table_specs() -> Result<Vec<Spec>, CliError> {
    let rows = [(28u64, 7u64, 6usize, 2u64), (44, 11, 10, 6), (92, 23, 22, 12)];
    let mut out = Vec::new();
    for (n, level, dim, min) in rows {
        let field = make_field(&format!("realcyclo:{n}"))?;
        let v = mod_nonprimepower_trace(n)?;
        let witness = v.witness(level).cloned().ok_or_else(|| missing(&field, level))?;
        out.push(Spec { name: format!("n = {n}, level {level}"), kind: "row", field, witness, expected: expected(dim, level, min) });
    }
    Ok(out)
}

fn example_specs() -> Result<Vec<Spec>, CliError> {
    let mut out = Vec::new();

    let field = make_field("realcyclo:36")?;
    let witness = mod_nonprimepower_trace(36)?.witness(3).cloned().ok_or_else(|| missing(&field, 3))?;
    let mut exp = expected(6, 3, 2);
    exp.even = Some(true);
    exp.ideal = Some("P3^-3*P2^-1".into());
    out.push(Spec { name: "even 3-modular, n = 36".into(), kind: "row", field, witness, expected: exp });

    let field = make_field("realcyclo:49")?;
    let witness = mod_odd_degree(&field)?.witness(1).cloned().ok_or_else(|| missing(&field, 1))?;
    let mut exp = expected(21, 1, 2);
    exp.ideal = Some("P7^-19".into());
    out.push(Spec { name: "odd unimodular, n = 49".into(), kind: "row", field, witness, expected: exp });

    let field = make_field("realcyclo:13")?;
    let gamma = field.gamma(13)?;
    let gamma_inv = gamma.inverse()?;
    let variants = [
        ("unimodular, n = 13, alpha = gamma", "row", -3, gamma),
        ("unimodular, n = 13, alpha = 1/gamma", "row", -2, gamma_inv.clone()),
        ("unimodular, n = 13, alpha = 1/gamma, recorded exponent", "discrepancy", -3, gamma_inv),
    ];
    for (name, kind, k, alpha) in variants {
        let mut exp = expected(6, 1, 1);
        exp.kissing = Some(12);
        exp.ideal = Some(format!("P13^{k}"));
        let witness = ConstructionWitness {
            level: 1,
            beta: FieldElement::one(&field),
            alpha,
            ideal: IdealRecipe::radical(13, k),
        };
        out.push(Spec { name: name.into(), kind, field: field.clone(), witness, expected: exp });
    }
    Ok(out)
}

fn evaluate(index: usize, spec: Spec) -> Result<CatalogEntry, CliError> {
    let Spec { name, kind, field, witness, expected } = spec;
    let lat = IdealLattice::from_witness(&field, &witness)?;
    let (verifies, failure) = match lat.verify_modularity(&witness) {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let report = lat.report()?;
    let (mu, kiss) = lat.minimum()?;
    let computed = Computed {
        verifies,
        failure,
        dimension: report.dimension,
        determinant: rat_string(&report.determinant),
        minimum: rat_string(&mu),
        kissing: kiss,
        even: report.even,
    };
    let ideal_ok = match &expected.ideal {
        Some(s) => {
            let want: IdealRecipe = s.parse()?;
            want.realize(&field)? == witness.ideal.realize(&field)?
        }
        None => true,
    };
    let pass = ideal_ok
        && computed.verifies == expected.verifies
        && computed.dimension == expected.dimension
        && computed.determinant == expected.determinant
        && computed.minimum == expected.minimum
        && expected.even.is_none_or(|e| e == computed.even)
        && expected.kissing.is_none_or(|k| k == computed.kissing);
    Ok(CatalogEntry {
        index,
        name,
        kind: kind.to_string(),
        field: field.to_string(),
        level: witness.level,
        ideal: witness.ideal.to_string(),
        alpha: element_strings(&witness.alpha),
        expected,
        computed,
        pass,
    })
}

/// Builds and checks every entry, in catalog order.
pub fn catalog(table: bool) -> Result<Vec<CatalogEntry>, CliError> {
    let specs = if table { table_specs()? } else { example_specs()? };
    specs.into_iter().enumerate().map(|(i, s)| evaluate(i, s)).collect()
}
