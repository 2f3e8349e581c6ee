//! Command-line front end for `arakelov-core`.
//!
//! Exit codes: 0 success, 2 bad input, 3 no such lattice, 4 verification
//! failure, 1 anything else.

pub mod catalog;
pub mod record;

use std::io::Write;
use std::path::PathBuf;

use arakelov_core::existence::{existence, level_bound_violation};
use arakelov_core::field::make_field;
use arakelov_core::lattice::IdealLattice;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::record::{
    gram_strings, parse_rat, to_json, JsonEmbedding, JsonLatticeRecord, JsonQuery,
    JsonReport, JsonVerdict, JsonVerifyOutput,
};

pub const PRECISION_ENV: &str = "ARAKELOV_PRECISION_BITS";
pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(String),
    #[error("{message} (rule: {rule})")]
    Nonexistence { rule: String, message: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Core(arakelov_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<arakelov_core::Error> for CliError {
    fn from(e: arakelov_core::Error) -> Self {
        use arakelov_core::Error as E;
        match e {
            E::Spec(_) | E::Unsupported(_) => CliError::Spec(e.to_string()),
            E::ModularityFailure { .. } => CliError::Verification(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Nonexistence { .. } => 3,
            CliError::Verification(_) => 4,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "arakelov", version, about = "Construct and verify Arakelov-modular ideal lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Levels at which Arakelov-modular lattices exist over a field.
    Exists {
        /// `quad:±d`, `cyclo:n` or `realcyclo:n`.
        #[arg(long)]
        field: String,
        /// Restrict to lattices with trivial twist (alpha = 1).
        #[arg(long)]
        trace_type: bool,
        /// Exit 3 unless this level is attained.
        #[arg(long)]
        level: Option<u64>,
    },
    /// Build, verify and emit a lattice record.
    Construct {
        #[arg(long)]
        field: String,
        #[arg(long)]
        level: u64,
        #[arg(long)]
        trace_type: bool,
        /// Write the record here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include a numeric generator matrix (bits default to $ARAKELOV_PRECISION_BITS).
        #[arg(long, value_name = "BITS", num_args = 0..=1)]
        embed: Option<Option<u32>>,
        /// Skip the minimum computation.
        #[arg(long)]
        no_min: bool,
    },
    /// Re-derive a record from its ideal and elements and compare.
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        min: bool,
        /// Count vectors of norm up to this bound.
        #[arg(long, value_name = "BOUND")]
        theta: Option<String>,
    },
    /// Rebuild the catalog lattices and compare with their expected invariants.
    Catalog {
        #[arg(long = "paper-table", required_unless_present = "examples", conflicts_with = "examples")]
        table: bool,
        #[arg(long)]
        examples: bool,
    },
}

/// Working precision for numeric output.
pub fn precision_bits() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| CliError::Spec(format!("{PRECISION_ENV}='{v}' is not a positive integer"))),
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
    }
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Exists { field, trace_type, level } => cmd_exists(&field, trace_type, level, out),
        Command::Construct { field, level, trace_type, out: path, embed, no_min } => {
            let embed = match embed {
                None => None,
                Some(Some(bits)) => Some(bits),
                Some(None) => Some(precision_bits()?),
            };
            let record = cmd_construct(&field, level, trace_type, embed, !no_min)?;
            let text = to_json(&record);
            match path {
                Some(p) => std::fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Verify { input, min, theta } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", input.display())))?;
            let result = cmd_verify(&text, min, theta.as_deref())?;
            out.write_all(to_json(&result).as_bytes())?;
            if result.mismatches.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(result.mismatches.join("; ")))
            }
        }
        Command::Catalog { table, .. } => {
            let entries = catalog::catalog(table)?;
            out.write_all(to_json(&entries).as_bytes())?;
            let failed: Vec<String> = entries
                .iter()
                .filter(|e| e.kind == "row" && !e.pass)
                .map(|e| format!("#{} {}", e.index, e.name))
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("catalog rows differ: {}", failed.join(", "))))
            }
        }
    }
}

pub fn cmd_exists(
    spec: &str,
    trace_type: bool,
    level: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let field = make_field(spec)?;
    let v = existence(&field, trace_type)?;
    let mut json = JsonVerdict::from_verdict(&field, &v);
    let failure = match level {
        Some(l) => {
            let found = v.levels.contains(&l);
            let rule = level_bound_violation(&field, l).unwrap_or(v.rule);
            json.query = Some(JsonQuery {
                level: l,
                exists: found,
                excluded_by: (!found).then(|| rule.tag().to_string()),
            });
            (!found).then(|| CliError::Nonexistence {
                rule: rule.tag().into(),
                message: format!("no lattice of level {l} over {field}"),
            })
        }
        None => v.levels.is_empty().then(|| CliError::Nonexistence {
            rule: v.rule.tag().into(),
            message: format!("no admissible level over {field}"),
        }),
    };
    out.write_all(to_json(&json).as_bytes())?;
    failure.map_or(Ok(()), Err)
}

pub fn cmd_construct(
    spec: &str,
    level: u64,
    trace_type: bool,
    embed: Option<u32>,
    with_minimum: bool,
) -> Result<JsonLatticeRecord, CliError> {
    let field = make_field(spec)?;
    let v = existence(&field, trace_type)?;
    let Some(w) = v.witness(level) else {
        let rule = level_bound_violation(&field, level).unwrap_or(v.rule);
        let message = if v.complete || level_bound_violation(&field, level).is_some() {
            format!("no lattice of level {level} over {field}")
        } else {
            format!("no known construction of level {level} over {field}")
        };
        return Err(CliError::Nonexistence { rule: rule.tag().into(), message });
    };
    let lat = IdealLattice::from_witness(&field, w)?;
    let mut report = lat.verify_modularity(w)?;
    if with_minimum {
        report = report.with_minimum(&lat)?;
    }
    let mut record = JsonLatticeRecord::new(&field, w, &lat, &report);
    if let Some(bits) = embed {
        record.embedding = Some(JsonEmbedding::from_matrix(&lat.generator_matrix(bits)?));
    }
    Ok(record)
}

/// Rebuilds the lattice from the record's field, ideal and elements, runs
/// the definitional check, and lists every stored value that disagrees.
pub fn cmd_verify(text: &str, min: bool, theta: Option<&str>) -> Result<JsonVerifyOutput, CliError> {
    let rec = JsonLatticeRecord::from_json(text)?;
    let field = make_field(&rec.field)?;
    let w = rec.witness(&field)?;
    let lat = IdealLattice::from_witness(&field, &w)?;
    let mut report = lat.verify_modularity(&w)?;
    if min || rec.report.minimum.is_some() || rec.report.kissing.is_some() {
        report = report.with_minimum(&lat)?;
    }
    let bound = theta.map(parse_rat).transpose()?;
    if let Some(b) = &bound {
        report = report.with_theta(&lat, b)?;
    }
    let fresh = JsonReport::from_report(&report, bound.as_ref());

    let mut mismatches = Vec::new();
    if let Some(g) = &rec.gram {
        if *g != gram_strings(&lat) {
            mismatches.push("gram differs from the recomputed Gram matrix".to_string());
        }
    }
    let stored = &rec.report;
    let mut check = |name: &str, have: String, want: String| {
        if have != want {
            mismatches.push(format!("{name}: stored {have}, recomputed {want}"));
        }
    };
    check("dimension", stored.dimension.to_string(), fresh.dimension.to_string());
    check("determinant", stored.determinant.clone(), fresh.determinant.clone());
    check("integral", stored.integral.to_string(), fresh.integral.to_string());
    check("even", stored.even.to_string(), fresh.even.to_string());
    if let Some(m) = &stored.minimum {
        check("minimum", m.clone(), fresh.minimum.clone().unwrap_or_default());
    }
    if let Some(k) = stored.kissing {
        check("kissing", k.to_string(), fresh.kissing.map(|k| k.to_string()).unwrap_or_default());
    }
    if let Some(l) = stored.modular_level {
        check("modular_level", l.to_string(), rec.level.to_string());
    }
    Ok(JsonVerifyOutput { verified: mismatches.is_empty(), mismatches, report: fresh })
}
