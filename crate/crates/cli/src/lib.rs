//! Plumbing for the command-line front end: the JSON-lines record format,
//! strict numeric parsing, and the self-test suite. The binary stays thin —
//! parse flags, call the library, emit records.

pub mod selftest;

use std::collections::BTreeMap;

use dyadic_cone::{BigInt, BigRational, BigUint, DyadicResidue, Error};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// One line of machine-readable output. Every invocation emits at least one
/// record on standard output; human diagnostics go to standard error only,
/// so piping stdout always yields valid JSON lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub command: String,
    /// The invocation's inputs, echoed back as strings.
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    pub status: Status,
    /// Typed error name when status is `error`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

impl ReportRecord {
    pub fn ok(command: &str, parameters: BTreeMap<String, String>, result: Value) -> Self {
        ReportRecord {
            command: command.to_string(),
            parameters,
            result: Some(result),
            status: Status::Ok,
            error: None,
        }
    }

    pub fn failed(command: &str, parameters: BTreeMap<String, String>, error: &Error) -> Self {
        ReportRecord {
            command: command.to_string(),
            parameters,
            result: None,
            status: Status::Error,
            error: Some(error_name(error).to_string()),
        }
    }

    pub fn print(&self) {
        println!("{}", serde_json::to_string(self).expect("records serialize"));
    }
}

/// Stable names for the library's typed errors, carried in the `error`
/// field of failure records.
pub fn error_name(e: &Error) -> &'static str {
    match e {
        Error::EvenDenominator(_) => "EvenDenominator",
        Error::EvenResidue { .. } => "EvenResidue",
        Error::BadRange(_) => "BadRange",
        Error::OddM(_) => "OddM",
        Error::NotARoot { .. } => "NotARoot",
        Error::BadModulus(_) => "BadModulus",
        Error::Parse(_) => "Parse",
    }
}

/// Residues serialize as `{"mod_exp": N, "value": "<decimal>"}`; the string
/// keeps arbitrarily wide residues exact.
pub fn residue_json(r: &DyadicResidue) -> Value {
    json!({ "mod_exp": r.mod_exp(), "value": r.value().to_string() })
}

/// Parse a decimal integer or a `num/den` rational. Floats are rejected by
/// construction, as is a zero denominator.
pub fn parse_rational(text: &str) -> Result<BigRational, Error> {
    let mut parts = text.splitn(2, '/');
    let num_text = parts.next().unwrap_or("").trim();
    let num: BigInt = num_text
        .parse()
        .map_err(|_| Error::Parse(format!("not a decimal integer: {num_text:?}")))?;
    match parts.next() {
        None => Ok(BigRational::from_integer(num)),
        Some(den_text) => {
            let den_text = den_text.trim();
            let den: BigInt = den_text
                .parse()
                .map_err(|_| Error::Parse(format!("not a decimal integer: {den_text:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Parse an arbitrarily large non-negative decimal integer.
pub fn parse_biguint(text: &str) -> Result<BigUint, Error> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a non-negative decimal integer: {text:?}")))
}

/// Environment variable bounding every `--bits` argument.
pub const MAX_BITS_VAR: &str = "DYADIC_CONE_MAX_BITS";

/// The cap on modulus exponents, from the environment or the default of 64.
/// An unparseable setting is an error rather than a silent fallback.
pub fn bit_cap() -> Result<u32, String> {
    match std::env::var(MAX_BITS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(64),
        Err(e) => Err(format!("{MAX_BITS_VAR} is unreadable: {e}")),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{MAX_BITS_VAR} must be a decimal integer, got {s:?}")),
    }
}
