//! On-disk formats: the set file, the collision certificate file, and
//! the error type that fixes each failure's exit code.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use dsp_core::constructions::ConstructionOutput;
use dsp_core::verifier::{CollisionCertificate, SubsetProductSet};

/// Format tag of a set file.
pub const SET_FORMAT: &str = "dsp-set/1";
/// Format tag of a collision-certificate file.
pub const CERT_FORMAT: &str = "dsp-cert/1";

/// A command failure, carrying the exit code it maps to: 64 for an
/// invalid request, 65 for unreadable or malformed input data.
#[derive(Debug)]
pub enum CliError {
    /// Invalid parameters or an impossible request — exit 64.
    Usage(String),
    /// Input file missing, unreadable, or malformed — exit 65.
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Parse(_) => 65,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(msg) | CliError::Parse(msg) => msg,
        }
    }
}

/// Provenance block of a set file: which construction produced it and
/// what its size formula predicted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetMeta {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub predicted_count: usize,
}

/// The JSON set format: a bound, an ascending element list, and an
/// optional provenance block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFile {
    pub format_version: String,
    pub n_limit: u64,
    pub elements: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<SetMeta>,
}

impl SetFile {
    /// Package a construction's output, recording its provenance.
    pub fn from_construction(output: &ConstructionOutput) -> SetFile {
        SetFile {
            format_version: SET_FORMAT.to_string(),
            n_limit: output.set.n_limit(),
            elements: output.set.values(),
            meta: Some(SetMeta {
                kind: output.kind.name().to_string(),
                parameters: output.parameters.clone(),
                predicted_count: output.predicted_count,
            }),
        }
    }
}

/// The JSON certificate format: two subsets and their common product
/// as a decimal string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format_version: String,
    pub subset_b: Vec<u64>,
    pub subset_c: Vec<u64>,
    pub product: String,
}

impl CertificateFile {
    pub fn from_certificate(cert: &CollisionCertificate) -> CertificateFile {
        CertificateFile {
            format_version: CERT_FORMAT.to_string(),
            subset_b: cert.subset_b().to_vec(),
            subset_c: cert.subset_c().to_vec(),
            product: cert.common_product().to_string(),
        }
    }
}

/// Serialize as pretty JSON with a trailing newline, so emitted files
/// are stable under re-emission.
pub fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("formats always serialize");
    text.push('\n');
    text
}

/// Read a set from disk. A file starting with `{` must be a valid
/// `dsp-set/1` document with strictly ascending elements; anything else
/// is read as one integer per line (blank lines skipped) with the bound
/// taken as the largest element. Every failure is a parse error.
pub fn read_set(path: &Path) -> Result<SubsetProductSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Parse(format!("cannot read {}: {err}", path.display())))?;
    let (values, n_limit) = if text.trim_start().starts_with('{') {
        parse_structured(&text)?
    } else {
        parse_plain(&text)?
    };
    SubsetProductSet::new(&values, n_limit).map_err(|err| CliError::Parse(err.to_string()))
}

fn parse_structured(text: &str) -> Result<(Vec<u64>, u64), CliError> {
    let file: SetFile = serde_json::from_str(text)
        .map_err(|err| CliError::Parse(format!("malformed set file: {err}")))?;
    if file.format_version != SET_FORMAT {
        return Err(CliError::Parse(format!(
            "unsupported set format {:?} (expected {SET_FORMAT:?})",
            file.format_version
        )));
    }
    for pair in file.elements.windows(2) {
        if pair[0] >= pair[1] {
            return Err(CliError::Parse(format!(
                "elements must be strictly ascending, found {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok((file.elements, file.n_limit))
}

fn parse_plain(text: &str) -> Result<(Vec<u64>, u64), CliError> {
    let mut values = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: u64 = line.parse().map_err(|_| {
            CliError::Parse(format!(
                "line {}: not a positive integer: {line:?}",
                index + 1
            ))
        })?;
        values.push(value);
    }
    let n_limit = values.iter().copied().max().unwrap_or(1);
    Ok((values, n_limit))
}
