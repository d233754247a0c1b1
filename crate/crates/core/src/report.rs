//! Versioned JSON envelopes and the CSV table.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::code::CodeSpec;
use crate::metrics::audit::InstanceRecord;
use crate::metrics::walk::WalkTrace;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "localcodes";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    /// SHA-256 over the command's inputs (code file bytes and arguments).
    pub input_digest: String,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: impl Into<String>, input_digest: String, result: T) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            tool: TOOL_NAME,
            tool_version: TOOL_VERSION,
            command: command.into(),
            input_digest,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}

/// Hex SHA-256 of the parts, each length-prefixed so boundaries matter.
pub fn input_digest<'a>(parts: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkJson {
    pub steps: Vec<String>,
    pub profile: Vec<usize>,
    pub eps_max: usize,
}

impl WalkJson {
    pub fn new(code: &CodeSpec, walk: &WalkTrace) -> Self {
        let layout = code.layout();
        let steps = walk.steps.iter().map(|s| format!("{}{}", s.letter.as_char(), layout.cell(s.qubit))).collect();
        WalkJson { steps, profile: walk.profile.clone(), eps_max: walk.eps_max }
    }
}

pub const CSV_COLUMNS: [&str; 11] =
    ["family", "L", "n", "k", "r", "participation", "d", "d1", "barrier", "method", "margins"];

/// One row per instance in the fixed column order. Missing values are
/// empty; `margins` lists `check=rhs-lhs` pairs separated by `;`.
pub fn csv_table(records: &[InstanceRecord]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        let (barrier, method) = r.barrier_summary();
        let margins: Vec<String> = r.checks.iter().map(|c| format!("{}={}", c.name, c.margin)).collect();
        let row = [
            r.family.clone(),
            r.size.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.r.to_string(),
            r.participation.to_string(),
            opt(r.distance.value),
            opt(r.d1.as_ref().and_then(|m| m.value)),
            opt(barrier),
            method.unwrap_or_default(),
            margins.join(";"),
        ];
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
