//! Report assembly and rendering.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub subject: String,
    pub operation: String,
    pub value: String,
    /// `computed` for plain results, `check:<name>` for checks, or the
    /// provenance of a scenario expectation.
    pub provenance_or_check: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub schema_version: u32,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub records: Vec<Record>,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: impl Into<String>, input: &[u8]) -> Self {
        Report {
            tool: "osculate",
            tool_version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input_digest: digest(input),
            seed: None,
            records: Vec::new(),
        }
    }

    pub fn info(&mut self, subject: &str, operation: &str, value: impl Into<String>) {
        self.push(subject, operation, value, "computed", Status::Info);
    }

    pub fn check(&mut self, subject: &str, operation: &str, value: impl Into<String>, name: &str, ok: bool) {
        self.push(subject, operation, value, &format!("check:{name}"), Status::from_bool(ok));
    }

    pub fn push(&mut self, subject: &str, operation: &str, value: impl Into<String>, label: &str, status: Status) {
        self.records.push(Record {
            subject: subject.to_string(),
            operation: operation.to_string(),
            value: value.into(),
            provenance_or_check: label.to_string(),
            status,
        });
    }

    pub fn failed(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        let mut out = String::from("subject\toperation\tvalue\tprovenance_or_check\tstatus\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                clean(&r.subject),
                clean(&r.operation),
                clean(&r.value),
                clean(&r.provenance_or_check),
                r.status.as_str()
            );
        }
        out
    }

    pub fn to_table(&self) -> String {
        let header = ["subject", "operation", "value", "check", "status"];
        let rows: Vec<[&str; 5]> = self
            .records
            .iter()
            .map(|r| [&*r.subject, &*r.operation, &*r.value, &*r.provenance_or_check, r.status.as_str()])
            .collect();
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: [&str; 5]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    let pad = w - cell.chars().count();
                    let _ = write!(s, "{cell}{}  ", " ".repeat(pad));
                }
            }
            s.trim_end().to_string()
        };
        let mut out = format!("{} {}  {}\n", self.tool, self.tool_version, self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        let _ = writeln!(out, "input {}", self.input_digest);
        out.push('\n');
        let _ = writeln!(out, "{}", line(header));
        let _ = writeln!(out, "{}", widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
        for row in rows {
            let _ = writeln!(out, "{}", line(row));
        }
        let fails = self.records.iter().filter(|r| r.status == Status::Fail).count();
        let passes = self.records.iter().filter(|r| r.status == Status::Pass).count();
        let _ = writeln!(out, "\n{passes} passed, {fails} failed, {} records", self.records.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_all_formats() {
        let mut r = Report::new("curve flexes", b"{}");
        r.info("c", "degree", "3");
        r.check("c", "embedding", "ok", "embedding", true);
        assert!(!r.failed());
        assert!(r.to_tsv().lines().nth(2).unwrap().ends_with("check:embedding\tpass"));
        assert!(r.to_table().contains("1 passed, 0 failed"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["records"][0]["status"], "info");
        assert_eq!(json["input_digest"].as_str().unwrap().len(), "sha256:".len() + 64);
        r.check("c", "x", "no", "x", false);
        assert!(r.failed());
    }
}
