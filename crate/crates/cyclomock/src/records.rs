//! Line-delimited JSON record logs.
//!
//! Each line is one [`Record`]. Files are append-only; a crash can leave a
//! trailing line without its newline, which [`resume`] drops with a warning.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use cyclomock_core::field::{CycloElement, Rational};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub schema: u32,
    #[serde(rename = "fn")]
    pub function: String,
    pub n: usize,
    pub j: i64,
    pub is_zero: bool,
    /// `-1` when the evaluation failed.
    pub terminated_at: i64,
    pub value: String,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumRecord {
    pub schema: u32,
    #[serde(rename = "fn")]
    pub function: String,
    pub n: usize,
    pub sum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Record {
    Scan(ScanRecord),
    Sum(SumRecord),
}

impl Record {
    pub fn key(&self) -> (&str, usize) {
        match self {
            Record::Scan(r) => (&r.function, r.n),
            Record::Sum(r) => (&r.function, r.n),
        }
    }

    fn schema(&self) -> u32 {
        match self {
            Record::Scan(r) => r.schema,
            Record::Sum(r) => r.schema,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

impl From<ScanRecord> for Record {
    fn from(r: ScanRecord) -> Self {
        Record::Scan(r)
    }
}

impl From<SumRecord> for Record {
    fn from(r: SumRecord) -> Self {
        Record::Sum(r)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Canonical coefficients as comma-separated `p/q`.
pub fn value_string(v: &CycloElement) -> String {
    v.coeffs().iter().map(rational_string).collect::<Vec<_>>().join(",")
}

/// Appends records to `path`, one line each, creating the file if needed.
pub fn persist<'a>(records: impl IntoIterator<Item = &'a Record>, path: &Path) -> Result<(), RecordError> {
    let mut w = RecordWriter::append(path)?;
    for r in records {
        w.write(r)?;
    }
    w.flush()
}

pub struct RecordWriter {
    out: BufWriter<File>,
}

impl RecordWriter {
    pub fn append(path: &Path) -> Result<Self, RecordError> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(RecordWriter { out: BufWriter::new(file) })
    }

    pub fn write(&mut self, r: &Record) -> Result<(), RecordError> {
        writeln!(self.out, "{}", r.to_line())?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), RecordError> {
        self.out.flush()?;
        Ok(())
    }
}

/// Parses a record file. A missing file reads as empty.
pub fn resume(path: &Path) -> Result<Vec<Record>, RecordError> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_records(&text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

/// Like [`resume`], but also cuts a partial trailing line from the file so
/// that appending afterwards keeps it well formed.
pub fn resume_for_append(path: &Path) -> Result<Vec<Record>, RecordError> {
    let records = resume(path)?;
    if let Ok(text) = std::fs::read_to_string(path) {
        if !text.is_empty() && !text.ends_with('\n') {
            let keep = text.rfind('\n').map_or(0, |i| i + 1);
            OpenOptions::new().write(true).open(path)?.set_len(keep as u64)?;
        }
    }
    Ok(records)
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, RecordError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    let partial = lines.pop().unwrap_or("");
    if !partial.is_empty() {
        log::warn!("ignoring partial trailing line {} ({} bytes)", lines.len() + 1, partial.len());
    }
    let mut out = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: Record = serde_json::from_str(line)
            .map_err(|e| RecordError::ParseError { line: i + 1, message: e.to_string() })?;
        if r.schema() != SCHEMA {
            return Err(RecordError::ParseError { line: i + 1, message: format!("unsupported schema {}", r.schema()) });
        }
        out.push(r);
    }
    Ok(out)
}

/// `(function, n)` pairs present in `records`.
pub fn completed(records: &[Record]) -> BTreeSet<(String, usize)> {
    records.iter().map(|r| r.key()).map(|(f, n)| (f.to_string(), n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan(n: usize) -> Record {
        Record::Scan(ScanRecord {
            schema: SCHEMA,
            function: "phi".into(),
            n,
            j: 1,
            is_zero: false,
            terminated_at: (n as i64 - 1) / 2,
            value: "0/1,-2/1".into(),
            elapsed_ms: 3,
            margin: Some(0.1 + n as f64 / 3.0),
            error: None,
        })
    }

    #[test]
    fn line_schema() {
        let line = scan(3).to_line();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        for key in ["schema", "fn", "n", "j", "is_zero", "terminated_at", "value", "elapsed_ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let s = Record::Sum(SumRecord { schema: 1, function: "phi".into(), n: 5, sum: "0/1".into() });
        assert_eq!(s.to_line(), r#"{"schema":1,"fn":"phi","n":5,"sum":"0/1"}"#);
        assert_eq!(parse_records(&(s.to_line() + "\n")).unwrap(), vec![s]);
    }

    #[test]
    fn partial_and_corrupt_lines() {
        let good = scan(3).to_line();
        let text = format!("{good}\n{{\"schema\":1,\"fn\"");
        assert_eq!(parse_records(&text).unwrap(), vec![scan(3)]);
        let bad = format!("{good}\nnot json\n{good}\n");
        assert!(matches!(parse_records(&bad), Err(RecordError::ParseError { line: 2, .. })));
        let wrong_schema = good.replace("\"schema\":1", "\"schema\":2") + "\n";
        assert!(matches!(parse_records(&wrong_schema), Err(RecordError::ParseError { line: 1, .. })));
        assert!(parse_records("").unwrap().is_empty());
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.records");
        let recs: Vec<Record> = (0..10).map(|i| scan(2 * i + 1)).collect();
        persist(&recs, &path).unwrap();
        assert_eq!(resume(&path).unwrap(), recs);
        assert_eq!(completed(&recs).len(), 10);

        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        write!(f, "{{\"schema\":1").unwrap();
        drop(f);
        assert_eq!(resume_for_append(&path).unwrap(), recs);
        persist(&[scan(99)], &path).unwrap();
        assert_eq!(resume(&path).unwrap().len(), 11);
        assert!(resume(&dir.path().join("missing")).unwrap().is_empty());
    }
}
