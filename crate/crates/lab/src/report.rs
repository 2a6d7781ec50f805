//! Report rows and their CSV and JSON encodings. Both encodings round-trip:
//! parsing emitted text gives back the rows exactly, floats included.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use sumprod::Rational;

use crate::error::LabResult;

mod rational_text {
    use serde::{Deserialize, Deserializer, Serializer};
    use sumprod::Rational;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(t) if !t.is_empty() => t.parse().map(Some).map_err(serde::de::Error::custom),
            _ => Ok(None),
        }
    }
}

/// One measurement. `param` is the sweep value that produced it and `label`
/// names the measured quantity, e.g. `gA` or `X:ap`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub experiment: String,
    pub label: String,
    pub param: i64,
    pub set_size: u64,
    #[serde(with = "rational_text")]
    pub doubling: Option<Rational>,
    pub result: u64,
    /// A comparison quantity when the experiment has one, e.g. `|A|^{dim−1}`.
    #[serde(with = "rational_text")]
    pub reference: Option<Rational>,
    /// `ln(result) / ln(set_size)`; only when `set_size ≥ 2` and `result ≥ 1`.
    pub exponent: Option<f64>,
    pub detail: Option<String>,
    pub runtime_ms: u64,
}

impl ReportRow {
    pub fn new(experiment: &str, label: impl Into<String>, param: i64, set_size: usize, result: u64) -> Self {
        let set_size = set_size as u64;
        let exponent = (set_size >= 2 && result >= 1).then(|| (result as f64).ln() / (set_size as f64).ln());
        ReportRow {
            experiment: experiment.to_string(),
            label: label.into(),
            param,
            set_size,
            doubling: None,
            result,
            reference: None,
            exponent,
            detail: None,
            runtime_ms: 0,
        }
    }

    pub fn with_doubling(mut self, k: Option<Rational>) -> Self {
        self.doubling = k;
        self
    }

    pub fn with_reference(mut self, r: Rational) -> Self {
        self.reference = Some(r);
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> LabResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> LabResult<Vec<ReportRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> LabResult<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> LabResult<Vec<ReportRow>> {
    Ok(serde_json::from_reader(input)?)
}
