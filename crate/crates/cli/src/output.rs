//! Output records and their JSON / CSV encodings.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which is
//! enough for an exact round trip through any conforming parser.

use std::io::Write;

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Int(u128),
    Text(String),
    Bool(bool),
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Num(x) => format_float(*x),
            Field::Int(i) => i.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Int(x as u128)
    }
}

impl From<u64> for Field {
    fn from(x: u64) -> Self {
        Field::Int(x as u128)
    }
}

impl From<u128> for Field {
    fn from(x: u128) -> Self {
        Field::Int(x)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

/// 17 significant digits; non-finite values as the strings `NaN`, `inf`, `-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Num(x) if x.is_finite() => raw(&format_float(*x)).serialize(s),
            Field::Num(x) => s.serialize_str(&x.to_string()),
            Field::Int(i) => raw(&i.to_string()).serialize(s),
            Field::Text(t) => s.serialize_str(t),
            Field::Bool(b) => s.serialize_bool(*b),
        }
    }
}

fn raw(text: &str) -> Box<RawValue> {
    RawValue::from_string(text.to_string()).expect("numeric literal is valid JSON")
}

struct Ordered<'a>(&'a [(String, Field)]);

impl Serialize for Ordered<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One result line.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Vec<(String, Field)>,
    pub values: Vec<(String, Field)>,
    pub tail_bound: f64,
    pub verdict: Option<bool>,
    pub seed: Option<u64>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            values: Vec::new(),
            tail_bound: 0.0,
            verdict: None,
            seed: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Field>) -> Self {
        self.inputs.push((key.to_string(), v.into()));
        self
    }

    pub fn value(mut self, key: &str, v: impl Into<Field>) -> Self {
        self.values.push((key.to_string(), v.into()));
        self
    }

    pub fn tail(mut self, bound: f64) -> Self {
        self.tail_bound = bound;
        self
    }

    pub fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["command".to_string()];
        h.extend(self.inputs.iter().map(|(k, _)| k.clone()));
        h.extend(self.values.iter().map(|(k, _)| k.clone()));
        h.extend(["tail_bound", "verdict", "seed"].map(String::from));
        h
    }

    fn csv_row(&self) -> Vec<String> {
        let mut r = vec![self.command.clone()];
        r.extend(self.inputs.iter().map(|(_, v)| v.render()));
        r.extend(self.values.iter().map(|(_, v)| v.render()));
        r.push(format_float(self.tail_bound));
        r.push(self.verdict.map(|v| v.to_string()).unwrap_or_default());
        r.push(self.seed.map(|v| v.to_string()).unwrap_or_default());
        r
    }
}

impl Serialize for OutputRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("command", &self.command)?;
        map.serialize_entry("inputs", &Ordered(&self.inputs))?;
        map.serialize_entry("values", &Ordered(&self.values))?;
        map.serialize_entry("tail_bound", &Field::Num(self.tail_bound))?;
        if let Some(v) = self.verdict {
            map.serialize_entry("verdict", &v)?;
        }
        if let Some(seed) = self.seed {
            map.serialize_entry("seed", &seed)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// JSON: one object per line. CSV: header from the first record, one row
/// per record.
pub fn write_records(out: &mut dyn Write, records: &[OutputRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.csv_header())?;
            }
            for r in records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.1,
            1.0 / 3.0,
            3.289_868_133_696_453,
            1e-300,
            -2.5e17,
            f64::MIN_POSITIVE,
        ] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn json_keeps_key_order() {
        let r = OutputRecord::new("x")
            .input("n", 3usize)
            .input("s", 2.0)
            .value("value", 0.5)
            .tail(1e-12);
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], Format::Json).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(
            text.starts_with(r#"{"command":"x","inputs":{"n":3,"s":2.0000000000000000e0}"#),
            "{text}"
        );
    }
}
