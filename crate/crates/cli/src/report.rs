//! Records, reports and their JSON/CSV renderings.

use std::f64::consts::LN_2;

use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Debug, Clone)]
enum Field {
    Int(i64),
    Num(f64),
    /// A value in nats, converted when bits are requested.
    Entropy(f64),
    Text(String),
    Flag(bool),
    Null,
}

/// One output row with a fixed field order.
#[derive(Debug, Clone, Default)]
pub struct Record {
    fields: Vec<(&'static str, Field)>,
    pub warnings: Vec<String>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn int(mut self, key: &'static str, v: impl Into<i64>) -> Self {
        self.fields.push((key, Field::Int(v.into())));
        self
    }

    pub fn num(mut self, key: &'static str, v: f64) -> Self {
        self.fields.push((key, Field::Num(v)));
        self
    }

    pub fn entropy(mut self, key: &'static str, v: f64) -> Self {
        self.fields.push((key, Field::Entropy(v)));
        self
    }

    pub fn opt_num(mut self, key: &'static str, v: Option<f64>) -> Self {
        self.fields.push((key, v.map_or(Field::Null, Field::Num)));
        self
    }

    pub fn text(mut self, key: &'static str, v: impl Into<String>) -> Self {
        self.fields.push((key, Field::Text(v.into())));
        self
    }

    pub fn flag(mut self, key: &'static str, v: bool) -> Self {
        self.fields.push((key, Field::Flag(v)));
        self
    }

    pub fn warn(mut self, warnings: impl IntoIterator<Item = String>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    fn json(&self, bits: bool) -> Value {
        let mut map = Map::new();
        for (k, f) in &self.fields {
            map.insert((*k).to_string(), field_json(f, bits));
        }
        map.insert("warnings".into(), json!(self.warnings));
        Value::Object(map)
    }

    fn header(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(k, _)| *k).chain(["warnings"]).collect()
    }

    fn csv_row(&self, bits: bool) -> Vec<String> {
        self.fields
            .iter()
            .map(|(_, f)| match field_json(f, bits) {
                Value::Null => String::new(),
                Value::String(s) => s,
                v => v.to_string(),
            })
            .chain([self.warnings.join("; ")])
            .collect()
    }
}

/// x rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(round15(x)).map_or(Value::Null, Value::Number)
}

fn field_json(f: &Field, bits: bool) -> Value {
    match f {
        Field::Int(v) => json!(v),
        Field::Num(v) => number(*v),
        Field::Entropy(v) => number(if bits { v / LN_2 } else { *v }),
        Field::Text(s) => json!(s),
        Field::Flag(b) => json!(b),
        Field::Null => Value::Null,
    }
}

pub struct Report {
    pub request: Value,
    pub results: Vec<Record>,
    pub warnings: Vec<String>,
    pub bits: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn json(&self) -> String {
        let doc = json!({
            "request": self.request,
            "results": self.results.iter().map(|r| r.json(self.bits)).collect::<Vec<_>>(),
            "warnings": self.warnings,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.results.first() {
            w.write_record(first.header()).expect("in-memory write");
            for r in &self.results {
                w.write_record(r.csv_row(self.bits)).expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}
