use std::fmt::Display;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// One command's output in every supported format.
pub struct Report {
    json: Value,
    /// Documents re-parse as inputs, so no extra keys are added to them.
    document: bool,
    rows: Vec<(String, String)>,
    grid: Option<(Vec<String>, Vec<Vec<String>>)>,
    certification: String,
    default: Format,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

impl Report {
    pub fn empty() -> Self {
        Report {
            json: Value::Null,
            document: false,
            rows: Vec::new(),
            grid: None,
            certification: String::new(),
            default: Format::Table,
        }
    }

    pub fn new(json: Value) -> Self {
        Report { json, ..Self::empty() }
    }

    pub fn document(json: Value) -> Self {
        Report { json, document: true, ..Self::empty() }
    }

    pub fn grid(json: Value, columns: &[&str], rows: &[Value]) -> Self {
        let body = rows.iter().map(|r| columns.iter().map(|c| cell(&r[*c])).collect()).collect();
        Report { json, grid: Some((columns.iter().map(|c| c.to_string()).collect(), body)), ..Self::empty() }
    }

    pub fn with_json(mut self, json: Value) -> Self {
        self.json = json;
        self
    }

    pub fn row(mut self, key: impl Display, value: impl Display) -> Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }

    pub fn certification(mut self, level: &str) -> Self {
        self.certification = level.to_string();
        self
    }

    pub fn default_format(mut self, f: Format) -> Self {
        self.default = f;
        self
    }

    fn table_lines(&self) -> (Vec<String>, Vec<Vec<String>>) {
        match &self.grid {
            Some((h, b)) => (h.clone(), b.clone()),
            None => (
                vec!["field".into(), "value".into()],
                self.rows.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect(),
            ),
        }
    }

    pub fn render(&self, chosen: Option<Format>) -> String {
        match chosen.unwrap_or(self.default) {
            Format::Json => {
                let mut json = self.json.clone();
                if !self.document {
                    if let Value::Object(m) = &mut json {
                        m.entry("certification").or_insert_with(|| Value::from(self.certification.clone()));
                    }
                }
                serde_json::to_string_pretty(&json).expect("value serializes") + "\n"
            }
            Format::Table => {
                let (header, body) = self.table_lines();
                let mut width = vec![0usize; header.len()];
                for r in std::iter::once(&header).chain(&body) {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |r: &[String]| {
                    let cells: Vec<String> =
                        r.iter().zip(&width).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                    cells.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = String::new();
                if self.grid.is_some() {
                    out.push_str(&line(&header));
                    for r in &body {
                        out.push_str(&line(r));
                    }
                } else {
                    for (k, v) in &self.rows {
                        let pad = " ".repeat(width[0] - k.chars().count());
                        out.push_str(&format!("{k}:{pad} {v}\n"));
                    }
                }
                out.push_str(&format!("certification level: {}\n", self.certification));
                out
            }
            Format::Csv => {
                let (header, body) = self.table_lines();
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                w.write_record(&header).expect("in-memory write");
                for r in &body {
                    w.write_record(r).expect("in-memory write");
                }
                w.write_record(["certification level", &self.certification]).ok();
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}
