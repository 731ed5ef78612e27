//! Output documents. JSON is canonical; TSV and markdown are flat views of it.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Md,
}

/// A result ready for printing. Objects serialize with sorted keys.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
}

impl Report {
    pub fn new(value: Value) -> Report {
        Report { value }
    }

    /// A table with a fixed column order; rows are objects keyed by column.
    pub fn table(columns: &[&str], rows: Vec<Map<String, Value>>) -> Report {
        let mut doc = Map::new();
        doc.insert("columns".into(), columns.iter().map(|&c| Value::from(c)).collect());
        doc.insert("rows".into(), rows.into_iter().map(Value::Object).collect());
        Report::new(Value::Object(doc))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let (header, rows) = self.grid();
                let mut s = String::new();
                for line in std::iter::once(header).chain(rows) {
                    s.push_str(&line.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Md => {
                let (header, rows) = self.grid();
                let mut s = String::new();
                let _ = writeln!(s, "| {} |", header.join(" | "));
                let _ = writeln!(s, "|{}", "---|".repeat(header.len()));
                for r in rows {
                    let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                    let _ = writeln!(s, "| {} |", cells.join(" | "));
                }
                s
            }
        }
    }

    /// Header and rows for the flat views.
    fn grid(&self) -> (Vec<String>, Vec<Vec<String>>) {
        if let Some((cols, rows)) = self.explicit_table() {
            let body = rows
                .iter()
                .map(|r| cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
                .collect();
            return (cols, body);
        }
        match &self.value {
            Value::Array(items) if items.iter().all(Value::is_object) => {
                let mut cols: Vec<String> = Vec::new();
                for it in items {
                    for k in it.as_object().unwrap().keys() {
                        if !cols.contains(k) {
                            cols.push(k.clone());
                        }
                    }
                }
                cols.sort();
                let body = items
                    .iter()
                    .map(|it| cols.iter().map(|c| cell(it.get(c).unwrap_or(&Value::Null))).collect())
                    .collect();
                (cols, body)
            }
            Value::Object(m) => (
                vec!["key".into(), "value".into()],
                m.iter().map(|(k, v)| vec![k.clone(), cell(v)]).collect(),
            ),
            other => (vec!["value".into()], vec![vec![cell(other)]]),
        }
    }

    fn explicit_table(&self) -> Option<(Vec<String>, &Vec<Value>)> {
        let obj = self.value.as_object()?;
        let cols = obj.get("columns")?.as_array()?;
        let rows = obj.get("rows")?.as_array()?;
        let cols = cols.iter().map(|c| c.as_str().map(String::from)).collect::<Option<Vec<_>>>()?;
        Some((cols, rows))
    }
}

/// Strings print bare; everything else as compact JSON. Tabs and newlines
/// would break the row structure, so they become spaces.
fn cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    s.replace(['\t', '\n'], " ")
}
