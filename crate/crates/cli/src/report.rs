use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub node_limit: u64,
    pub bits: u32,
    pub format: Format,
    pub seed: u64,
    pub threads: usize,
}

/// What a command hands back before it is wrapped into a [`Report`].
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub results: Value,
    pub passed: bool,
    pub summary: String,
    /// Rows for the CSV emitter; without them CSV falls back to key/value pairs.
    pub table: Option<Vec<Value>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: RunConfig,
    pub results: Value,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
    #[serde(skip)]
    pub table: Option<Vec<Value>>,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_table(rows: &[Value]) -> String {
    let mut header: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(m) = row {
            for k in m.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        let empty = Map::new();
        let m = row.as_object().unwrap_or(&empty);
        let rec: Vec<String> = header.iter().map(|k| m.get(k).map(scalar).unwrap_or_default()).collect();
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Csv => match &self.table {
                Some(rows) => csv_table(rows),
                None => {
                    let mut rows = vec![serde_json::json!({"key": "passed", "value": self.passed})];
                    if let Value::Object(m) = &self.results {
                        rows.extend(m.iter().map(|(k, v)| serde_json::json!({"key": k, "value": scalar(v)})));
                    }
                    csv_table(&rows)
                }
            },
            Format::Text => {
                let mut out = format!("{} {}\n", if self.passed { "PASS" } else { "FAIL" }, self.summary);
                match &self.results {
                    Value::Object(m) => {
                        for (k, v) in m {
                            out.push_str(&format!("  {k}: {}\n", scalar(v)));
                        }
                    }
                    Value::Null => {}
                    other => out.push_str(&format!("  {other}\n")),
                }
                if let Some(t) = self.wall_seconds {
                    out.push_str(&format!("  wall: {t:.3}s\n"));
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_and_unions_columns() {
        let rows = vec![json!({"q": 7, "list": "7,13"}), json!({"q": 13, "extra": true})];
        let s = csv_table(&rows);
        assert_eq!(s, "q,list,extra\n7,\"7,13\",\n13,,true\n");
    }
}
