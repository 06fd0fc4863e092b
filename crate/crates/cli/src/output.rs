//! Deterministic table rendering: CSV with a one-line JSON metadata header
//! comment, or a JSON document carrying the same formatted cells.

use serde_json::{json, Value};

pub struct Table {
    pub meta: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// 12 significant digits, scientific; fixed formatting keeps output
/// byte-stable across runs.
pub fn sig(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn sig_usize(v: usize) -> String {
    format!("{v}")
}

impl Table {
    pub fn render(&self, format: &str) -> String {
        match format {
            "json" => self.render_json(),
            _ => self.render_csv(),
        }
    }

    fn render_csv(&self) -> String {
        let mut s = format!("# {}\n", self.meta);
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    fn render_json(&self) -> String {
        let doc = json!({
            "meta": self.meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let t = Table {
            meta: json!({"command": "demo"}),
            columns: vec!["n".into(), "value".into()],
            rows: vec![vec!["0".into(), sig(1.0)], vec!["1".into(), sig(0.5)]],
        };
        let out = t.render("csv");
        let mut lines = out.lines();
        assert!(lines.next().unwrap().starts_with("# {"));
        assert_eq!(lines.next().unwrap(), "n,value");
        assert_eq!(lines.next().unwrap(), "0,1.00000000000e0");
    }

    #[test]
    fn sig_digits() {
        assert_eq!(sig(0.25), "2.50000000000e-1");
        assert_eq!(sig(-3.0), "-3.00000000000e0");
    }

    #[test]
    fn json_is_valid() {
        let t = Table {
            meta: json!({"x": 1}),
            columns: vec!["a".into()],
            rows: vec![vec![sig(2.0)]],
        };
        let doc: Value = serde_json::from_str(&t.render("json")).unwrap();
        assert_eq!(doc["columns"][0], "a");
    }
}
