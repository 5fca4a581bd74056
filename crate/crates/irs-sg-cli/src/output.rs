//! CSV tables with a `#`-prefixed metadata block.
//!
//! Layout: `# key: value` lines (tool version, scenario hash, seed,
//! command, then command-specific values), a header row, data rows. Numbers
//! use the shortest representation that round-trips, so identical inputs
//! give byte-identical files.

use std::io::Write;

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn with_columns(columns: Vec<String>) -> Self {
        Table {
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<f64>) {
        self.push_text(row.iter().map(|v| v.to_string()).collect());
    }

    pub fn push_text(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, out: impl Write) -> std::io::Result<()> {
        let mut out = out;
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let mut t = Table::new(&["x", "y"]);
        t.meta("seed", 7);
        t.push(vec![1.0, 0.25]);
        t.push(vec![2.0, 1e-12]);
        let mut buf = Vec::new();
        t.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "# seed: 7\nx,y\n1,0.25\n2,0.000000000001\n");
    }
}
