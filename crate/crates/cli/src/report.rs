use std::collections::BTreeMap;

use clap::ValueEnum;
use grundylab::Error;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A titled table with sorted metadata. Rendering is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub title: String,
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TableReport {
    pub fn new(title: &str) -> Self {
        TableReport {
            title: title.to_string(),
            metadata: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: &str) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.columns = names.iter().map(|s| s.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Values of one column, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn render(&self, format: Format) -> Result<String, Error> {
        match format {
            Format::Json => serde_json::to_string_pretty(self)
                .map(|s| s + "\n")
                .map_err(|e| Error::Parse(e.to_string())),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }

    fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.title);
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                self.rows
                    .iter()
                    .map(|r| r[i].len())
                    .chain(std::iter::once(self.columns[i].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(&self.columns));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TableReport {
        let mut r = TableReport::new("t");
        r.meta("b", "2");
        r.meta("a", "1");
        r.columns(&["element_label", "grundy"]);
        r.row(vec!["{1,2}{3}".into(), "3".into()]);
        r.row(vec!["x".into(), "10".into()]);
        r
    }

    #[test]
    fn csv_quotes_labels() {
        let csv = sample().render(Format::Csv).unwrap();
        assert_eq!(csv, "element_label,grundy\n\"{1,2}{3}\",3\nx,10\n");
    }

    #[test]
    fn text_is_aligned_and_sorted() {
        let text = sample().render(Format::Text).unwrap();
        assert_eq!(
            text,
            "# t\n# a: 1\n# b: 2\nelement_label  grundy\n     {1,2}{3}       3\n            x      10\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let json = sample().render(Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["columns"][1], "grundy");
        assert_eq!(v["metadata"]["a"], "1");
        assert_eq!(sample().column("grundy").unwrap(), vec!["3", "10"]);
    }
}
