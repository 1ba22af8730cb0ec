//! Deterministic CSV and JSON emission.
//!
//! Identical inputs must yield byte-identical files, so all number
//! formatting is explicit here. Non-finite values survive the trip:
//! CSV carries literal `inf` / `-inf` / `nan` tokens, JSON carries
//! `null` plus a per-row `non_finite` map naming the affected columns.

use crate::CliError;
use std::io::Write;

/// Output file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Validation(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// A rectangular table with `quantity[unit]` headers.
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "ragged table row");
        self.rows.push(row);
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Render into `w` in the requested format.
    pub fn write(&self, w: &mut impl Write, format: Format) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv(&self, w: &mut impl Write) -> Result<(), CliError> {
        writeln!(w, "{}", self.headers.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut impl Write) -> Result<(), CliError> {
        writeln!(w, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut fields: Vec<String> = Vec::with_capacity(row.len() + 1);
            let mut non_finite: Vec<String> = Vec::new();
            for (header, &x) in self.headers.iter().zip(row) {
                if x.is_finite() {
                    fields.push(format!("{}: {}", json_string(header), fmt_f64(x)));
                } else {
                    fields.push(format!("{}: null", json_string(header)));
                    non_finite.push(format!(
                        "{}: {}",
                        json_string(header),
                        json_string(fmt_f64(x).as_str())
                    ));
                }
            }
            if !non_finite.is_empty() {
                fields.push(format!("\"non_finite\": {{{}}}", non_finite.join(", ")));
            }
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "{{{}}}{}", fields.join(", "), comma)?;
        }
        writeln!(w, "]")?;
        Ok(())
    }
}

/// Shortest-roundtrip decimal for ordinary magnitudes, scientific
/// notation outside [1e-4, 1e15), and the literal sentinel tokens for
/// non-finite values.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn json_string(s: &str) -> String {
    // Headers and tokens contain no characters needing escapes.
    format!("\"{s}\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_cover_the_ranges() {
        assert_eq!(fmt_f64(43.6208), "43.6208");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(-1.5), "-1.5");
        assert_eq!(fmt_f64(3.2e-7), "3.2e-7");
        assert_eq!(fmt_f64(2.5e17), "2.5e17");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn csv_carries_sentinel_tokens() {
        let mut t = Table::new(&["a[1]", "b[1]"]);
        t.push_row(vec![1.0, f64::INFINITY]);
        t.push_row(vec![f64::NAN, -2.0]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "a[1],b[1]\n1,inf\nnan,-2\n");
    }

    #[test]
    fn json_is_valid_and_tags_non_finite_fields() {
        let mut t = Table::new(&["theta[deg]", "delta[um]"]);
        t.push_row(vec![43.55, f64::INFINITY]);
        t.push_row(vec![43.56, 0.25]);
        let mut buf = Vec::new();
        t.write(&mut buf, Format::Json).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[0]["delta[um]"], serde_json::Value::Null);
        assert_eq!(v[0]["non_finite"]["delta[um]"], "inf");
        assert_eq!(v[1]["delta[um]"], 0.25);
        assert!(v[1].get("non_finite").is_none());
    }
}
