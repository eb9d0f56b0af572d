//! Output rendering: aligned tables, byte-stable CSV, and JSON lines.

use std::io::{self, Write};

/// Output format selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Human-readable aligned text (default for most commands).
    Table,
    /// Comma-separated values with scientific-notation numerics.
    Csv,
    /// One JSON object per row.
    JsonLines,
}

/// One value in a record.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Flag(bool),
    Text(String),
    Empty,
}

/// A uniform set of rows sharing one column schema.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSet {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Scientific notation in the C `%.*e` style: one leading digit, a fixed
/// number of fractional digits, and a signed two-digit exponent, so that
/// repeated runs are byte-identical and trivially machine-parseable.
pub fn fmt_sci(value: f64, precision: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let rendered = format!("{value:.precision$e}");
    let (mantissa, exponent) = rendered
        .split_once('e')
        .expect("float `e` formatting always contains an exponent");
    let (sign, digits) = match exponent.strip_prefix('-') {
        Some(rest) => ('-', rest),
        None => ('+', exponent),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

impl Cell {
    fn table(&self) -> String {
        match self {
            Cell::Float(v) => fmt_sci(*v, 9),
            Cell::Flag(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Empty => "-".to_string(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => fmt_sci(*v, 10),
            Cell::Flag(v) => v.to_string(),
            // The CSV dialect is kept quote-free; separators inside
            // free-form text are demoted to semicolons.
            Cell::Text(v) => v.replace(',', ";").replace('\n', " "),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Float(v) => serde_json::json!(v),
            Cell::Flag(v) => serde_json::json!(v),
            Cell::Text(v) => serde_json::json!(v),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl RecordSet {
    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Table => self.render_table(out),
            Format::Csv => self.render_csv(out),
            Format::JsonLines => self.render_json_lines(out),
        }
    }

    /// A single row prints as a name/value listing; several rows print as
    /// an aligned grid under a header.
    fn render_table(&self, out: &mut dyn Write) -> io::Result<()> {
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (name, cell) in self.columns.iter().zip(&self.rows[0]) {
                writeln!(out, "{name:<width$}  {}", cell.table())?;
            }
            return Ok(());
        }
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Cell::table).collect())
            .collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", header.join("  ").trim_end())?;
        for row in &rendered {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end())?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn render_json_lines(&self, out: &mut dyn Write) -> io::Result<()> {
        for row in &self.rows {
            let mut object = serde_json::Map::new();
            for (name, cell) in self.columns.iter().zip(row) {
                object.insert((*name).to_string(), cell.json());
            }
            writeln!(out, "{}", serde_json::Value::Object(object))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_format_is_c_style() {
        assert_eq!(fmt_sci(5.870015428226070_3, 9), "5.870015428e+00");
        assert_eq!(fmt_sci(-0.405267856883068_4, 10), "-4.0526785688e-01");
        assert_eq!(fmt_sci(0.0, 10), "0.0000000000e+00");
        assert_eq!(fmt_sci(1.78e-5, 3), "1.780e-05");
        assert_eq!(fmt_sci(-6.38e62, 2), "-6.38e+62");
        assert_eq!(fmt_sci(f64::INFINITY, 2), "inf");
    }

    #[test]
    fn csv_keeps_the_dialect_quote_free() {
        let records = RecordSet {
            columns: vec!["x", "note"],
            rows: vec![vec![
                Cell::Float(1.5),
                Cell::Text("bad, worse\nline".to_string()),
            ]],
        };
        let mut buffer = Vec::new();
        records.render(Format::Csv, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(text, "x,note\n1.5000000000e+00,bad; worse line\n");
    }

    #[test]
    fn single_row_table_lists_name_value_pairs() {
        let records = RecordSet {
            columns: vec!["energy", "ok"],
            rows: vec![vec![Cell::Float(-0.25), Cell::Flag(true)]],
        };
        let mut buffer = Vec::new();
        records.render(Format::Table, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(text, "energy  -2.500000000e-01\nok      true\n");
    }

    #[test]
    fn json_lines_are_one_object_per_row() {
        let records = RecordSet {
            columns: vec!["r", "R"],
            rows: vec![
                vec![Cell::Float(1.0), Cell::Float(0.5)],
                vec![Cell::Float(2.0), Cell::Empty],
            ],
        };
        let mut buffer = Vec::new();
        records.render(Format::JsonLines, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let mut lines = text.lines();
        let first: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert_eq!(first["r"], 1.0);
        let second: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
        assert!(second["R"].is_null());
    }
}
