//! Result tables and their CSV form.
//!
//! Headers carry units as `name [unit]`; provenance lines follow the data as
//! `#` comments. Numbers are written with Rust's shortest round-trip
//! formatting, so emitting the same table twice gives identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Self {
            name: name.to_string(),
            unit: unit.to_string(),
        }
    }

    pub fn header(&self) -> String {
        format!("{} [{}]", self.name, self.unit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// Textual marker in place of a number, e.g. `infeasible`.
    Flag(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Flag(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    /// File stem used by [`write_to_dir`].
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    /// Provenance lines, written after the data with a `# ` prefix.
    pub footer: Vec<String>,
}

impl ResultTable {
    pub fn new(name: impl Into<String>, columns: Vec<Column>) -> Self {
        Self {
            name: name.into(),
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    /// Appends a numeric row. Non-finite values are stored as `non_finite` flags.
    pub fn push_numbers(&mut self, values: &[f64]) {
        assert_eq!(
            values.len(),
            self.columns.len(),
            "row width must match columns"
        );
        let row = values
            .iter()
            .map(|&v| {
                if v.is_finite() {
                    Cell::Num(v)
                } else {
                    Cell::Flag("non_finite".into())
                }
            })
            .collect();
        self.rows.push(row);
    }

    /// Appends a row with `flag` in the first column and blanks elsewhere.
    pub fn push_flag_row(&mut self, flag: &str) {
        let mut row = vec![Cell::Flag(flag.to_string())];
        row.resize(self.columns.len(), Cell::Flag(String::new()));
        self.rows.push(row);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.footer.push(line.into());
    }

    /// Values of one column, skipping flags.
    pub fn column_values(&self, index: usize) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|r| r.get(index).and_then(Cell::as_f64))
            .collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

/// Formats a finite number for CSV output.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writes `table` as CSV: one header row, data rows, then `#` footer lines.
pub fn emit_csv<W: Write>(table: &ResultTable, out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(table.columns.iter().map(Column::header))?;
    for row in &table.rows {
        if row.len() != table.columns.len() {
            return Err(Error::domain(format!(
                "table {}: row has {} cells for {} columns",
                table.name,
                row.len(),
                table.columns.len()
            )));
        }
        let mut fields = Vec::with_capacity(row.len());
        for cell in row {
            fields.push(match cell {
                Cell::Num(v) if v.is_finite() => format_number(*v),
                Cell::Num(v) => {
                    return Err(Error::domain(format!(
                        "table {}: non-finite value {v}",
                        table.name
                    )))
                }
                Cell::Flag(s) => s.clone(),
            });
        }
        writer.write_record(&fields)?;
    }
    let mut out = writer
        .into_inner()
        .map_err(|e| Error::Csv(e.into_error().into()))?;
    for line in &table.footer {
        writeln!(out, "# {}", line.replace('\n', " ")).map_err(|e| Error::Csv(e.into()))?;
    }
    Ok(())
}

/// CSV text of `table`.
pub fn to_csv_string(table: &ResultTable) -> Result<String> {
    let mut buf = Vec::new();
    emit_csv(table, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

/// Writes `table` to `<dir>/<name>.csv` and returns the path.
pub fn write_to_dir(table: &ResultTable, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(format!("{}.csv", table.name));
    let file = fs::File::create(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let mut buffered = std::io::BufWriter::new(file);
    emit_csv(table, &mut buffered)?;
    buffered.flush().map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
