//! Result formatting: CSV files with a provenance comment line, and
//! fixed-width stdout tables. All floating-point values are written with
//! 17 significant digits so runs are reproducible bit-for-bit.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::errors::Result;

/// 17 significant digits in scientific notation — enough to round-trip
/// any f64 exactly.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// A CSV document: one `#` comment carrying the full parameter set that
/// produced the data, a header row, then data rows.
pub struct Csv {
    comment: String,
    header: String,
    rows: Vec<String>,
}

impl Csv {
    pub fn new(comment: impl Into<String>, header: impl Into<String>) -> Self {
        Csv {
            comment: comment.into(),
            header: header.into(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.rows.push(cells.join(","));
    }

    pub fn render(&self) -> String {
        let mut text = String::new();
        text.push_str("# ");
        text.push_str(&self.comment);
        text.push('\n');
        text.push_str(&self.header);
        text.push('\n');
        for row in &self.rows {
            text.push_str(row);
            text.push('\n');
        }
        text
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Write to `path`, creating parent directories as needed.
    pub fn write_to(&self, path: &Path) -> Result<PathBuf> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(path, self.render())?;
        Ok(path.to_path_buf())
    }

    /// Print to stdout (used when no output file was requested).
    pub fn print(&self) {
        print!("{}", self.render());
    }
}

/// Simple left-aligned column table for terminal output.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn print(&self, mut sink: impl Write) -> std::io::Result<()> {
        let cols = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut line = String::new();
        for (i, cell) in self.header.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{cell:<w$}", w = widths[i]));
        }
        writeln!(sink, "{}", line.trim_end())?;
        for row in &self.rows {
            line.clear();
            for i in 0..cols {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(&format!("{:<w$}", row[i], w = widths[i]));
            }
            writeln!(sink, "{}", line.trim_end())?;
        }
        Ok(())
    }
}
