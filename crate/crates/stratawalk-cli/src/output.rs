//! Deterministic file emission.
//!
//! Every run of a command on the same inputs must produce byte-identical
//! files, so floats are printed in a fixed 17-significant-digit scientific
//! form (enough to round-trip any f64) and rows are emitted in a fixed
//! order. Output files are staged in memory and written only after the whole
//! computation has succeeded, so a failing run leaves nothing half-written.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Fixed-width scientific float formatting: 1 + 16 significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV staged in memory; commas and newlines only, no quoting (no field
/// this tool emits ever needs it).
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        let mut buf = String::with_capacity(4096);
        buf.push_str(header);
        buf.push('\n');
        Csv { buf }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for field in fields {
            if !first {
                self.buf.push(',');
            }
            self.buf.push_str(field.as_ref());
            first = false;
        }
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Pretty JSON with a trailing newline; field order follows the struct.
pub fn to_json_file<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output structs always serialize");
    text.push('\n');
    text
}

/// The staged outputs of one command: relative file name plus contents.
#[derive(Debug, Default)]
pub struct FileSet {
    files: Vec<(PathBuf, String)>,
}

impl FileSet {
    pub fn add(&mut self, name: impl Into<PathBuf>, contents: String) {
        self.files.push((name.into(), contents));
    }

    /// Write every staged file under `out_dir`, creating it if needed.
    /// Returns the paths written, in emission order.
    pub fn write_all(&self, out_dir: &Path) -> io::Result<Vec<PathBuf>> {
        fs::create_dir_all(out_dir)?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, contents) in &self.files {
            let path = out_dir.join(name);
            fs::write(&path, contents)?;
            written.push(path);
        }
        Ok(written)
    }

    /// One-line report of what was produced, for stdout.
    pub fn describe(&self, out_dir: &Path) -> String {
        let mut line = String::from("wrote");
        for (k, (name, _)) in self.files.iter().enumerate() {
            let sep = if k == 0 { ' ' } else { ',' };
            let _ = write!(line, "{sep}{}", out_dir.join(name).display());
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width_scientific() {
        assert_eq!(fmt_float(0.0), "0.0000000000000000e0");
        assert_eq!(fmt_float(-2.5), "-2.5000000000000000e0");
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        // round-trips exactly
        let v = std::f64::consts::PI;
        assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn csv_builds_rows_in_order() {
        let mut csv = Csv::new("a,b");
        csv.row(["1", "2"]);
        csv.row([fmt_float(1.0), fmt_float(2.0)]);
        assert_eq!(
            csv.finish(),
            "a,b\n1,2\n1.0000000000000000e0,2.0000000000000000e0\n"
        );
    }
}
