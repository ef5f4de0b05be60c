use std::io::{self, Write};

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One command's result in all three renderings.
pub(crate) struct Output {
    pub command: &'static str,
    pub payload: Value,
    pub text: String,
    pub csv: String,
    /// Set when the result depended on random sampling.
    pub seed: Option<u64>,
}

impl Output {
    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Text => writeln!(out, "{}", self.text.trim_end()),
            Format::Csv => out.write_all(self.csv.as_bytes()),
            Format::Json => {
                let mut env = json!({ "command": self.command, "payload": self.payload });
                if let Some(seed) = self.seed {
                    env["seed"] = json!(seed);
                }
                writeln!(out, "{env}")
            }
        }
    }
}

/// Renders a header and rows as CSV.
pub(crate) fn csv_table<R, F>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = Vec<F>>,
    F: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// `a;b;c` for list-valued CSV cells.
pub(crate) fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub(crate) fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}
