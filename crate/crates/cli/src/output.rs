//! Output plumbing: CSV and JSON artifacts under one output directory.
//! CSV files carry a timestamped comment line unless suppressed, so runs are
//! byte-identical modulo that header.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format '{other}' (csv | json)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OutputCtx {
    pub dir: PathBuf,
    pub format: Format,
    pub timestamp: bool,
}

impl OutputCtx {
    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    /// Writes a numeric table as CSV or as a JSON array of records,
    /// depending on the selected format. Returns the path written.
    pub fn write_table(
        &self,
        stem: &str,
        columns: &[&str],
        rows: &[Vec<f64>],
    ) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        match self.format {
            Format::Csv => {
                let path = self.path(&format!("{stem}.csv"));
                let mut f = fs::File::create(&path)?;
                if self.timestamp {
                    writeln!(f, "# generated {}", chrono::Utc::now().to_rfc3339())?;
                }
                writeln!(f, "{}", columns.join(","))?;
                for row in rows {
                    let line: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
                    writeln!(f, "{}", line.join(","))?;
                }
                Ok(path)
            }
            Format::Json => {
                let records: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|row| {
                        columns
                            .iter()
                            .zip(row)
                            .map(|(&c, &v)| (c.to_string(), serde_json::json!(v)))
                            .collect::<serde_json::Map<_, _>>()
                            .into()
                    })
                    .collect();
                let path = self.path(&format!("{stem}.json"));
                write_json_value(&path, &serde_json::Value::Array(records))?;
                Ok(path)
            }
        }
    }

    /// Writes a structured JSON document regardless of the table format.
    pub fn write_json(&self, name: &str, value: &serde_json::Value) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(name);
        write_json_value(&path, value)?;
        Ok(path)
    }
}

fn write_json_value(path: &Path, value: &serde_json::Value) -> std::io::Result<()> {
    let mut f = fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}
