//! Writes named tables to files or standard output.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use pgspec_core::report::{Format, Table};

use crate::CliError;

pub struct Sink {
    format: Format,
    dir: Option<PathBuf>,
    tables: Vec<(&'static str, Table)>,
}

impl Sink {
    pub fn new(format: Format, dir: Option<PathBuf>) -> Self {
        Self { format, dir, tables: Vec::new() }
    }

    pub fn add(&mut self, name: &'static str, table: Table) {
        self.tables.push((name, table));
    }

    /// Writes `<dir>/<name>.csv` (or `.txt`) per table, or prints every table
    /// to stdout under a `# name` line.
    pub fn flush(self) -> Result<(), CliError> {
        let ext = match self.format {
            Format::Csv => "csv",
            Format::Text => "txt",
        };
        match &self.dir {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.clone(), source })?;
                for (name, t) in &self.tables {
                    let path = dir.join(format!("{name}.{ext}"));
                    fs::write(&path, t.render(self.format)).map_err(|source| CliError::Write { path, source })?;
                }
            }
            None => {
                let mut out = String::new();
                for (i, (name, t)) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("# {name}\n"));
                    out.push_str(&t.render(self.format));
                }
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(out.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
            }
        }
        Ok(())
    }
}
