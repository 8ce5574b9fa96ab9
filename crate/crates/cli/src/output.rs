use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Format};

/// Value of one table cell. `Undefined` is written as the literal
/// `undefined`.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Undefined,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Undefined => "undefined".into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(format!("{x:?}")),
            Cell::Text(s) => json!(s),
            Cell::Undefined => json!("undefined"),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Undefined, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(name: &'static str, columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            name,
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }

    fn write<W: Write>(&self, format: Format, out: W) -> Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Vec<Value>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::to_json).collect())
                    .collect();
                let doc = json!({ "columns": self.columns, "rows": rows });
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// Everything a command produces.
pub struct Report {
    /// Short name of the data product, recorded in the manifest.
    pub target: &'static str,
    /// The first table is the one printed when no output directory is set.
    pub tables: Vec<Table>,
    /// Verbatim files such as edge lists, keyed by file name.
    pub files: Vec<(String, String)>,
    /// Extra manifest entries.
    pub notes: serde_json::Map<String, Value>,
}

impl Report {
    pub fn new(target: &'static str, tables: Vec<Table>) -> Self {
        Self {
            target,
            tables,
            files: Vec::new(),
            notes: serde_json::Map::new(),
        }
    }

    pub fn note(mut self, key: &str, value: impl Serialize) -> Self {
        self.notes.insert(
            key.to_owned(),
            serde_json::to_value(value).expect("serializable note"),
        );
        self
    }

    pub fn file(mut self, name: impl Into<String>, contents: String) -> Self {
        self.files.push((name.into(), contents));
        self
    }

    pub fn emit(&self, cli: &Cli) -> Result<()> {
        let format = cli.global.format;
        let Some(dir) = &cli.global.out else {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if let Some(t) = self.tables.first() {
                t.write(format, &mut lock)?;
            } else if let Some((_, contents)) = self.files.first() {
                lock.write_all(contents.as_bytes())?;
            }
            return Ok(());
        };
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut written = Vec::new();
        for t in &self.tables {
            let name = format!("{}.{}", t.name, format.extension());
            let file = fs::File::create(dir.join(&name))
                .with_context(|| format!("creating {name}"))?;
            let mut file = std::io::BufWriter::new(file);
            t.write(format, &mut file)?;
            file.flush()?;
            written.push(name);
        }
        for (name, contents) in &self.files {
            fs::write(dir.join(name), contents).with_context(|| format!("writing {name}"))?;
            written.push(name.clone());
        }
        self.write_manifest(cli, dir, &written)
    }

    fn write_manifest(&self, cli: &Cli, dir: &Path, files: &[String]) -> Result<()> {
        let manifest = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "target": self.target,
            "seed": cli.global.seed,
            "config": cli,
            "files": files,
            "notes": self.notes,
        });
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(dir.join("manifest.json"), text).context("writing manifest.json")?;
        Ok(())
    }
}
