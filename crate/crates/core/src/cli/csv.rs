use super::config::RunConfig;
use crate::error::Result;
use std::io::Write;

/// CSV sink: a `# {config}` provenance line, a header, then rows flushed
/// as they are written.
pub struct CsvWriter<'a> {
    out: csv::Writer<&'a mut dyn Write>,
}

pub enum Cell<'a> {
    F(f64),
    U(u128),
    B(bool),
    S(&'a str),
    Empty,
}

impl From<f64> for Cell<'_> {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell<'_> {
    fn from(v: usize) -> Self {
        Cell::U(v as u128)
    }
}

impl From<bool> for Cell<'_> {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl<'a> From<&'a str> for Cell<'a> {
    fn from(v: &'a str) -> Self {
        Cell::S(v)
    }
}

impl<T: Into<Cell<'static>>> From<Option<T>> for Cell<'_> {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// 17 significant digits, round-trip safe.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

impl<'a> CsvWriter<'a> {
    pub fn new(out: &'a mut dyn Write, config: &RunConfig, header: &[&str]) -> Result<Self> {
        writeln!(out, "# {}", serde_json::to_string(config)?)?;
        let mut out = csv::Writer::from_writer(out);
        out.write_record(header)?;
        out.flush()?;
        Ok(CsvWriter { out })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<()> {
        let record: Vec<String> = cells
            .iter()
            .map(|c| match c {
                Cell::F(v) => format_f64(*v),
                Cell::U(v) => v.to_string(),
                Cell::B(v) => v.to_string(),
                Cell::S(s) => s.to_string(),
                Cell::Empty => String::new(),
            })
            .collect();
        self.out.write_record(&record)?;
        self.out.flush()?;
        Ok(())
    }
}

/// The configuration embedded in a CSV produced by this module.
pub fn embedded_config(csv: &str) -> Result<RunConfig> {
    let first = csv.lines().next().unwrap_or_default();
    let json = first.strip_prefix("# ").ok_or_else(|| crate::Error::Config("missing config header line".into()))?;
    RunConfig::from_json(json)
}
