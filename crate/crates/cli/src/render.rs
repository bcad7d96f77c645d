use serde::Serialize;
use serde_json::Value;

use crate::config::Format;
use crate::error::CliError;
use crate::report::{FigurePoint, TableRow};

const TABLE_HEADER: [&str; 7] = [
    "label",
    "x",
    "prime_count",
    "log_density_sum",
    "m_value",
    "mode",
    "flags",
];

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(writer: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn table_csv(rows: &[TableRow]) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(TABLE_HEADER)?;
    for row in rows {
        w.write_record([
            row.label.as_str(),
            &row.x.to_string(),
            &row.prime_count.to_string(),
            &row.log_density_sum,
            &row.m_value,
            &row.mode,
            &row.flags.join(";"),
        ])?;
    }
    finish(w)
}

pub fn figure_csv(points: &[FigurePoint]) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(["label", "x", "m_value"])?;
    for p in points {
        w.write_record([p.label.as_str(), &p.x.to_string(), &p.m_value])?;
    }
    finish(w)
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn table(rows: &[TableRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => table_csv(rows),
        Format::Json => json(rows),
    }
}

pub fn figure(points: &[FigurePoint], format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => figure_csv(points),
        Format::Json => json(points),
    }
}

/// Single-shot reports are JSON only.
pub fn report(value: &Value, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(value),
        Format::Csv => Err(CliError::Input("this command only emits json".into())),
    }
}
