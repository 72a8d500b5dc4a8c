use std::io::{self, Write};

use crate::Format;

/// Column-oriented view of a result for CSV output.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        let row: Vec<String> = cells.into_iter().collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A command result in both renderings.
pub struct Output {
    json: serde_json::Value,
    table: Table,
}

impl Output {
    pub fn new(json: serde_json::Value, table: Table) -> Output {
        Output { json, table }
    }

    pub fn write(&self, format: Format, mut out: impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.table.header)?;
                for r in &self.table.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
        }
    }
}
