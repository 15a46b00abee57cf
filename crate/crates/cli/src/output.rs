use std::io::Write;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Format};

/// What a subcommand produced, in every output shape.
pub struct Report {
    pub results: Value,
    /// header row first
    pub csv: Vec<Vec<String>>,
    pub text: String,
    pub status: u8,
}

impl Report {
    pub fn new(results: impl Serialize) -> Self {
        Report {
            results: serde_json::to_value(results).expect("serialisable results"),
            csv: Vec::new(),
            text: String::new(),
            status: 0,
        }
    }

    pub fn csv(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.csv = std::iter::once(header.iter().map(|h| h.to_string()).collect())
            .chain(rows)
            .collect();
        self
    }

    pub fn text(mut self, text: String) -> Self {
        self.text = text;
        self
    }

    pub fn status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }
}

pub fn emit(cli: &Cli, report: &Report, wall: Duration) -> Result<(), Box<dyn std::error::Error>> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Json => {
            let envelope = json!({
                "tool_version": env!("CARGO_PKG_VERSION"),
                "config": {
                    "command": serde_json::to_value(&cli.command)?,
                    "format": cli.format,
                    "workers": cli.workers,
                    "seed": cli.seed,
                },
                "results": report.results,
                "timing": { "wall_ms": wall.as_secs_f64() * 1e3 },
            });
            serde_json::to_writer_pretty(&mut out, &envelope)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "# qsp {} seed={}", env!("CARGO_PKG_VERSION"), cli.seed)?;
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
            for row in &report.csv {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            write!(out, "{}", report.text)?;
            if !report.text.ends_with('\n') {
                writeln!(out)?;
            }
            writeln!(
                out,
                "seed {}  wall {:.1} ms",
                cli.seed,
                wall.as_secs_f64() * 1e3
            )?;
        }
    }
    Ok(())
}
