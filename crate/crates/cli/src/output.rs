use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use pcv_core::checks::{CheckReport, ReportRecord};
use pcv_core::sweep::SweepSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Jsonl,
    Csv,
}

/// Writes report records in one of the three formats.
pub struct ReportWriter {
    format: Format,
    verbose: bool,
    timing: bool,
    out: Box<dyn Write>,
    csv: Option<csv::Writer<Box<dyn Write>>>,
}

pub fn open_sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

impl ReportWriter {
    pub fn new(format: Format, out: Box<dyn Write>, verbose: bool, timing: bool) -> Self {
        let (out, csv): (Box<dyn Write>, _) = match format {
            Format::Csv => (Box::new(io::sink()), Some(csv::Writer::from_writer(out))),
            _ => (out, None),
        };
        ReportWriter { format, verbose, timing, out, csv }
    }

    pub fn write(&mut self, r: &CheckReport) -> io::Result<()> {
        let record = ReportRecord::new(r, self.timing);
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, &record)?;
                self.out.write_all(b"\n")
            }
            Format::Csv => self.csv.as_mut().expect("csv writer").serialize(&record).map_err(io::Error::other),
            Format::Human => {
                if r.holds && !self.verbose {
                    return Ok(());
                }
                let verdict = if r.holds { "ok  " } else { "FAIL" };
                write!(
                    self.out,
                    "{verdict} {:<16} p={:<7} mod {}: lhs {} rhs {}",
                    r.id(),
                    r.p(),
                    r.lhs.modulus(),
                    r.lhs,
                    r.rhs
                )?;
                match &r.note {
                    Some(note) => writeln!(self.out, "  [{note}]"),
                    None => writeln!(self.out),
                }
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        if let Some(mut w) = self.csv.take() {
            w.flush()?;
        }
        self.out.flush()
    }
}

pub fn write_summary(w: &mut dyn Write, s: &SweepSummary) -> io::Result<()> {
    writeln!(w, "checks run: {}", s.checks)?;
    writeln!(w, "primes: {}", s.primes)?;
    writeln!(w, "records: {}", s.records)?;
    writeln!(w, "failures: {}", s.failures)?;
    for (id, p, e) in &s.errors {
        writeln!(w, "error: {id} at p={p}: {e}")?;
    }
    writeln!(w, "wall time: {:.3} s", s.wall.as_secs_f64())
}
