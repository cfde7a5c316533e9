use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{RealizationRecord, SummaryRow};
use crate::error::{Error, Result};
use crate::format::sig;

pub const RECORDS_HEADER: &str = "scenario_id,n,p,replicate,seed,xn,connected,event_en,eigen_ms";
pub const SUMMARY_HEADER: &str =
    "scenario_id,n,p,mean_xn,predicted_mean,band_halfwidth,coverage,connected_frac,en_frac";

const DIGITS: usize = 17;

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(base.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

pub fn records_path(base: &Path) -> PathBuf {
    with_suffix(base, ".records.csv")
}

pub fn summary_path(base: &Path) -> PathBuf {
    with_suffix(base, ".summary.csv")
}

pub fn manifest_path(base: &Path) -> PathBuf {
    with_suffix(base, ".manifest.json")
}

fn record_line(r: &RealizationRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.scenario_id,
        r.n,
        sig(r.p, DIGITS),
        r.replicate,
        r.seed,
        sig(r.xn, DIGITS),
        r.connected,
        r.event_en,
        sig(r.eigen_ms, DIGITS)
    )
}

fn summary_line(s: &SummaryRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        s.scenario_id,
        s.n,
        sig(s.p, DIGITS),
        sig(s.mean_xn, DIGITS),
        sig(s.predicted_mean, DIGITS),
        sig(s.band_halfwidth, DIGITS),
        sig(s.coverage, DIGITS),
        sig(s.connected_frac, DIGITS),
        sig(s.en_frac, DIGITS)
    )
}

/// Appends records to a CSV file, flushing after every batch so that an
/// interrupted run leaves complete rows behind.
pub struct RecordWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl RecordWriter {
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = Self {
            path: path.to_path_buf(),
            out: BufWriter::new(file),
        };
        w.write_lines(std::iter::once(RECORDS_HEADER.to_string()))?;
        Ok(w)
    }

    /// Writes a batch sorted by `(scenario_id, n, replicate)`.
    pub fn append(&mut self, records: &[RealizationRecord]) -> Result<()> {
        let mut sorted: Vec<&RealizationRecord> = records.iter().collect();
        sorted.sort_by_key(|r| (r.scenario_id, r.n, r.replicate));
        self.write_lines(sorted.into_iter().map(record_line))
    }

    fn write_lines(&mut self, lines: impl Iterator<Item = String>) -> Result<()> {
        let path = &self.path;
        for line in lines {
            writeln!(self.out, "{line}").map_err(|e| Error::io(path, e))?;
        }
        self.out.flush().map_err(|e| Error::io(path, e))
    }
}

pub(super) fn write_summary_file(summary: &[SummaryRow], path: &Path) -> Result<()> {
    let mut sorted: Vec<&SummaryRow> = summary.iter().collect();
    sorted.sort_by_key(|s| (s.scenario_id, s.n));
    let mut text = String::from(SUMMARY_HEADER);
    text.push('\n');
    for s in sorted {
        text.push_str(&summary_line(s));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `<base>.records.csv` and `<base>.summary.csv`, rows sorted by
/// `(scenario_id, n, replicate)`, floats at 17 significant digits.
pub fn write_csv(records: &[RealizationRecord], summary: &[SummaryRow], base: &Path) -> Result<()> {
    let mut writer = RecordWriter::create(&records_path(base))?;
    writer.append(records)?;
    write_summary_file(summary, &summary_path(base))
}

fn read_rows<T>(path: &Path, header: &str, parse: impl Fn(&[&str]) -> Option<T>) -> Result<Vec<T>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let parse_err = |line: usize, message: String| Error::Parse {
        source_name: path.display().to_string(),
        line,
        message,
    };
    let mut lines = BufReader::new(file).lines();
    match lines.next() {
        Some(Ok(h)) if h == header => {}
        Some(Err(e)) => return Err(Error::io(path, e)),
        _ => return Err(parse_err(1, format!("expected header {header:?}"))),
    }
    let width = header.split(',').count();
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return Err(parse_err(
                lineno,
                format!("expected {width} fields, got {}", fields.len()),
            ));
        }
        out.push(
            parse(&fields).ok_or_else(|| parse_err(lineno, format!("malformed row {line:?}")))?,
        );
    }
    Ok(out)
}

fn field<T: FromStr>(s: &str) -> Option<T> {
    s.parse().ok()
}

pub fn read_records(path: &Path) -> Result<Vec<RealizationRecord>> {
    read_rows(path, RECORDS_HEADER, |f| {
        Some(RealizationRecord {
            scenario_id: field(f[0])?,
            n: field(f[1])?,
            p: field(f[2])?,
            replicate: field(f[3])?,
            seed: field(f[4])?,
            xn: field(f[5])?,
            connected: field(f[6])?,
            event_en: field(f[7])?,
            eigen_ms: field(f[8])?,
        })
    })
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    read_rows(path, SUMMARY_HEADER, |f| {
        Some(SummaryRow {
            scenario_id: field(f[0])?,
            n: field(f[1])?,
            p: field(f[2])?,
            mean_xn: field(f[3])?,
            predicted_mean: field(f[4])?,
            band_halfwidth: field(f[5])?,
            coverage: field(f[6])?,
            connected_frac: field(f[7])?,
            en_frac: field(f[8])?,
        })
    })
}
