//! The trace CSV format.
//!
//! The first line is the header `y1,x,y`. Data rows follow in increasing
//! `y1`, written with the shortest decimal form that parses back to the
//! same `f64`. Lines starting with `#` are comments; three kinds are
//! written and understood:
//!
//! ```text
//! # family,<N>,<f>,<r>
//! # target,<name>,<direct|polar>
//! # gap,<lo>,<hi>
//! ```
//!
//! A gap line sits where the excised interval falls in the row order.

use std::fmt::Write as _;
use std::path::Path;

use poncelet_core::loci::LocusTrace;
use poncelet_core::Vec2;

use crate::CliError;

pub const HEADER: &str = "y1,x,y";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub y1: f64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyLine {
    pub n: usize,
    pub f: f64,
    pub r: f64,
}

/// A parsed trace file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceFile {
    pub rows: Vec<Row>,
    pub gaps: Vec<(f64, f64)>,
    pub family: Option<FamilyLine>,
    pub target: Option<String>,
    pub polar: bool,
}

impl TraceFile {
    pub fn points(&self) -> Vec<Vec2> {
        self.rows.iter().map(|r| Vec2::new(r.x, r.y)).collect()
    }

    /// Runs of consecutive rows not separated by a gap.
    pub fn segments(&self) -> Vec<&[Row]> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..self.rows.len() {
            let (a, b) = (self.rows[i - 1].y1, self.rows[i].y1);
            if self.gaps.iter().any(|&(lo, hi)| a <= hi && lo <= b) {
                out.push(&self.rows[start..i]);
                start = i;
            }
        }
        if start < self.rows.len() {
            out.push(&self.rows[start..]);
        }
        out
    }
}

/// Serializes a trace. Samples at infinity are dropped.
pub fn write_trace(trace: &LocusTrace) -> String {
    let mut s = String::new();
    let fam = &trace.family;
    let kind = if trace.polar { "polar" } else { "direct" };
    // Writing to a String cannot fail.
    let _ = writeln!(s, "{HEADER}");
    let _ = writeln!(s, "# family,{},{},{}", fam.n, fam.f, fam.r);
    let _ = writeln!(s, "# target,{},{kind}", trace.target);
    let mut sorted: Vec<_> = trace.gaps.iter().collect();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut gaps = sorted.into_iter().peekable();
    for sample in &trace.samples {
        while let Some(g) = gaps.next_if(|g| g.lo < sample.y1) {
            let _ = writeln!(s, "# gap,{},{}", g.lo, g.hi);
        }
        if let Some(p) = sample.point.to_cartesian() {
            let _ = writeln!(s, "{},{},{}", sample.y1, p.x, p.y);
        }
    }
    for g in gaps {
        let _ = writeln!(s, "# gap,{},{}", g.lo, g.hi);
    }
    s
}

fn malformed(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Malformed {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

fn parse_num(path: &Path, line: usize, field: &str) -> Result<f64, CliError> {
    match field.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(malformed(path, format!("line {line}: {field:?} is not a finite number"))),
    }
}

fn parse_comment(path: &Path, line: usize, body: &str, out: &mut TraceFile) -> Result<(), CliError> {
    let fields: Vec<&str> = body.trim().split(',').collect();
    match fields.as_slice() {
        ["gap", lo, hi] => {
            out.gaps.push((parse_num(path, line, lo)?, parse_num(path, line, hi)?));
        }
        ["family", n, f, r] => {
            let n = n
                .trim()
                .parse()
                .map_err(|_| malformed(path, format!("line {line}: bad polygon size {n:?}")))?;
            out.family = Some(FamilyLine {
                n,
                f: parse_num(path, line, f)?,
                r: parse_num(path, line, r)?,
            });
        }
        ["target", name, kind] => {
            out.target = Some(name.trim().to_owned());
            out.polar = kind.trim() == "polar";
        }
        // Free-form comments are allowed.
        _ => {}
    }
    Ok(())
}

/// Parses trace text. `path` only labels error messages.
pub fn parse_trace(path: &Path, text: &str) -> Result<TraceFile, CliError> {
    let mut out = TraceFile::default();
    for (i, line) in text.lines().enumerate() {
        if let Some(body) = line.trim_start().strip_prefix('#') {
            parse_comment(path, i + 1, body, &mut out)?;
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| malformed(path, e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != ["y1", "x", "y"] {
        return Err(malformed(path, format!("header must be {HEADER:?}")));
    }
    for record in reader.records() {
        let record = record.map_err(|e| malformed(path, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let num = |k: usize| parse_num(path, line, &record[k]);
        out.rows.push(Row {
            y1: num(0)?,
            x: num(1)?,
            y: num(2)?,
        });
    }
    Ok(out)
}

pub fn read_trace(path: &Path) -> Result<TraceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_trace(path, &text)
}
