//! Dataset ingestion, ΔΦ plot series, and CSV emission backing the
//! `constel` command-line tool.

use constel_core::constellation::Constellation;
use constel_core::error::{Error, Result};
use std::io;
use std::path::{Path, PathBuf};

/// One parsed line of a tuple file.
#[derive(Clone, Debug)]
pub struct TupleRecord {
    /// 0-based position among the parsed tuples, stable under re-read.
    pub index: usize,
    /// 1-based source line.
    pub line: usize,
    pub tuple: Constellation,
    /// Inadmissible tuples are retained but flagged.
    pub admissible: bool,
}

#[derive(Clone, Debug)]
pub struct TupleFile {
    pub path: PathBuf,
    pub records: Vec<TupleRecord>,
}

impl TupleFile {
    pub fn get(&self, index: usize) -> Result<&TupleRecord> {
        self.records.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "tuple index {index} out of range; the file holds {} tuples",
                self.records.len()
            ))
        })
    }
}

/// Parse a tuple file: one tuple per line, offsets as ascending integers
/// separated by spaces or commas. Lines starting with `#` are comments. A
/// `!gaps` directive switches the remaining lines to gap-list form
/// (`!offsets` switches back).
pub fn parse_tuple_file(path: &Path) -> Result<TupleFile> {
    let text = std::fs::read_to_string(path)?;
    parse_tuple_text(path, &text)
}

fn parse_tuple_text(path: &Path, text: &str) -> Result<TupleFile> {
    let mut gaps_mode = false;
    let mut records = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(directive) = line.strip_prefix('!') {
            match directive.trim() {
                "gaps" => gaps_mode = true,
                "offsets" => gaps_mode = false,
                other => {
                    return Err(Error::Format(format!(
                        "line {lineno}: unknown directive {other:?}"
                    )))
                }
            }
            continue;
        }
        let numbers: Vec<u64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| {
                w.parse()
                    .map_err(|_| Error::Format(format!("line {lineno}: bad integer {w:?}")))
            })
            .collect::<Result<_>>()?;
        let tuple = if gaps_mode {
            Constellation::from_gaps_u64(&numbers)
        } else {
            Constellation::from_offsets_u64(&numbers)
        }
        .map_err(|e| Error::Format(format!("line {lineno}: {e}")))?;
        let admissible = tuple.is_admissible();
        records.push(TupleRecord {
            index: records.len(),
            line: lineno,
            tuple,
            admissible,
        });
    }
    Ok(TupleFile {
        path: path.to_owned(),
        records,
    })
}

/// Render tuples back to offsets-mode file text; parsing the result yields
/// the same tuples.
pub fn serialize_tuples<'a>(tuples: impl IntoIterator<Item = &'a Constellation>) -> String {
    let mut out = String::new();
    for t in tuples {
        out.push_str(&t.canonical_text());
        out.push('\n');
    }
    out
}

/// Number of candidate gaps closed by x: Φ(x) = #{i ≥ 1 : h_i ≤ x}. The
/// leading offset 0 opens the window and is not a gap endpoint.
pub fn phi(s: &Constellation, x: u64) -> u64 {
    let x = x.into();
    s.offsets()[1..].iter().filter(|&h| *h <= x).count() as u64
}

/// The piecewise-linear graph of ΔΦ(x) = Φ(x) − x/μ over [0, span]: a unit
/// rise at each gap endpoint, slope −1/μ in between. Vertical jumps appear
/// as two breakpoints sharing an x.
#[derive(Clone, Debug)]
pub struct DeltaPhiSeries {
    pub mu: f64,
    pub breakpoints: Vec<(f64, f64)>,
}

impl DeltaPhiSeries {
    /// Number of unit rises (one per gap).
    pub fn rises(&self) -> usize {
        (self.breakpoints.len() - 1) / 2
    }

    /// Value at the right end of the window, after its jump.
    pub fn final_value(&self) -> f64 {
        self.breakpoints.last().map_or(0.0, |&(_, v)| v)
    }
}

pub fn delta_phi(s: &Constellation, mu: f64) -> Result<DeltaPhiSeries> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "μ must be a positive real, got {mu}"
        )));
    }
    let offsets = s
        .offsets_u64()
        .ok_or_else(|| Error::UnsupportedSpan("offsets exceed u64; no series".into()))?;
    let mut breakpoints = Vec::with_capacity(offsets.len() * 2 - 1);
    breakpoints.push((0.0, 0.0));
    for (i, &h) in offsets[1..].iter().enumerate() {
        let x = h as f64;
        let before = i as f64 - x / mu;
        breakpoints.push((x, before));
        breakpoints.push((x, before + 1.0));
    }
    Ok(DeltaPhiSeries { mu, breakpoints })
}

/// Comma-separated emission with a header row. Callers supply plain fields
/// (no commas or quotes); identical inputs produce identical bytes.
pub fn emit_csv<W: io::Write>(out: &mut W, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    debug_assert!(header.iter().all(|f| !f.contains(',')));
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        debug_assert!(row.iter().all(|f| !f.contains(',')));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
