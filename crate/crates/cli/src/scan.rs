//! Batch classification of `x^60 − m` over a range of `m`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use orelab_core::intsupport::is_squarefree_int;
use orelab_core::monogeny::analyze_pure60;
use orelab_core::Result as CoreResult;

pub const CSV_HEADER: [&str; 8] = ["m", "squarefree", "verdict", "witness_prime", "witness_f", "P_f", "N_f", "notes"];

/// Inclusive range `LO..HI` of values of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for ScanRange {
    type Err = String;

    fn from_str(s: &str) -> Result<ScanRange, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("range '{s}' is not of the form LO..HI"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
        if lo > hi {
            return Err(format!("range {lo}..{hi} is empty"));
        }
        if lo <= 1 && hi >= -1 {
            return Err(format!("range {lo}..{hi} contains one of -1, 0, 1, which do not define a degree-60 field"));
        }
        Ok(ScanRange { lo, hi })
    }
}

impl fmt::Display for ScanRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// One CSV row. A missing witness leaves its four columns empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub m: i64,
    pub squarefree: bool,
    pub verdict: String,
    pub witness_prime: Option<u64>,
    pub witness_f: Option<u64>,
    #[serde(rename = "P_f")]
    pub ideal_count: Option<u64>,
    #[serde(rename = "N_f")]
    pub irreducible_count: Option<String>,
    pub notes: String,
}

pub const NON_SQUAREFREE: &str = "NonSquarefree";

pub fn scan_row(m: i64, seed: u64) -> CoreResult<ScanRow> {
    if !is_squarefree_int(m)? {
        return Ok(ScanRow {
            m,
            squarefree: false,
            verdict: NON_SQUAREFREE.to_string(),
            witness_prime: None,
            witness_f: None,
            ideal_count: None,
            irreducible_count: None,
            notes: String::new(),
        });
    }
    let report = analyze_pure60(m, seed)?;
    let w = report.verdict.witnesses().next();
    Ok(ScanRow {
        m,
        squarefree: true,
        verdict: report.verdict.kind.to_string(),
        witness_prime: w.map(|w| w.prime.get()),
        witness_f: w.map(|w| w.f),
        ideal_count: w.map(|w| w.ideal_count),
        irreducible_count: w.map(|w| w.irreducible_count.to_string()),
        notes: report.notes.join("; "),
    })
}

/// Rows for every `m` in the range, in ascending order, computed in parallel.
pub fn scan(range: ScanRange, seed: u64) -> CoreResult<Vec<ScanRow>> {
    (range.lo..=range.hi).into_par_iter().map(|m| scan_row(m, seed)).collect()
}

pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.squarefree.to_string(),
            r.verdict.clone(),
            opt(r.witness_prime),
            opt(r.witness_f),
            opt(r.ideal_count),
            r.irreducible_count.clone().unwrap_or_default(),
            r.notes.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8 CSV")
}

fn opt(v: Option<u64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn rows_to_text(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let witness = match (r.witness_prime, r.witness_f, r.ideal_count, &r.irreducible_count) {
            (Some(p), Some(f), Some(pf), Some(nf)) => format!("  p = {p}: P_{f} = {pf} > N_{f} = {nf}"),
            _ => String::new(),
        };
        out.push_str(&format!("{:>8}  {:<13}{witness}\n", r.m, r.verdict));
    }
    out
}

/// Counts per verdict: Monogenic, NotMonogenic, Undecided, NonSquarefree.
pub fn totals(rows: &[ScanRow]) -> [usize; 4] {
    let mut t = [0; 4];
    for r in rows {
        let k = match r.verdict.as_str() {
            "Monogenic" => 0,
            "NotMonogenic" => 1,
            "Undecided" => 2,
            _ => 3,
        };
        t[k] += 1;
    }
    t
}
