//! Serializable report documents and their text rendering.

use std::fmt::Write;

use serde::Serialize;

use orelab_core::idealfactor::{DedekindReport, FactorAnalysis, PrimeFactorShape};
use orelab_core::monogeny::{AnalysisReport, IndexDivisorWitness, PrimeAnalysis, Verdict};
use orelab_core::polygon::NewtonPolygon;
use orelab_core::IntPoly;

use crate::render::render_polygon;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDoc {
    Poly { source: String, poly: String },
    Pure60 { m: String, poly: String },
    Power { a: String, u: u64, poly: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorDoc {
    pub phi: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedekindDoc {
    pub passes: bool,
    pub factors: Vec<FactorDoc>,
    pub m_poly: String,
    pub failing_factors: Vec<FactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonDoc {
    pub phi: String,
    pub multiplicity: usize,
    pub vertices: Vec<[u64; 2]>,
    pub slopes: Vec<String>,
    pub index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualDoc {
    pub phi: String,
    pub slope: String,
    pub polynomial: String,
    pub factors: Vec<FactorDoc>,
    pub squarefree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeEntryDoc {
    pub e: u64,
    pub f: u64,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexDoc {
    pub value: u64,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessDoc {
    pub prime: u64,
    pub f: u64,
    #[serde(rename = "P_f")]
    pub ideal_count: u64,
    #[serde(rename = "N_f")]
    pub irreducible_count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeDoc {
    pub prime: u64,
    pub dedekind: DedekindDoc,
    pub polygons: Vec<PolygonDoc>,
    pub residuals: Vec<ResidualDoc>,
    pub shape: Vec<ShapeEntryDoc>,
    pub shape_complete: bool,
    pub index_valuation: IndexDoc,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub kind: String,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputDoc,
    pub primes: Vec<PrimeDoc>,
    pub verdict: VerdictDoc,
    pub notes: Vec<String>,
    /// Drawings of the polygons, for text output only.
    #[serde(skip)]
    pub drawings: Vec<(u64, String, String)>,
}

fn factor_docs(fs: &[(IntPoly, usize)]) -> Vec<FactorDoc> {
    fs.iter().map(|(phi, l)| FactorDoc { phi: phi.to_string(), multiplicity: *l }).collect()
}

pub fn dedekind_doc(r: &DedekindReport) -> DedekindDoc {
    DedekindDoc {
        passes: r.passes,
        factors: factor_docs(&r.factors),
        m_poly: r.m_poly.to_string(),
        failing_factors: factor_docs(&r.failing_factors),
    }
}

pub fn polygon_doc(poly: &NewtonPolygon, multiplicity: usize) -> PolygonDoc {
    PolygonDoc {
        phi: poly.phi.to_string(),
        multiplicity,
        vertices: poly.vertices.iter().map(|v| [v.x as u64, v.y]).collect(),
        slopes: poly.sides.iter().map(|s| s.slope()).collect(),
        index: poly.index(),
    }
}

fn residual_docs(fa: &FactorAnalysis) -> Vec<ResidualDoc> {
    fa.residuals
        .iter()
        .map(|ra| ResidualDoc {
            phi: fa.phi.to_string(),
            slope: ra.residual.side.slope(),
            polynomial: ra.residual.poly.format_with("y", "t"),
            factors: ra
                .factors
                .iter()
                .map(|(g, l)| FactorDoc { phi: g.format_with("y", "t"), multiplicity: *l })
                .collect(),
            squarefree: ra.factors.iter().all(|(_, l)| *l == 1),
        })
        .collect()
}

pub fn shape_docs(shape: &PrimeFactorShape) -> Vec<ShapeEntryDoc> {
    shape.entries.iter().map(|en| ShapeEntryDoc { e: en.e, f: en.f, count: en.count }).collect()
}

pub fn witness_doc(w: &IndexDivisorWitness) -> WitnessDoc {
    WitnessDoc {
        prime: w.prime.get(),
        f: w.f,
        ideal_count: w.ideal_count,
        irreducible_count: w.irreducible_count.to_string(),
    }
}

pub fn prime_doc(pa: &PrimeAnalysis) -> PrimeDoc {
    let repeated = pa.ore.factors.iter().filter(|fa| fa.polygon.is_some());
    PrimeDoc {
        prime: pa.prime.get(),
        dedekind: dedekind_doc(&pa.dedekind),
        polygons: repeated.clone().map(|fa| polygon_doc(fa.polygon.as_ref().unwrap(), fa.multiplicity)).collect(),
        residuals: repeated.flat_map(residual_docs).collect(),
        shape: shape_docs(&pa.shape),
        shape_complete: pa.shape.complete,
        index_valuation: IndexDoc { value: pa.index.lower_bound, exact: pa.index.exact },
        witness: pa.witness.as_ref().map(witness_doc),
    }
}

pub fn verdict_doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc { kind: v.kind.to_string(), reasons: v.reasons.iter().map(ToString::to_string).collect() }
}

impl ReportDocument {
    pub fn from_analysis(input: InputDoc, report: &AnalysisReport, verdict: &Verdict, extra_notes: Vec<String>) -> ReportDocument {
        let mut notes = extra_notes;
        notes.extend(report.notes.iter().cloned());
        let drawings = report
            .primes
            .iter()
            .flat_map(|pa| {
                pa.ore.factors.iter().filter_map(move |fa| {
                    fa.polygon.as_ref().map(|poly| (pa.prime.get(), fa.phi.to_string(), render_polygon(poly)))
                })
            })
            .collect();
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            input,
            primes: report.primes.iter().map(prime_doc).collect(),
            verdict: verdict_doc(verdict),
            notes,
            drawings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.input {
            InputDoc::Poly { source, poly } => {
                let _ = writeln!(out, "input: {source}");
                if source.replace(' ', "") != poly.replace(' ', "") {
                    let _ = writeln!(out, "expanded: {poly}");
                }
            }
            InputDoc::Pure60 { m, poly } => {
                let _ = writeln!(out, "input: m = {m}  ({poly})");
            }
            InputDoc::Power { a, u, poly } => {
                let _ = writeln!(out, "input: a = {a}, u = {u}  ({poly})");
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.kind);
        for r in &self.verdict.reasons {
            let _ = writeln!(out, "  {r}");
        }
        for pd in &self.primes {
            let _ = writeln!(out, "\nprime {}", pd.prime);
            let fs: Vec<String> = pd.dedekind.factors.iter().map(factor_text).collect();
            let _ = writeln!(out, "  factors mod {}: {}", pd.prime, fs.join(" · "));
            let status = if pd.dedekind.passes { "passes" } else { "fails" };
            let _ = writeln!(out, "  dedekind: {status}");
            for ff in &pd.dedekind.failing_factors {
                let _ = writeln!(out, "    {} divides M mod {}", ff.phi, pd.prime);
            }
            for (p, phi, drawing) in &self.drawings {
                if *p == pd.prime {
                    let _ = writeln!(out, "  polygon for phi = {phi}:");
                    for line in drawing.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
            }
            for r in &pd.residuals {
                let sf = if r.squarefree { "squarefree" } else { "not squarefree" };
                let fs: Vec<String> = r.factors.iter().map(factor_text).collect();
                let _ = writeln!(
                    out,
                    "  residual phi = {}, slope {}: {} = {} ({sf})",
                    r.phi,
                    r.slope,
                    r.polynomial,
                    fs.join(" · ")
                );
            }
            let v = &pd.index_valuation;
            let rel = if v.exact { "=" } else { ">=" };
            let _ = writeln!(out, "  index: nu_{}(index) {rel} {}", pd.prime, v.value);
            let shape: Vec<String> = pd.shape.iter().map(|s| format!("{}×(e={}, f={})", s.count, s.e, s.f)).collect();
            let label = if pd.shape_complete { "shape" } else { "certified primes" };
            let _ = writeln!(out, "  {label}: {}", shape.join(" + "));
            if let Some(w) = &pd.witness {
                let _ = writeln!(
                    out,
                    "  common index divisor: P_{} = {} > N_{} = {}",
                    w.f, w.ideal_count, w.f, w.irreducible_count
                );
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes:");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }
}

fn factor_text(f: &FactorDoc) -> String {
    if f.multiplicity == 1 {
        format!("({})", f.phi)
    } else {
        format!("({})^{}", f.phi, f.multiplicity)
    }
}
