use std::fmt::Write;

use num_complex::Complex64;
use serde::Serialize;

use isochk::criteria::{AnalysisReport, CriticalPoint, KCheck, LinearityCheck, MultiplicityCheck, ParityFlag};
use isochk::flow::SampleSet;
use isochk::infinity::InfinityAnalysis;

#[derive(Serialize)]
pub struct NecessaryReport {
    pub multiplicity: MultiplicityCheck,
    pub parity: ParityFlag,
    pub parity_note: &'static str,
}

#[derive(Serialize)]
pub struct SingularReport {
    pub points: Vec<CriticalPoint>,
    pub single_singularity_on_l0: bool,
}

fn c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12}", z.re)
    } else {
        format!("{:.12}{:+.12}i", z.re, z.im)
    }
}

pub fn necessary(r: &NecessaryReport) -> String {
    format!("{}\nparity: {}\n", r.multiplicity.summary(), r.parity_note)
}

pub fn periods(s: &SampleSet) -> String {
    let mut out = String::new();
    for e in &s.entries {
        match (&e.sample, &e.error) {
            (Some(smp), _) => writeln!(out, "h = {}  T = {}  drift = {:.1e}", c(e.h), c(smp.t), smp.drift).unwrap(),
            (None, Some(err)) => writeln!(out, "h = {}  failed: {err}", c(e.h)).unwrap(),
            _ => {}
        }
    }
    let verdict = serde_json::to_value(s.verdict).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
    match s.max_deviation {
        Some(d) => writeln!(out, "verdict: {verdict} (max relative deviation {d:.3e}, tolerance {:.1e})", s.iso_tol).unwrap(),
        None => writeln!(out, "verdict: {verdict}").unwrap(),
    }
    out
}

pub fn infinity(a: &InfinityAnalysis) -> String {
    let mut out = String::new();
    writeln!(out, "degree {}; {} point(s) at infinity", a.degree, a.points.len()).unwrap();
    for p in &a.points {
        let d = &p.point.direction;
        let dir = match &d.exact {
            Some((b, al)) => format!("[{b}:{al}]"),
            None => format!("[{}:{}]", c(d.numeric.0), c(d.numeric.1)),
        };
        writeln!(out, "point {} {dir}: multiplicity {}, branches {}", p.point.index, p.point.multiplicity, p.branch_count()).unwrap();
        if let Some(err) = &p.error {
            writeln!(out, "  error: {err}").unwrap();
        }
        for dy in &p.dynamics {
            let class = serde_json::to_value(&dy.class).map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "  branch {}.{}: k = {}, lambda = {} ({}), omega order {}, class {class}",
                dy.branch,
                dy.embedding,
                dy.k,
                dy.lambda_exact,
                c(dy.lambda),
                dy.omega_order
            )
            .unwrap();
        }
    }
    out
}

pub fn singular(r: &SingularReport) -> String {
    let mut out = String::new();
    for p in &r.points {
        let at = match &p.exact {
            Some([x, y]) => format!("({}, {})", x.0, y.0),
            None => format!("({}, {})", c(p.x), c(p.y)),
        };
        let value = match &p.value_exact {
            Some(v) => v.0.to_string(),
            None => c(p.value),
        };
        writeln!(out, "{at}: H = {value}{}", if p.on_l0 { " (on H = 0)" } else { "" }).unwrap();
    }
    writeln!(out, "single singularity on H = 0: {}", r.single_singularity_on_l0).unwrap();
    out
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "H = {}", r.input).unwrap();
    match &r.morse {
        Some(m) if m.is_identity() => writeln!(out, "already in Morse normal form").unwrap(),
        Some(m) => writeln!(out, "normal form: {} (scale {})", r.analyzed, m.scale).unwrap(),
        None => {}
    }
    if let Some(m) = &r.multiplicity {
        writeln!(out, "{}", m.summary()).unwrap();
    }
    if let Some(inf) = &r.infinity {
        let ks: Vec<String> = inf.points.iter().flat_map(|p| p.dynamics.iter().map(|d| d.k.to_string())).collect();
        writeln!(out, "points at infinity: {}; branch exponents k: [{}]", inf.points.len(), ks.join(", ")).unwrap();
    }
    if let Some(single) = r.single_singularity_on_l0 {
        let n = r.critical_points.as_ref().map_or(0, |p| p.len());
        writeln!(out, "critical points: {n}; single singularity on H = 0: {single}").unwrap();
    }
    writeln!(out, "parity: {}", r.parity_note).unwrap();
    if let Some(lin) = &r.linearity {
        let s = match lin {
            LinearityCheck::Violated { witnesses } => format!("violated on an accessible branch ({} witness(es))", witnesses.len()),
            LinearityCheck::Satisfied { witnesses } if witnesses.is_empty() => "satisfied".into(),
            LinearityCheck::Satisfied { witnesses } => format!("satisfied on accessible branches ({} witness(es) elsewhere)", witnesses.len()),
            LinearityCheck::Partial { unanalyzed, .. } => format!("partial ({} point(s) not analyzed)", unanalyzed.len()),
        };
        writeln!(out, "h-linearity (advisory): {s}").unwrap();
    }
    let k = match &r.k_check {
        KCheck::Skipped => "skipped".to_string(),
        KCheck::Consistent { .. } => "consistent".to_string(),
        KCheck::ViolationWitness { point, .. } => format!("no k = 1 branch at accessible point {point}"),
    };
    writeln!(out, "k-check (heuristic): {k}").unwrap();
    if let Some(s) = &r.numeric {
        out.push_str(&periods(s));
    }
    for e in &r.errors {
        writeln!(out, "{} stage failed: {}", e.stage, e.message).unwrap();
    }
    if r.overall.contradiction {
        writeln!(out, "WARNING: an exact condition fails but the sampled periods agree; check the tolerances").unwrap();
    }
    writeln!(out, "overall: {}", r.overall.summary).unwrap();
    out
}
