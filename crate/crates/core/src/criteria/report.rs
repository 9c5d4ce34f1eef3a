use num_complex::Complex64;
use serde::Serialize;

use super::{
    critical_points, k_one_check, linearity_check, multiplicity_check, normalize, parity_flag, single_singularity_on_l0, CriticalPoint, KCheck, LinearityCheck,
    MorseForm, MultiplicityCheck, ParityFlag,
};
use crate::bipoly::BiPoly;
use crate::flow::{default_h_set, escape_analysis, sample_periods, EscapeResult, FlowOptions, NumericVerdict, SampleSet};
use crate::infinity::{analyze_infinity, InfinityAnalysis, DEFAULT_ORDER};
use crate::parser::format_poly;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisOptions {
    /// Puiseux truncation order.
    pub order: usize,
    /// Period samples per ray; 0 skips the numeric stage.
    pub samples: usize,
    pub h_min: f64,
    pub h_max: f64,
    /// Ray angles in degrees.
    pub rays: Vec<f64>,
    pub iso_tol: f64,
    /// Starting points for the escape experiment; 0 skips it.
    pub escape_starts: usize,
    pub escape_t_max: f64,
    pub flow: FlowOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            samples: 8,
            h_min: 1e-3,
            h_max: 1e-1,
            rays: vec![0.0, 60.0],
            iso_tol: 1e-6,
            escape_starts: 4,
            escape_t_max: 40.0,
            flow: FlowOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    NotIsochronous,
    NumericallyIsochronous,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallBasis {
    ExactNecessaryCondition,
    Numeric,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct Overall {
    pub verdict: OverallVerdict,
    pub basis: OverallBasis,
    pub summary: String,
    /// An exact necessary condition fails while the periods look constant.
    pub contradiction: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub morse: Option<MorseForm>,
    /// The polynomial fed to the infinity and flow stages: the normal form
    /// when normalization succeeded, the input otherwise.
    pub analyzed: String,
    pub infinity: Option<InfinityAnalysis>,
    pub multiplicity: Option<MultiplicityCheck>,
    pub linearity: Option<LinearityCheck>,
    pub k_check: KCheck,
    /// Critical points of the input.
    pub critical_points: Option<Vec<CriticalPoint>>,
    pub single_singularity_on_l0: Option<bool>,
    pub parity: ParityFlag,
    pub parity_note: String,
    pub numeric: Option<SampleSet>,
    pub escapes: Option<Vec<EscapeResult>>,
    pub overall: Overall,
    pub errors: Vec<StageError>,
}

impl AnalysisReport {
    pub fn error_in(&self, stage: &str) -> Option<&str> {
        self.errors.iter().find(|e| e.stage == stage).map(|e| e.message.as_str())
    }
}

fn overall(mult: Option<&MultiplicityCheck>, numeric: Option<&SampleSet>) -> Overall {
    let exact_fail = mult.is_some_and(|m| m.fails());
    let num = numeric.map(|s| s.verdict);
    let contradiction = exact_fail && num == Some(NumericVerdict::NumericallyIsochronous);
    if exact_fail {
        let m = mult.unwrap();
        return Overall {
            verdict: OverallVerdict::NotIsochronous,
            basis: OverallBasis::ExactNecessaryCondition,
            summary: format!("not isochronous: {}", m.summary()),
            contradiction,
        };
    }
    match num {
        Some(NumericVerdict::NumericallyNonIsochronous) => Overall {
            verdict: OverallVerdict::NotIsochronous,
            basis: OverallBasis::Numeric,
            summary: "not isochronous (numeric)".into(),
            contradiction,
        },
        Some(NumericVerdict::NumericallyIsochronous) => Overall {
            verdict: OverallVerdict::NumericallyIsochronous,
            basis: OverallBasis::Numeric,
            summary: if mult.is_some() {
                "numerically isochronous (exact checks passed)".into()
            } else {
                "numerically isochronous".into()
            },
            contradiction,
        },
        _ => Overall { verdict: OverallVerdict::Inconclusive, basis: OverallBasis::None, summary: "inconclusive".into(), contradiction },
    }
}

/// Normalization, infinity analysis, the exact checks and (optionally) the
/// numeric stages. A failing stage is recorded and later stages that do
/// not depend on it still run.
pub fn combined_report(h: &BiPoly, opts: &AnalysisOptions) -> AnalysisReport {
    let mut errors = Vec::new();
    let mut record = |stage: &str, e: &dyn std::fmt::Display| errors.push(StageError { stage: stage.into(), message: e.to_string() });

    let morse = normalize(h).map_err(|e| record("normalize", &e)).ok();
    let analyzed = morse.as_ref().map(|m| m.normalized.clone()).unwrap_or_else(|| h.clone());
    let infinity = analyze_infinity(&analyzed, opts.order).map_err(|e| record("infinity", &e)).ok();
    let multiplicity = multiplicity_check(&analyzed).map_err(|e| record("multiplicity", &e)).ok();
    let crit = critical_points(h).map_err(|e| record("singular", &e)).ok();
    let single = crit.as_deref().map(single_singularity_on_l0);
    let parity = parity_flag(h);

    let numeric = (morse.is_some() && opts.samples > 0).then(|| {
        let hs = default_h_set(opts.samples, opts.h_min, opts.h_max, &opts.rays);
        sample_periods(&analyzed, &hs, &opts.flow, opts.iso_tol)
    });
    let escapes = match (&morse, &infinity) {
        (Some(_), Some(inf)) if opts.escape_starts > 0 => {
            let targets: Vec<_> = inf.points.iter().map(|p| p.point.direction.clone()).collect();
            let eo = FlowOptions { t_max: opts.escape_t_max, ..opts.flow.clone() };
            escape_analysis(&analyzed, Complex64::new(opts.h_min, 0.0), opts.escape_starts, &eo, &targets)
                .map_err(|e| record("escape", &e))
                .ok()
        }
        _ => None,
    };
    let linearity = infinity.as_ref().map(|inf| linearity_check(inf, escapes.as_deref()));
    let k_check = match &infinity {
        Some(inf) => k_one_check(inf, escapes.as_deref()),
        None => KCheck::Skipped,
    };
    let overall = overall(multiplicity.as_ref(), numeric.as_ref());
    AnalysisReport {
        input: format_poly(h),
        morse,
        analyzed: format_poly(&analyzed),
        infinity,
        multiplicity,
        linearity,
        k_check,
        critical_points: crit,
        single_singularity_on_l0: single,
        parity,
        parity_note: parity.note().into(),
        numeric,
        escapes,
        overall,
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    #[test]
    fn quartic_fails_without_numerics() {
        let h = parse_poly("1/2*x^2 + 1/2*y^2 + x^4 + y^4").unwrap();
        let opts = AnalysisOptions { samples: 0, escape_starts: 0, ..Default::default() };
        let r = combined_report(&h, &opts);
        assert_eq!(r.overall.verdict, OverallVerdict::NotIsochronous);
        assert_eq!(r.overall.basis, OverallBasis::ExactNecessaryCondition);
        assert!(r.numeric.is_none());
        // Its directions at infinity are not in Q(i).
        assert!(r.infinity.as_ref().unwrap().points.iter().all(|p| p.error.is_some()));
    }

    #[test]
    fn shear_and_cubic() {
        let opts = AnalysisOptions::default();
        let r = combined_report(&parse_poly("1/2*x^2 + 1/2*(y + x^2)^2").unwrap(), &opts);
        assert_eq!(r.overall.verdict, OverallVerdict::NumericallyIsochronous, "{:?}", r.numeric);
        assert_eq!(r.overall.summary, "numerically isochronous (exact checks passed)");
        assert!(!r.overall.contradiction);

        let r = combined_report(&parse_poly("1/2*x^2 + 1/2*y^2 + x^3").unwrap(), &opts);
        assert_eq!(r.overall.verdict, OverallVerdict::NotIsochronous);
        assert_eq!(r.overall.basis, OverallBasis::Numeric);
        assert_eq!(r.single_singularity_on_l0, Some(true));
        assert_eq!(r.parity, ParityFlag::Applies);
    }

    #[test]
    fn stages_fail_independently() {
        let r = combined_report(&parse_poly("x^3").unwrap(), &AnalysisOptions::default());
        assert!(r.error_in("normalize").is_some());
        assert!(r.numeric.is_none() && r.escapes.is_none());
        assert!(r.multiplicity.is_some());
        assert!(r.error_in("singular").is_some());
        assert_eq!(r.overall.verdict, OverallVerdict::Inconclusive);
    }
}
