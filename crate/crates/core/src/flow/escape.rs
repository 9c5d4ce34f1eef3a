use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{drive, initial_point_on_level, norm, thread_pool, FlowField, FlowOptions, FlowState, NumericHamiltonian, State, TrajectoryEnd};
use crate::bipoly::BiPoly;
use crate::error::Result;
use crate::homogeneous::Direction;
use crate::report::ser_complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeDirection {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EscapeOutcome {
    /// Left the escape radius with roughly steady logarithmic growth.
    Escaped {
        #[serde(serialize_with = "ser_complex")]
        dir_x: Complex64,
        #[serde(serialize_with = "ser_complex")]
        dir_y: Complex64,
        matched_infinity_point: Option<usize>,
        t: f64,
    },
    /// Growth accelerating towards a finite time (heuristic).
    FiniteTimeBlowup { t_est: f64 },
    MaxTimeReached,
}

#[derive(Clone, Debug, Serialize)]
pub struct EscapeResult {
    pub start: FlowState,
    pub time: TimeDirection,
    pub outcome: EscapeOutcome,
}

/// `d ln|z| / dt` along the field.
fn log_growth(z: &State, v: &State) -> f64 {
    (z[0].conj() * v[0] + z[1].conj() * v[1]).re / (z[0].norm_sqr() + z[1].norm_sqr())
}

/// Ratio of logarithmic growth rates (outer over inner radius) above which
/// an escape counts as a finite-time blow-up.
const BLOWUP_RATIO: f64 = 10.0;

fn one_run(ham: &NumericHamiltonian, start: &FlowState, dir: TimeDirection, opts: &FlowOptions, targets: &[Direction]) -> Result<EscapeResult> {
    let sign = match dir {
        TimeDirection::Forward => 1.0,
        TimeDirection::Backward => -1.0,
    };
    let r_inner = (opts.escape_radius * 1e-3).max(1.0);
    let mut inner_rate: Option<f64> = None;
    let tr = drive(ham, FlowField::IV, start, sign * opts.t_max, opts, |_, _, _, z, _| {
        if inner_rate.is_none() && norm(z) >= r_inner {
            let v = ham.field(FlowField::IV, z);
            inner_rate = Some(sign * log_growth(z, &v));
        }
        true
    })?;
    let last = *tr.states.last().expect("nonempty trajectory");
    let outcome = match tr.end {
        TrajectoryEnd::Completed => EscapeOutcome::MaxTimeReached,
        TrajectoryEnd::StepUnderflow { t } => EscapeOutcome::FiniteTimeBlowup { t_est: t },
        TrajectoryEnd::Escaped { t } => {
            let z = last.z();
            let v = ham.field(FlowField::IV, &z);
            let outer = sign * log_growth(&z, &v);
            let ratio = inner_rate.map(|r| outer / r).unwrap_or(1.0);
            if ratio > BLOWUP_RATIO {
                // |z| ~ |t* − t|^(−a) gives rate a/|t* − t|.
                let a = (norm(&z) / r_inner).ln() / ratio.ln();
                EscapeOutcome::FiniteTimeBlowup { t_est: t + sign * a / outer }
            } else {
                let scale = if z[0].norm() >= z[1].norm() { z[0] } else { z[1] };
                let (dx, dy) = (z[0] / scale, z[1] / scale);
                let matched = targets
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (i, d.distance(dx, dy)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .map(|(i, _)| i);
                EscapeOutcome::Escaped { dir_x: dx, dir_y: dy, matched_infinity_point: matched, t }
            }
        }
    };
    Ok(EscapeResult { start: *start, time: dir, outcome })
}

/// Follows `iV` forward and backward from `n_starts` points spread over the
/// vanishing cycle of `H = h` and matches escapes against `targets`
/// (directions `[β:α]` read as points `(x, y) = (β, α)`).
pub fn escape_analysis(h_poly: &BiPoly, h: Complex64, n_starts: usize, opts: &FlowOptions, targets: &[Direction]) -> Result<Vec<EscapeResult>> {
    let ham = NumericHamiltonian::new(h_poly);
    let starts: Vec<FlowState> = (0..n_starts)
        .map(|j| initial_point_on_level(h_poly, h, std::f64::consts::TAU * j as f64 / n_starts as f64))
        .collect::<Result<_>>()?;
    let jobs: Vec<(FlowState, TimeDirection)> = starts
        .iter()
        .flat_map(|s| [(*s, TimeDirection::Forward), (*s, TimeDirection::Backward)])
        .collect();
    let pool = thread_pool();
    pool.install(|| jobs.par_iter().map(|(s, d)| one_run(&ham, s, *d, opts, targets)).collect())
}
