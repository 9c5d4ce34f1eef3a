//! Real-time flows of the holomorphic Hamiltonian field `V = (−H_y, H_x)`
//! and of `iV` on ℂ².

pub mod dopri;
mod escape;
mod period;

use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::{BiPoly, NumericPoly, Var};
use crate::error::{CoreError, Result};
pub use dopri::State;
pub use escape::{escape_analysis, EscapeOutcome, EscapeResult, TimeDirection};
pub use period::{default_h_set, period, sample_periods, NumericVerdict, PeriodMethod, PeriodSample, SampleEntry, SampleSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowField {
    V,
    #[serde(rename = "iV")]
    IV,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub escape_radius: f64,
    pub t_max: f64,
    /// Return radius for the period; `None` means `0.1·√|2h|`.
    pub return_radius: Option<f64>,
    /// Allowed `max |H − h|` relative to `1 + |h|`.
    pub conservation_tol: f64,
    pub min_step: f64,
    pub max_steps: usize,
    /// Largest `|h|` for which the vanishing cycle is tracked.
    pub max_abs_h: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            escape_radius: 1e6,
            t_max: 50.0 * std::f64::consts::TAU,
            return_radius: None,
            conservation_tol: 1e-8,
            min_step: 1e-14,
            max_steps: 2_000_000,
            max_abs_h: 0.25,
        }
    }
}

/// A point of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowState {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub x: Complex64,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub y: Complex64,
    pub t: f64,
}

impl FlowState {
    pub fn z(&self) -> State {
        [self.x, self.y]
    }
}

/// `H` with its gradient in numeric form.
#[derive(Clone, Debug)]
pub struct NumericHamiltonian {
    h: NumericPoly,
    hx: NumericPoly,
    hy: NumericPoly,
}

impl NumericHamiltonian {
    pub fn new(h: &BiPoly) -> Self {
        Self {
            h: h.to_numeric(),
            hx: h.partial_derivative(Var::X).to_numeric(),
            hy: h.partial_derivative(Var::Y).to_numeric(),
        }
    }

    pub fn value(&self, z: &State) -> Complex64 {
        self.h.eval(z[0], z[1])
    }

    pub fn gradient(&self, z: &State) -> State {
        [self.hx.eval(z[0], z[1]), self.hy.eval(z[0], z[1])]
    }

    pub fn field(&self, kind: FlowField, z: &State) -> State {
        let [hx, hy] = self.gradient(z);
        match kind {
            FlowField::V => [-hy, hx],
            FlowField::IV => [Complex64::i() * -hy, Complex64::i() * hx],
        }
    }
}

pub(crate) fn norm(z: &State) -> f64 {
    (z[0].norm_sqr() + z[1].norm_sqr()).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TrajectoryEnd {
    Completed,
    Escaped { t: f64 },
    StepUnderflow { t: f64 },
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<FlowState>,
    pub end: TrajectoryEnd,
    /// `max |H(z(t)) − H(z(0))|` over accepted steps.
    pub drift: f64,
    pub steps: usize,
}

/// Adaptive driver shared by all integrations. `visit` sees each accepted
/// step `(t0, z0, t1, z1, dense)` and may stop the integration by returning
/// `false`.
pub(crate) fn drive(
    ham: &NumericHamiltonian,
    kind: FlowField,
    z0: &FlowState,
    t_end: f64,
    opts: &FlowOptions,
    visit: impl FnMut(f64, &State, f64, &State, &dopri::Dense) -> bool,
) -> Result<Trajectory> {
    let rot = match kind {
        FlowField::V => Complex64::new(1.0, 0.0),
        FlowField::IV => Complex64::i(),
    };
    drive_rotated(ham, rot, z0, t_end, opts, visit)
}

/// As [`drive`] for the field `rot·V`.
pub(crate) fn drive_rotated(
    ham: &NumericHamiltonian,
    rot: Complex64,
    z0: &FlowState,
    t_end: f64,
    opts: &FlowOptions,
    mut visit: impl FnMut(f64, &State, f64, &State, &dopri::Dense) -> bool,
) -> Result<Trajectory> {
    let sign = if t_end >= z0.t { 1.0 } else { -1.0 };
    let span = (t_end - z0.t).abs();
    let f = |z: &State| {
        let v = ham.field(FlowField::V, z);
        [v[0] * rot * sign, v[1] * rot * sign]
    };
    let h0 = ham.value(&z0.z());
    let mut z = z0.z();
    let mut k1 = f(&z);
    let mut s = 0.0;
    let speed = norm(&k1).max(1e-300);
    let mut dt = (1e-2 * (1.0 + norm(&z)) / speed).min(span.max(1e-300)).max(opts.min_step);
    let mut states = vec![*z0];
    let mut drift: f64 = 0.0;
    let mut steps = 0;
    let end = loop {
        if s >= span {
            break TrajectoryEnd::Completed;
        }
        if steps >= opts.max_steps {
            return Err(CoreError::Integration(format!("step budget {} exhausted", opts.max_steps)));
        }
        let h = dt.min(span - s);
        let st = dopri::step(&f, &z, &k1, Complex64::new(h, 0.0), opts.rel_tol, opts.abs_tol);
        if !st.err.is_finite() || st.err > 1.0 {
            dt = h * if st.err.is_finite() { dopri::step_factor(st.err) } else { 0.2 };
            if dt < opts.min_step {
                break TrajectoryEnd::StepUnderflow { t: z0.t + sign * s };
            }
            continue;
        }
        steps += 1;
        let t0 = z0.t + sign * s;
        s += h;
        let t1 = z0.t + sign * s;
        let zprev = z;
        z = st.y1;
        k1 = st.k7;
        drift = drift.max((ham.value(&z) - h0).norm());
        states.push(FlowState { x: z[0], y: z[1], t: t1 });
        if !visit(t0, &zprev, t1, &z, &st.dense) {
            break TrajectoryEnd::Completed;
        }
        if norm(&z) > opts.escape_radius {
            break TrajectoryEnd::Escaped { t: t1 };
        }
        dt = h * dopri::step_factor(st.err);
        if dt < opts.min_step {
            break TrajectoryEnd::StepUnderflow { t: t1 };
        }
    };
    Ok(Trajectory { states, end, drift, steps })
}

/// Integrates `V` or `iV` from `z0` to time `t_end` (which may lie before
/// `z0.t`).
pub fn integrate(h: &BiPoly, kind: FlowField, z0: &FlowState, t_end: f64, opts: &FlowOptions) -> Result<Trajectory> {
    let ham = NumericHamiltonian::new(h);
    drive(&ham, kind, z0, t_end, opts, |_, _, _, _, _| true)
}

/// Starting point on the level `H = h` near `(√(2h) cos θ, √(2h) sin θ)`.
pub fn initial_point_on_level(h_poly: &BiPoly, h: Complex64, theta: f64) -> Result<FlowState> {
    if h.norm() == 0.0 {
        return Err(CoreError::DegenerateLevel);
    }
    let ham = NumericHamiltonian::new(h_poly);
    let r = (2.0 * h).sqrt();
    let mut z = [r * theta.cos(), r * theta.sin()];
    let tol = 1e-13 * (1.0 + h.norm());
    let g = ham.gradient(&z);
    // Newton along y unless H_y is nearly singular there.
    let along = if g[1].norm() >= 1e-3 * (g[0].norm() + g[1].norm()) { 1 } else { 0 };
    for _ in 0..50 {
        let res = ham.value(&z) - h;
        if res.norm() <= tol {
            return Ok(FlowState { x: z[0], y: z[1], t: 0.0 });
        }
        let d = ham.gradient(&z)[along];
        if d.norm() == 0.0 || !d.is_finite() {
            break;
        }
        z[along] -= res / d;
    }
    if (ham.value(&z) - h).norm() <= tol {
        return Ok(FlowState { x: z[0], y: z[1], t: 0.0 });
    }
    Err(CoreError::CannotLand)
}

/// Rayon pool honoring `ISOCHK_THREADS`.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("ISOCHK_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool")
}
