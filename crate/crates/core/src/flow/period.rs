use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{dopri, drive_rotated, initial_point_on_level, thread_pool, FlowField, FlowOptions, NumericHamiltonian, State};
use crate::bipoly::BiPoly;
use crate::error::{CoreError, Result};
use crate::report::ser_complex;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodSample {
    #[serde(serialize_with = "ser_complex")]
    pub h: Complex64,
    #[serde(rename = "T", serialize_with = "ser_complex")]
    pub t: Complex64,
    pub drift: f64,
    pub steps: usize,
    pub method: PeriodMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericVerdict {
    NumericallyIsochronous,
    NumericallyNonIsochronous,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleEntry {
    #[serde(serialize_with = "ser_complex")]
    pub h: Complex64,
    pub sample: Option<PeriodSample>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleSet {
    pub entries: Vec<SampleEntry>,
    pub verdict: NumericVerdict,
    /// `max |T_i − T_j| / |T̄|` over successful samples.
    pub max_deviation: Option<f64>,
    pub iso_tol: f64,
}

impl SampleSet {
    pub fn samples(&self) -> impl Iterator<Item = &PeriodSample> {
        self.entries.iter().filter_map(|e| e.sample.as_ref())
    }
}

fn dot(w: &State, v: &State) -> Complex64 {
    w[0] * v[0] + w[1] * v[1]
}

fn sub(a: &State, b: &State) -> State {
    [a[0] - b[0], a[1] - b[1]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodMethod {
    /// Real-time return of the `V`-orbit.
    Direct,
    /// Continued along the ray from `0` with rotated time.
    RayContinuation,
}

/// Smallest `|h|` tried when continuing along a ray.
const RAY_START_MIN: f64 = 1e-7;
/// Ratio between consecutive `|h|` during ray continuation.
const RAY_RATIO: f64 = 1.25;
/// Return radius (relative to `√|2h|`) accepted during ray continuation,
/// where only the first crossing is ever considered.
const CONTINUATION_RADIUS: f64 = 0.3;

/// Period of the vanishing cycle through the level `H = h`.
///
/// The orbit of `e^{iα}V` from the start point `p₀` is followed in real
/// time `s` until its first crossing of the real hyperplane through `p₀`
/// orthogonal to the field at `p₀`. If the crossing lies close to `p₀` it is
/// closed exactly in complex time by Newton's method on the complex-linear
/// functional `w·(z − p₀)`, and `T = e^{iα}s_c + δ`.
///
/// With `α = 0` this is the plain return map. When that misses (complex `h`
/// with a large `Im T`), `T` is continued along the ray `arg h = const`
/// from small `|h|`, each step using `α = arg T` of the previous one.
pub fn period(h_poly: &BiPoly, h: Complex64, opts: &FlowOptions) -> Result<PeriodSample> {
    if h.norm() > opts.max_abs_h {
        return Err(CoreError::InvalidOption(format!("|h| = {} exceeds {}", h.norm(), opts.max_abs_h)));
    }
    let ham = NumericHamiltonian::new(h_poly);
    let direct = by_section(&ham, h_poly, h, Complex64::new(1.0, 0.0), opts);
    match direct {
        Ok(s) => Ok(s),
        Err(e @ (CoreError::NoReturn { .. } | CoreError::ConservationLost { .. } | CoreError::Integration(_))) => {
            continue_along_ray(&ham, h_poly, h, opts).map_err(|_| e)
        }
        Err(e) => Err(e),
    }
}

fn continue_along_ray(ham: &NumericHamiltonian, h_poly: &BiPoly, h: Complex64, opts: &FlowOptions) -> Result<PeriodSample> {
    let unit = h / h.norm();
    let mut r = h.norm();
    let mut seed = None;
    while r > RAY_START_MIN {
        r /= 4.0;
        if let Ok(s) = by_section(ham, h_poly, unit * r, Complex64::new(1.0, 0.0), opts) {
            seed = Some(s);
            break;
        }
    }
    let mut prev = seed.ok_or(CoreError::NoReturn { t_max: opts.t_max })?;
    let mut prev_r = r;
    let mut slope = Complex64::new(0.0, 0.0);
    let mut steps = prev.steps;
    let wide = FlowOptions { return_radius: None, ..opts.clone() };
    loop {
        let next = (r * RAY_RATIO).min(h.norm());
        let predicted = prev.t + slope * (next - prev_r);
        let rot = predicted / predicted.norm();
        let mut s = by_section_with_radius(ham, h_poly, unit * next, rot, &wide, CONTINUATION_RADIUS)?;
        if (s.t - predicted).norm() > 0.25 * predicted.norm() {
            return Err(CoreError::Integration("period jumped during ray continuation".into()));
        }
        steps += s.steps;
        slope = (s.t - prev.t) / (next - prev_r);
        prev_r = next;
        r = next;
        if r >= h.norm() {
            s.h = h;
            s.steps = steps;
            s.method = PeriodMethod::RayContinuation;
            return Ok(s);
        }
        prev = s;
    }
}

struct Closure {
    z0: State,
    w: State,
}

impl Closure {
    fn new(f0: State, z0: State) -> Result<Self> {
        let n0 = f0[0].norm_sqr() + f0[1].norm_sqr();
        if n0 == 0.0 {
            return Err(CoreError::DegenerateLevel);
        }
        Ok(Self { z0, w: [f0[0].conj() / n0, f0[1].conj() / n0] })
    }

    fn sigma(&self, z: &State) -> f64 {
        dot(&self.w, &sub(z, &self.z0)).re
    }

    /// Complex time `δ` with `w·(φ_δ(zc) − p₀) = 0` for the flow of `V`,
    /// and the closing point.
    fn close(&self, ham: &NumericHamiltonian, zc: &State, scale: f64) -> (Complex64, State) {
        let field = |z: &State| ham.field(FlowField::V, z);
        let mut delta = Complex64::new(0.0, 0.0);
        let mut z = *zc;
        for _ in 0..30 {
            let n = ((delta.norm() / 0.01).ceil() as usize).clamp(4, 4000);
            z = dopri::fixed(&field, zc, delta, n);
            let psi = dot(&self.w, &sub(&z, &self.z0));
            let dpsi = dot(&self.w, &field(&z));
            let step = psi / dpsi;
            delta -= step;
            if step.norm() <= 1e-15 * (1.0 + scale) {
                break;
            }
        }
        (delta, z)
    }
}

fn by_section(ham: &NumericHamiltonian, h_poly: &BiPoly, h: Complex64, rot: Complex64, opts: &FlowOptions) -> Result<PeriodSample> {
    by_section_with_radius(ham, h_poly, h, rot, opts, 0.1)
}

fn by_section_with_radius(
    ham: &NumericHamiltonian,
    h_poly: &BiPoly,
    h: Complex64,
    rot: Complex64,
    opts: &FlowOptions,
    rel_radius: f64,
) -> Result<PeriodSample> {
    let p0 = initial_point_on_level(h_poly, h, 0.0)?;
    let z0 = p0.z();
    let f0 = ham.field(FlowField::V, &z0);
    let cl = Closure::new([rot * f0[0], rot * f0[1]], z0)?;
    let rr = opts.return_radius.unwrap_or(rel_radius * (2.0 * h.norm()).sqrt());
    let mut hit: Option<(f64, State)> = None;
    let tr = drive_rotated(ham, rot, &p0, opts.t_max, opts, |t0, za, t1, zb, dense| {
        let (s0, s1) = (cl.sigma(za), cl.sigma(zb));
        if !(s0 < 0.0 && s1 >= 0.0) {
            return true;
        }
        // Only the first return counts; later ones belong to other turns of
        // a spiralling orbit.
        let theta = illinois(|th| cl.sigma(&dense.eval(th)), s0, s1);
        let zc = dense.eval(theta);
        if crate::flow::norm(&sub(&zc, &z0)) < rr {
            hit = Some((t0 + theta * (t1 - t0), zc));
        }
        false
    })?;
    let tol = opts.conservation_tol * (1.0 + h.norm());
    if tr.drift > tol {
        return Err(CoreError::ConservationLost { drift: tr.drift, tol });
    }
    let Some((sc, zc)) = hit else {
        return match tr.end {
            super::TrajectoryEnd::Completed => Err(CoreError::NoReturn { t_max: opts.t_max }),
            e => Err(CoreError::Integration(format!("orbit left the cycle: {e:?}"))),
        };
    };
    let (delta, z) = cl.close(ham, &zc, sc);
    let drift = tr.drift.max((ham.value(&z) - h).norm());
    if drift > tol {
        return Err(CoreError::ConservationLost { drift, tol });
    }
    Ok(PeriodSample { h, t: rot * sc + delta, drift, steps: tr.steps, method: PeriodMethod::Direct })
}

/// Root of `g` on `[0, 1]` given `g(0) < 0 ≤ g(1)`.
fn illinois(g: impl Fn(f64) -> f64, g0: f64, g1: f64) -> f64 {
    let (mut a, mut b, mut fa, mut fb) = (0.0, 1.0, g0, g1);
    let mut side = 0;
    for _ in 0..100 {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = g(c);
        if fc == 0.0 || (b - a).abs() < 1e-16 {
            return c;
        }
        if fc < 0.0 {
            a = c;
            fa = fc;
            if side == -1 {
                fb /= 2.0;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa /= 2.0;
            }
            side = 1;
        }
    }
    (a * fb - b * fa) / (fb - fa)
}

/// `count` values of `h` per ray with `|h|` log-spaced in `[h_min, h_max]`;
/// ray angles in degrees.
pub fn default_h_set(count: usize, h_min: f64, h_max: f64, rays_deg: &[f64]) -> Vec<Complex64> {
    let mut out = Vec::new();
    for &ang in rays_deg {
        let u = Complex64::from_polar(1.0, ang.to_radians());
        for k in 0..count {
            let frac = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
            let r = (h_min.ln() + frac * (h_max.ln() - h_min.ln())).exp();
            out.push(u * r);
        }
    }
    out
}

/// Periods at every `h` (in input order) and the numeric isochronicity
/// verdict at relative tolerance `iso_tol`.
pub fn sample_periods(h_poly: &BiPoly, h_set: &[Complex64], opts: &FlowOptions, iso_tol: f64) -> SampleSet {
    let pool = thread_pool();
    let entries: Vec<SampleEntry> = pool.install(|| {
        h_set
            .par_iter()
            .map(|&h| match period(h_poly, h, opts) {
                Ok(s) => SampleEntry { h, sample: Some(s), error: None },
                Err(e) => SampleEntry { h, sample: None, error: Some(e.to_string()) },
            })
            .collect()
    });
    let ts: Vec<Complex64> = entries.iter().filter_map(|e| e.sample.as_ref().map(|s| s.t)).collect();
    let max_deviation = (ts.len() >= 2).then(|| {
        let mean = ts.iter().sum::<Complex64>() / ts.len() as f64;
        let mut dev: f64 = 0.0;
        for a in &ts {
            for b in &ts {
                dev = dev.max((a - b).norm());
            }
        }
        dev / mean.norm()
    });
    // A spread among the samples that did succeed already decides the
    // question; agreement only counts when every sample succeeded.
    let verdict = match max_deviation {
        Some(d) if d >= iso_tol => NumericVerdict::NumericallyNonIsochronous,
        Some(_) if ts.len() == entries.len() => NumericVerdict::NumericallyIsochronous,
        _ => NumericVerdict::Inconclusive,
    };
    SampleSet { entries, verdict, max_deviation, iso_tol }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;
    use std::f64::consts::TAU;

    #[test]
    fn linear_and_shear_periods() {
        let opts = FlowOptions::default();
        let lin = parse_poly("1/2*x^2 + 1/2*y^2").unwrap();
        let s = period(&lin, Complex64::new(0.05, 0.0), &opts).unwrap();
        assert!((s.t - TAU).norm() < 1e-9, "{:?}", s.t);
        let shear = parse_poly("1/2*x^2 + 1/2*(y + x^2)^2").unwrap();
        let s = period(&shear, Complex64::new(0.05, 0.0), &opts).unwrap();
        assert!((s.t - TAU).norm() < 1e-6, "{:?}", s.t);
        let s = period(&shear, Complex64::from_polar(0.05, 1.0), &opts).unwrap();
        assert!((s.t - TAU).norm() < 1e-6, "{:?}", s.t);
    }

    /// Real period of the cubic's oscillation by quadrature: with the turning
    /// points `x₋ < x₊` and the third root `x₃` of `2x³ + x² − 2h`, the
    /// substitution `x = m + r cos φ` gives `T = 2∫₀^π dφ / √(2(x − x₃))`.
    fn cubic_quadrature(h: f64) -> f64 {
        let newton = |mut x: f64| {
            for _ in 0..100 {
                x -= (2.0 * x.powi(3) + x * x - 2.0 * h) / (6.0 * x * x + 2.0 * x);
            }
            x
        };
        let (xp, xm) = (newton((2.0 * h).sqrt()), newton(-(2.0 * h).sqrt()));
        // Sum of roots is −1/2.
        let x3 = -0.5 - xp - xm;
        let (m, r) = ((xp + xm) / 2.0, (xp - xm) / 2.0);
        let n = 2000;
        let mut acc = 0.0;
        for k in 0..n {
            let phi = std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            acc += 1.0 / (2.0 * (m + r * phi.cos() - x3)).sqrt();
        }
        2.0 * acc * std::f64::consts::PI / n as f64
    }

    #[test]
    fn cubic_period_varies() {
        let cubic = parse_poly("1/2*x^2 + 1/2*y^2 + x^3").unwrap();
        let opts = FlowOptions::default();
        for h in [0.001, 0.01, 0.018] {
            let t = period(&cubic, Complex64::new(h, 0.0), &opts).unwrap().t;
            assert!((t - cubic_quadrature(h)).norm() < 1e-8, "{h}: {t} vs {}", cubic_quadrature(h));
        }
        let a = period(&cubic, Complex64::new(0.01, 0.0), &opts).unwrap().t;
        let b = period(&cubic, Complex64::new(-0.05, 0.0), &opts).unwrap().t;
        assert!((a - b).norm() / a.norm() > 1e-4);
        let fine = FlowOptions { rel_tol: 1e-12, abs_tol: 1e-14, ..FlowOptions::default() };
        let a2 = period(&cubic, Complex64::new(0.01, 0.0), &fine).unwrap().t;
        assert!((a - a2).norm() < 1e-8);
    }

    #[test]
    fn continuation_off_the_real_axis() {
        let cubic = parse_poly("1/2*x^2 + 1/2*y^2 + x^3").unwrap();
        let opts = FlowOptions::default();
        let s = period(&cubic, Complex64::from_polar(0.05, 60f64.to_radians()), &opts).unwrap();
        assert_eq!(s.method, PeriodMethod::RayContinuation);
        // The period is holomorphic in h near 0; the conjugate ray gives
        // the conjugate value for a real Hamiltonian.
        let c = period(&cubic, Complex64::from_polar(0.05, -60f64.to_radians()), &opts).unwrap();
        assert!((s.t - c.t.conj()).norm() < 1e-8, "{} {}", s.t, c.t);
        // Agreement with a direct return at a smaller |h| where it exists.
        let d = period(&cubic, Complex64::from_polar(0.001, 60f64.to_radians()), &opts).unwrap();
        let f = FlowOptions { max_abs_h: 1.0, ..opts.clone() };
        let cont = continue_along_ray(&NumericHamiltonian::new(&cubic), &cubic, Complex64::from_polar(0.001, 60f64.to_radians()), &f).unwrap();
        assert!((d.t - cont.t).norm() < 1e-8);
    }

    #[test]
    fn verdicts() {
        let opts = FlowOptions::default();
        let hs = default_h_set(4, 1e-3, 1e-1, &[0.0, 60.0]);
        let lin = parse_poly("1/2*x^2 + 1/2*y^2").unwrap();
        assert_eq!(sample_periods(&lin, &hs, &opts, 1e-6).verdict, NumericVerdict::NumericallyIsochronous);
        let cubic = parse_poly("1/2*x^2 + 1/2*y^2 + x^3").unwrap();
        // Real levels above the saddle value 1/54 fail, the rest disagree.
        let set = sample_periods(&cubic, &hs, &opts, 1e-6);
        assert!(set.entries.iter().any(|e| e.error.is_some()));
        assert_eq!(set.verdict, NumericVerdict::NumericallyNonIsochronous);
        let mut bad = hs.clone();
        bad.push(Complex64::new(0.0, 0.0));
        assert_eq!(sample_periods(&lin, &bad, &opts, 1e-6).verdict, NumericVerdict::Inconclusive);
    }
}
