//! Verdict layer: Morse normalization, necessary conditions at infinity,
//! the singular census and the combined report.

mod checks;
mod report;
mod singular;

use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::flow::{period, sample_periods, FlowOptions, PeriodSample, SampleSet};
use crate::gauss::GaussianRational;
use crate::infinity::{infinity_points, Mat2};
use crate::report::{ser_gauss, ser_mat2, ser_poly};

pub use checks::{k_one_check, linearity_check, KCheck, LinearityCheck, LinearityWitness};
pub use report::{combined_report, AnalysisOptions, AnalysisReport, Overall, OverallBasis, OverallVerdict, StageError};
pub use singular::{critical_points, single_singularity_on_l0, CriticalPoint, L0_TOL};

/// `H` brought to `(x² + y²)/2 + h.o.t.` by `H_norm(X, Y) = H(S·(X, Y))/scale`.
#[derive(Clone, Debug, Serialize)]
pub struct MorseForm {
    #[serde(serialize_with = "ser_poly")]
    pub original: BiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub normalized: BiPoly,
    /// `S` with `(x, y) = S·(X, Y)`, `det S = 1`.
    #[serde(serialize_with = "ser_mat2")]
    pub change: Mat2,
    /// `d` with `d² = det Hess`; periods map back as `T = T_norm/d` at
    /// levels `h = d·h_norm`.
    #[serde(serialize_with = "ser_gauss")]
    pub scale: GaussianRational,
}

impl MorseForm {
    pub fn is_identity(&self) -> bool {
        let one = GaussianRational::one();
        let zero = GaussianRational::zero();
        self.scale.is_one() && self.change == [[one.clone(), zero.clone()], [zero, one]]
    }
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from(n)
}

/// Determinant-one change over ℚ(i) taking the quadratic part to
/// `d·(x² + y²)/2`, then division by `d`.
pub fn normalize(h: &BiPoly) -> Result<MorseForm> {
    if !h.coeff(0, 0).is_zero() {
        return Err(CoreError::NotMorse("H(0,0) is not zero".into()));
    }
    if !h.coeff(1, 0).is_zero() || !h.coeff(0, 1).is_zero() {
        return Err(CoreError::NotMorse("nonzero linear part".into()));
    }
    let (a, b, c) = (h.coeff(2, 0), h.coeff(1, 1), h.coeff(0, 2));
    let disc = g(4) * a.clone() * c.clone() - b.clone() * b.clone();
    if disc.is_zero() {
        return Err(CoreError::NotMorse("degenerate Hessian".into()));
    }
    let d = disc
        .sqrt()
        .ok_or_else(|| CoreError::IrrationalNormalization(format!("det Hess = {disc} is not a square in Q(i)")))?;
    let i = GaussianRational::i();
    // Q = l1·l2 with rows of M as the linear forms.
    let mut m: Mat2 = if !a.is_zero() {
        let two_a = g(2) * a.clone();
        let r1 = (-b.clone() + i.clone() * d.clone()).div(&two_a)?;
        let r2 = (-b.clone() - i.clone() * d.clone()).div(&two_a)?;
        [[a.clone(), -(a.clone() * r1)], [g(1), -r2]]
    } else {
        [[g(0), g(1)], [b.clone(), c.clone()]]
    };
    let det_m = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    if det_m == i.clone() * d.clone() {
        m.swap(0, 1);
    }
    // T = W⁻¹·diag(1, 2/d)·M with W the rows of X ± iY.
    let k2 = g(2).div(&d)?;
    let row2 = [m[1][0].clone() * k2.clone(), m[1][1].clone() * k2];
    let half = GaussianRational::from_ratio(1, 2);
    let ih = i.clone() * half.clone();
    let t: Mat2 = [
        [half.clone() * (m[0][0].clone() + row2[0].clone()), half * (m[0][1].clone() + row2[1].clone())],
        [ih.clone() * (row2[0].clone() - m[0][0].clone()), ih * (row2[1].clone() - m[0][1].clone())],
    ];
    let s: Mat2 = [[t[1][1].clone(), -t[0][1].clone()], [-t[1][0].clone(), t[0][0].clone()]];
    let moved = h.linear_substitute(&s[0][0], &s[0][1], &s[1][0], &s[1][1]);
    let normalized = moved.scale(&d.inv()?);
    let target_half = GaussianRational::from_ratio(1, 2);
    if normalized.coeff(2, 0) != target_half || normalized.coeff(0, 2) != target_half || !normalized.coeff(1, 1).is_zero() {
        return Err(CoreError::IrrationalNormalization("quadratic part did not reduce".into()));
    }
    Ok(MorseForm { original: h.clone(), normalized, change: s, scale: d })
}

/// Period of the original Hamiltonian at level `h`, computed on the normal
/// form at `h/d` and mapped back.
pub fn period_via_normal_form(m: &MorseForm, h: Complex64, opts: &FlowOptions) -> Result<PeriodSample> {
    let d = m.scale.to_complex();
    let mut s = period(&m.normalized, h / d, opts)?;
    s.h = h;
    s.t /= d;
    Ok(s)
}

/// [`sample_periods`] at levels of the original Hamiltonian.
pub fn sample_periods_via_normal_form(m: &MorseForm, hs: &[Complex64], opts: &FlowOptions, iso_tol: f64) -> SampleSet {
    let d = m.scale.to_complex();
    let scaled: Vec<Complex64> = hs.iter().map(|h| h / d).collect();
    let mut set = sample_periods(&m.normalized, &scaled, opts, iso_tol);
    for (e, h) in set.entries.iter_mut().zip(hs) {
        e.h = *h;
        if let Some(smp) = e.sample.as_mut() {
            smp.h = *h;
            smp.t /= d;
        }
    }
    set
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Passes,
    Fails,
}

/// The necessary condition at infinity: an isochronous center needs a
/// point at infinity of multiplicity at least `(n + 1)/2`.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityCheck {
    pub status: CheckStatus,
    pub max_multiplicity: usize,
    /// `n + 1`.
    pub degree: u32,
    /// `(n + 1)/2` as text.
    pub bound: String,
}

impl MultiplicityCheck {
    pub fn fails(&self) -> bool {
        self.status == CheckStatus::Fails
    }

    pub fn summary(&self) -> String {
        match self.status {
            CheckStatus::Fails => format!(
                "FAILS multiplicity condition: max multiplicity {} < {} ⇒ not isochronous",
                self.max_multiplicity, self.bound
            ),
            CheckStatus::Passes => format!(
                "passes multiplicity condition: max multiplicity {} ≥ {} (necessary only, inconclusive)",
                self.max_multiplicity, self.bound
            ),
        }
    }
}

pub fn multiplicity_check(h: &BiPoly) -> Result<MultiplicityCheck> {
    let degree = h.total_degree();
    if degree < 2 {
        return Err(CoreError::InvalidOption("H must have degree at least 2".into()));
    }
    let max_multiplicity = infinity_points(h)?.iter().map(|p| p.multiplicity).max().unwrap_or(0);
    let status = if 2 * max_multiplicity < degree as usize { CheckStatus::Fails } else { CheckStatus::Passes };
    let bound = if degree % 2 == 0 { (degree / 2).to_string() } else { format!("{degree}/2") };
    Ok(MultiplicityCheck { status, max_multiplicity, degree, bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityFlag {
    Applies,
    NotApplicable,
}

impl ParityFlag {
    pub fn note(&self) -> &'static str {
        match self {
            ParityFlag::Applies => {
                "real coefficients and even n: conjecturally no isochronous center; the vanishing cycle would not be homologous to zero"
            }
            ParityFlag::NotApplicable => "not a real system of even degree n",
        }
    }
}

/// Real coefficients and even `n = deg H − 1`.
pub fn parity_flag(h: &BiPoly) -> ParityFlag {
    let n = h.total_degree() as i64 - 1;
    if h.is_real() && n >= 0 && n % 2 == 0 {
        ParityFlag::Applies
    } else {
        ParityFlag::NotApplicable
    }
}
