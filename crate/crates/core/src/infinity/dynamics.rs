//! The one-dimensional flow induced on a branch at infinity.
//!
//! With `X = a·t^p` along a branch and the chart `X = 1/u`, `Y = v/u` of a
//! determinant-one frame, the Hamiltonian flow gives
//! `dt/dτ = (a^{1−n}/p)·t^{p+1−pn}·F_Y(X(t), Y(t)) = λ t^k + …`
//! where `F` is the chart polynomial. The period form has order `−k` there.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::puiseux::PuiseuxBranch;
use super::series;
use crate::algext::{AlgElem, Embedding, Extension};
use crate::bipoly::{BiPoly, Var};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::report::ser_complex;

/// Level used whenever an `h`-dependent quantity has to be evaluated.
pub const GENERIC_H: Complex64 = Complex64::new(0.0937, 0.0411);

/// Relative size below which a numeric real or imaginary part counts as 0.
const CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FlowClass {
    Petals { count: usize },
    Center,
    Node,
    Focus,
    Regular,
    Saddle,
}

/// Exact leading data of `dt/dτ` on a branch.
#[derive(Clone, Debug)]
pub struct LeadingTerm {
    pub k: i64,
    pub lambda: AlgElem,
    /// Every computed coefficient of the series is free of `h`.
    pub h_independent: bool,
    pub field: Option<Arc<Extension>>,
}

pub fn leading_term(f: &BiPoly<AlgElem>, n: usize, b: &PuiseuxBranch) -> Result<LeadingTerm> {
    let fy = f.partial_derivative(Var::Y);
    let len = b.order() + 1;
    let s = series::compose_branch(&fy, &b.x_coeff, b.p, &b.y_series(len), len);
    let mut v = None;
    for (j, c) in s.iter().enumerate() {
        if !c.zero_test()? {
            v = Some(j);
            break;
        }
    }
    let v = v.ok_or(CoreError::TruncationInsufficient(b.order()))?;
    let scale = b.x_coeff.powi(1 - n as i64)? * AlgElem::from_i64(b.p as i64).inv()?;
    let k = b.p as i64 + 1 - (b.p * n) as i64 + v as i64;
    let h_independent = s[v..].iter().all(|c| (c.clone() * scale.clone()).is_h_free());
    Ok(LeadingTerm { k, lambda: scale * s[v].clone(), h_independent, field: b.field.clone() })
}

/// Order of the period form `dt` at the branch.
pub fn omega_order(lead: &LeadingTerm) -> i64 {
    -lead.k
}

/// Class of the point `t = 0` of `dt/dτ = λ t^k + …`.
pub fn classify(k: i64, lambda_exact: Option<&GaussianRational>, lambda: Complex64) -> FlowClass {
    match k {
        k if k > 1 => FlowClass::Petals { count: 2 * (k as usize - 1) },
        1 => {
            let (re_zero, im_zero) = match lambda_exact {
                Some(g) => (num_traits::Zero::is_zero(&g.re), num_traits::Zero::is_zero(&g.im)),
                None => {
                    let m = lambda.norm();
                    (lambda.re.abs() <= CLASS_TOL * m, lambda.im.abs() <= CLASS_TOL * m)
                }
            };
            if re_zero {
                FlowClass::Center
            } else if im_zero {
                FlowClass::Node
            } else {
                FlowClass::Focus
            }
        }
        0 => FlowClass::Regular,
        _ => FlowClass::Saddle,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchDynamics {
    pub point: usize,
    pub branch: usize,
    /// Which conjugate of the branch (embedding of its coefficient field).
    pub embedding: usize,
    pub k: i64,
    /// Exact `λ` in the coefficient field.
    pub lambda_exact: String,
    /// `λ` under the embedding, at `h = GENERIC_H` when it depends on `h`.
    #[serde(serialize_with = "ser_complex")]
    pub lambda: Complex64,
    pub class: FlowClass,
    pub omega_order: i64,
    pub h_independent: bool,
    pub coeff_linear_in_h: bool,
}

/// One record per conjugate of the branch.
pub fn branch_dynamics(point: usize, branch: usize, b: &PuiseuxBranch, lead: &LeadingTerm) -> Result<Vec<BranchDynamics>> {
    let exact = lead.lambda.as_constant();
    let linear = b.max_h_degree().is_some_and(|d| d <= 1);
    let embeddings = Embedding::enumerate(b.field.as_ref(), Some(GENERIC_H))?;
    Ok(embeddings
        .iter()
        .enumerate()
        .map(|(e, emb)| {
            let lambda = lead.lambda.eval_at(GENERIC_H, emb).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            BranchDynamics {
                point,
                branch,
                embedding: e,
                k: lead.k,
                lambda_exact: lead.lambda.to_string(),
                lambda,
                class: classify(lead.k, exact.as_ref(), lambda),
                omega_order: omega_order(lead),
                h_independent: lead.h_independent,
                coeff_linear_in_h: linear,
            }
        })
        .collect())
}
