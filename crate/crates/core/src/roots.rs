//! Simultaneous-iteration (Aberth–Ehrlich) root finding with exact
//! multiplicities from squarefree decomposition.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::CoreError;
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::unipoly::{horner, UniPoly};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
const MAX_ROUNDS: usize = 1000;

/// A root with its exact multiplicity. `exact` holds the root when it was
/// recognized inside ℚ(i) and verified by exact evaluation.
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub value: Complex64,
    pub multiplicity: usize,
    pub radius: f64,
    pub exact: Option<GaussianRational>,
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of a numeric polynomial (coefficients by ascending degree)
/// by Aberth–Ehrlich iteration. Roots are returned sorted by
/// `(re, im)` for determinism.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>, CoreError> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    // Zero roots are split off exactly.
    let zeros = c.iter().position(|z| z.norm() != 0.0).unwrap_or(0);
    let c: Vec<Complex64> = c[zeros..].to_vec();
    let m = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(roots);
    }
    let lead = c[m];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    // Cauchy-type radius for the initial circle.
    let radius = monic[..m]
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm().powf(1.0 / (m - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..m)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.4;
            Complex64::from_polar(radius, ang)
        })
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ROUNDS {
        let mut max_step: f64 = 0.0;
        for i in 0..m {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / d
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        let worst = z.iter().map(|&r| horner(&monic, r).norm()).fold(0.0, f64::max);
        let scale: f64 = monic.iter().map(|a| a.norm()).sum();
        if worst > 1e-9 * scale {
            return Err(CoreError::RootFinding { degree: m, residual: worst });
        }
    }
    roots.extend(z);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Bound on the denominators of ℚ(i)-roots of `p`: the norm of the leading
/// coefficient after clearing denominators.
fn denominator_bound(p: &UniPoly) -> i64 {
    let mut l = BigInt::from(1);
    for c in p.coeffs() {
        l = l.lcm(&c.denom_lcm());
    }
    let lead = p.lc();
    let re = lead.re.clone() * num_rational::BigRational::from_integer(l.clone());
    let im = lead.im.clone() * num_rational::BigRational::from_integer(l);
    let norm = re.numer() * re.numer() + im.numer() * im.numer();
    norm.abs().to_i64().unwrap_or(i64::MAX).clamp(1, 100_000_000)
}

/// Tries to recognize `z` as an exact ℚ(i) root of `p`.
pub fn recognize_root(p: &UniPoly, z: Complex64) -> Option<GaussianRational> {
    let bound = denominator_bound(p);
    let candidates = [bound, bound.min(10_000), 1000];
    for max_den in candidates {
        if let Some(g) = GaussianRational::approximate(z, max_den) {
            if p.eval(&g).is_zero() {
                return Some(g);
            }
        }
    }
    None
}

/// All roots of `u` grouped by exact multiplicity.
///
/// Multiplicities come from the squarefree decomposition; the numeric
/// iteration only ever sees squarefree factors. Roots lying in ℚ(i) are
/// recognized and verified exactly.
pub fn roots_clustered(u: &UniPoly, tol: f64) -> Result<Vec<RootCluster>, CoreError> {
    if u.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, mult) in u.squarefree()? {
        let numeric = factor.to_complex();
        for z in aberth(&numeric)? {
            let exact = recognize_root(&factor, z);
            let value = exact.as_ref().map(|g| g.to_complex()).unwrap_or(z);
            out.push(RootCluster { value, multiplicity: mult, radius: tol, exact });
        }
    }
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    let coeffs = u.to_complex();
    for r in &out {
        let res = u.eval_complex(r.value).norm();
        // Backward-error scale: Σ |a_k|·|z|^k.
        let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, a| acc * r.value.norm() + a.norm());
        if res > tol * (1.0 + scale) && r.exact.is_none() {
            return Err(CoreError::RootFinding { degree: u.deg0(), residual: res });
        }
    }
    Ok(out)
}
