use std::collections::BTreeSet;

use serde::Serialize;

use crate::flow::{EscapeOutcome, EscapeResult};
use crate::infinity::InfinityAnalysis;

/// Points reached by an `iV` escape in infinite time.
fn accessible_points(escapes: &[EscapeResult]) -> BTreeSet<usize> {
    escapes
        .iter()
        .filter_map(|e| match &e.outcome {
            EscapeOutcome::Escaped { matched_infinity_point, .. } => *matched_infinity_point,
            _ => None,
        })
        .collect()
}

/// A branch whose coefficients are not linear in `h` (`coefficient` set,
/// index into ρ) or whose `ds/dt` series depends on `h` (`coefficient`
/// absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityWitness {
    pub point: usize,
    pub branch: usize,
    pub coefficient: Option<usize>,
    pub h_degree: Option<usize>,
    /// `None` without escape data.
    pub accessible: Option<bool>,
}

/// Advisory: the `h`-freeness of `ds/dt` depends on the chart frame.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum LinearityCheck {
    Violated { witnesses: Vec<LinearityWitness> },
    /// Witnesses listed here are on branches not known to be accessible.
    Satisfied { witnesses: Vec<LinearityWitness> },
    Partial { unanalyzed: Vec<usize>, witnesses: Vec<LinearityWitness> },
}

pub fn linearity_check(analysis: &InfinityAnalysis, escapes: Option<&[EscapeResult]>) -> LinearityCheck {
    let reached = escapes.map(accessible_points);
    let mut witnesses = Vec::new();
    let mut unanalyzed = Vec::new();
    for pa in &analysis.points {
        if pa.error.is_some() {
            unanalyzed.push(pa.point.index);
            continue;
        }
        let accessible = reached.as_ref().map(|r| r.contains(&pa.point.index));
        for (bi, b) in pa.point.branches.iter().enumerate() {
            let coeffs = std::iter::once(&b.x_coeff).chain(b.coeffs.iter());
            let bad = coeffs.enumerate().find_map(|(i, c)| match c.h_degree() {
                Some(d) if d > 1 => Some((i, d)),
                _ => None,
            });
            if let Some((i, d)) = bad {
                // Index 0 is the coefficient of X; ρ_j sits at j + 1.
                witnesses.push(LinearityWitness { point: pa.point.index, branch: bi, coefficient: i.checked_sub(1), h_degree: Some(d), accessible });
            }
            let series_h_free = pa.dynamics.iter().filter(|d| d.branch == bi).all(|d| d.h_independent);
            if !series_h_free {
                witnesses.push(LinearityWitness { point: pa.point.index, branch: bi, coefficient: None, h_degree: None, accessible });
            }
        }
    }
    if witnesses.iter().any(|w| w.accessible == Some(true)) {
        LinearityCheck::Violated { witnesses }
    } else if !unanalyzed.is_empty() {
        LinearityCheck::Partial { unanalyzed, witnesses }
    } else {
        LinearityCheck::Satisfied { witnesses }
    }
}

/// Every point reached by an infinite-time `iV` escape must carry a branch
/// with `k = 1`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum KCheck {
    Skipped,
    Consistent { checked: Vec<usize>, unchecked: Vec<usize> },
    ViolationWitness { point: usize, ks: Vec<i64> },
}

impl KCheck {
    pub fn is_violation(&self) -> bool {
        matches!(self, KCheck::ViolationWitness { .. })
    }
}

pub fn k_one_check(analysis: &InfinityAnalysis, escapes: Option<&[EscapeResult]>) -> KCheck {
    let Some(escapes) = escapes else { return KCheck::Skipped };
    let mut checked = Vec::new();
    let mut unchecked = Vec::new();
    for idx in accessible_points(escapes) {
        let Some(pa) = analysis.points.iter().find(|p| p.point.index == idx) else { continue };
        if pa.error.is_some() || pa.dynamics.is_empty() {
            unchecked.push(idx);
            continue;
        }
        let ks: BTreeSet<i64> = pa.dynamics.iter().map(|d| d.k).collect();
        if !ks.contains(&1) {
            return KCheck::ViolationWitness { point: idx, ks: ks.into_iter().collect() };
        }
        checked.push(idx);
    }
    KCheck::Consistent { checked, unchecked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{escape_analysis, FlowOptions};
    use crate::infinity::{analyze_infinity, DEFAULT_ORDER};
    use crate::parser::parse_poly;
    use num_complex::Complex64;

    fn run(s: &str, with_escapes: bool) -> (InfinityAnalysis, Option<Vec<EscapeResult>>) {
        let h = parse_poly(s).unwrap();
        let a = analyze_infinity(&h, DEFAULT_ORDER).unwrap();
        let esc = with_escapes.then(|| {
            let targets: Vec<_> = a.points.iter().map(|p| p.point.direction.clone()).collect();
            let opts = FlowOptions { t_max: 40.0, ..FlowOptions::default() };
            escape_analysis(&h, Complex64::new(0.01, 0.0), 4, &opts, &targets).unwrap()
        });
        (a, esc)
    }

    #[test]
    fn linear_center() {
        let (a, esc) = run("1/2*x^2 + 1/2*y^2", true);
        assert!(matches!(linearity_check(&a, esc.as_deref()), LinearityCheck::Satisfied { witnesses } if witnesses.is_empty()));
        match k_one_check(&a, esc.as_deref()) {
            KCheck::Consistent { checked, .. } => assert_eq!(checked, vec![0, 1]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(k_one_check(&a, None), KCheck::Skipped));
    }

    #[test]
    fn shear_center() {
        let (a, esc) = run("1/2*x^2 + 1/2*(y + x^2)^2", true);
        // Chart F = ((Y² − X)² + X²Y²)/2 − hX⁴. With X = s², Y = sρ the
        // branches solve ρ² = 1 ± i·s·ρ·√(1 − 2hs²/ρ²), and the second-order
        // term of the root puts h² into ρ at s⁵ first.
        let lin = linearity_check(&a, esc.as_deref());
        let LinearityCheck::Violated { witnesses } = lin else { panic!("{lin:?}") };
        let coeff: Vec<_> = witnesses.iter().filter(|w| w.coefficient.is_some()).collect();
        assert_eq!(coeff.len(), 2);
        assert!(coeff.iter().all(|w| w.coefficient == Some(5) && w.h_degree == Some(2)));
        assert!(!k_one_check(&a, esc.as_deref()).is_violation());
    }

    #[test]
    fn cubic_is_consistent_with_numerics() {
        // The cubic is not isochronous, so a witness is allowed; the check
        // must never claim a violation for an isochronous center.
        let (a, esc) = run("1/2*x^2 + 1/2*y^2 + x^3", true);
        let k = k_one_check(&a, esc.as_deref());
        if let KCheck::ViolationWitness { point, ks } = &k {
            assert_eq!(*point, 0);
            assert!(!ks.contains(&1));
        }
        let _ = linearity_check(&a, esc.as_deref());
    }
}
