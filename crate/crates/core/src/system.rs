//! Common zeros of two bivariate polynomials.

use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::{BiPoly, NumericPoly, Var};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::report::{ser_complex, GJson};
use crate::resultant::resultant;
use crate::roots::{roots_clustered, RootCluster, DEFAULT_CLUSTER_TOL};

/// Residual bound (relative to the coefficient size) for numeric solutions.
const ACCEPT_TOL: f64 = 1e-8;
/// Solutions closer than this cannot be told apart.
const SEPARATION_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    #[serde(serialize_with = "ser_complex")]
    pub x: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub y: Complex64,
    /// Both coordinates in ℚ(i), verified by exact evaluation.
    pub exact: Option<[GJson; 2]>,
    /// Root multiplicity in the resultant, when the point is alone over
    /// that coordinate.
    pub multiplicity: Option<usize>,
}

impl Solution {
    pub fn exact_coords(&self) -> Option<(GaussianRational, GaussianRational)> {
        self.exact.as_ref().map(|[a, b]| (a.0.clone(), b.0.clone()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub points: Vec<Solution>,
    /// Two numeric solutions lie within the separation tolerance.
    pub ambiguous: bool,
}

fn newton2(p: &NumericPoly, q: &NumericPoly, dp: [&NumericPoly; 2], dq: [&NumericPoly; 2], mut x: Complex64, mut y: Complex64) -> (Complex64, Complex64) {
    for _ in 0..20 {
        let (f, g) = (p.eval(x, y), q.eval(x, y));
        let (a, b, c, d) = (dp[0].eval(x, y), dp[1].eval(x, y), dq[0].eval(x, y), dq[1].eval(x, y));
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (d * f - b * g) / det;
        let dy = (a * g - c * f) / det;
        if !dx.is_finite() || !dy.is_finite() {
            break;
        }
        x -= dx;
        y -= dy;
        if dx.norm() + dy.norm() <= 1e-15 * (1.0 + x.norm() + y.norm()) {
            break;
        }
    }
    (x, y)
}

fn coeff_size(p: &BiPoly) -> f64 {
    p.terms().map(|(_, c)| c.to_complex().norm()).sum()
}

/// All common zeros of `p` and `q` in ℂ². Candidates are pairs of roots of
/// `Res_y` and `Res_x`; exact pairs are checked exactly, the others after a
/// Newton polish by residual. A common factor makes one resultant vanish
/// identically and gives [`CoreError::CommonComponent`].
pub fn solve_pair(p: &BiPoly, q: &BiPoly) -> Result<SolutionSet> {
    let empty = SolutionSet { points: Vec::new(), ambiguous: false };
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(CoreError::CommonComponent),
        (true, false) | (false, true) => {
            let other = if p.is_zero() { q } else { p };
            return if other.is_constant() { Ok(empty) } else { Err(CoreError::CommonComponent) };
        }
        _ => {}
    }
    if p.is_constant() || q.is_constant() {
        return Ok(empty);
    }
    let rx = resultant(p, q, Var::Y)?;
    let ry = resultant(p, q, Var::X)?;
    if rx.is_zero() || ry.is_zero() {
        return Err(CoreError::CommonComponent);
    }
    let roots = |r: &crate::unipoly::UniPoly| -> Result<Vec<RootCluster>> {
        if r.is_constant() {
            Ok(Vec::new())
        } else {
            roots_clustered(r, DEFAULT_CLUSTER_TOL)
        }
    };
    let xs = roots(&rx)?;
    let ys = roots(&ry)?;
    let (np, nq) = (p.to_numeric(), q.to_numeric());
    let (px, py) = (p.partial_derivative(Var::X).to_numeric(), p.partial_derivative(Var::Y).to_numeric());
    let (qx, qy) = (q.partial_derivative(Var::X).to_numeric(), q.partial_derivative(Var::Y).to_numeric());
    let (sp, sq) = (coeff_size(p), coeff_size(q));
    let mut found: Vec<(Solution, usize, usize)> = Vec::new();
    for (i, cx) in xs.iter().enumerate() {
        for (j, cy) in ys.iter().enumerate() {
            if let (Some(ex), Some(ey)) = (&cx.exact, &cy.exact) {
                if p.eval(ex, ey).is_zero() && q.eval(ex, ey).is_zero() {
                    let exact = Some([GJson(ex.clone()), GJson(ey.clone())]);
                    found.push((Solution { x: cx.value, y: cy.value, exact, multiplicity: None }, i, j));
                }
                continue;
            }
            let scale = 1.0 + cx.value.norm() + cy.value.norm();
            let deg = p.total_degree().max(q.total_degree()) as i32;
            let tol_p = ACCEPT_TOL * sp * scale.powi(deg);
            let tol_q = ACCEPT_TOL * sq * scale.powi(deg);
            let (x, y) = newton2(&np, &nq, [&px, &py], [&qx, &qy], cx.value, cy.value);
            let moved = (x - cx.value).norm() + (y - cy.value).norm();
            if moved <= 1e-6 * scale && np.eval(x, y).norm() <= tol_p && nq.eval(x, y).norm() <= tol_q {
                found.push((Solution { x, y, exact: None, multiplicity: None }, i, j));
            }
        }
    }
    for k in 0..found.len() {
        let (_, i, j) = found[k];
        let alone_x = found.iter().filter(|f| f.1 == i).count() == 1;
        let alone_y = found.iter().filter(|f| f.2 == j).count() == 1;
        found[k].0.multiplicity = if alone_x {
            Some(xs[i].multiplicity)
        } else if alone_y {
            Some(ys[j].multiplicity)
        } else {
            None
        };
    }
    let mut points: Vec<Solution> = found.into_iter().map(|f| f.0).collect();
    points.sort_by(|a, b| {
        a.x.re.total_cmp(&b.x.re).then(a.x.im.total_cmp(&b.x.im)).then(a.y.re.total_cmp(&b.y.re)).then(a.y.im.total_cmp(&b.y.im))
    });
    let mut ambiguous = false;
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let close = (points[a].x - points[b].x).norm() + (points[a].y - points[b].y).norm() < SEPARATION_TOL;
            if close && (points[a].exact.is_none() || points[b].exact.is_none()) {
                ambiguous = true;
            }
        }
    }
    Ok(SolutionSet { points, ambiguous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn lines_and_parabolas() {
        let s = solve_pair(&p("x"), &p("y + x^2")).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].exact_coords(), Some((0.into(), 0.into())));
        assert_eq!(s.points[0].multiplicity, Some(1));

        let s = solve_pair(&p("x^2 - 1"), &p("y")).unwrap();
        let pts: Vec<_> = s.points.iter().map(|s| s.exact_coords().unwrap()).collect();
        assert_eq!(pts, vec![((-1).into(), 0.into()), (1.into(), 0.into())]);
        assert!(s.points.iter().all(|s| s.multiplicity == Some(1)));

        assert!(solve_pair(&p("x"), &p("x + 1")).unwrap().points.is_empty());
        assert!(matches!(solve_pair(&p("x*y"), &p("x^2")), Err(CoreError::CommonComponent)));
        assert!(matches!(solve_pair(&p("x + y"), &p("x^2 - y^2")), Err(CoreError::CommonComponent)));
    }

    #[test]
    fn tangency_and_irrational_points() {
        // y = x² touches y = 0 twice at the origin.
        let s = solve_pair(&p("y - x^2"), &p("y")).unwrap();
        assert_eq!(s.points.len(), 1);
        assert_eq!(s.points[0].multiplicity, Some(2));

        // x² = 2, y = x: two irrational points.
        let s = solve_pair(&p("x^2 - 2"), &p("y - x")).unwrap();
        assert_eq!(s.points.len(), 2);
        for pt in &s.points {
            assert!(pt.exact.is_none());
            assert!((pt.x * pt.x - 2.0).norm() < 1e-12 && (pt.y - pt.x).norm() < 1e-12);
        }
        assert!(!s.ambiguous);

        // Circle and hyperbola: x ± y = ±√3, ±1.
        let s = solve_pair(&p("x^2 + y^2 - 2"), &p("x*y - 1/2")).unwrap();
        assert_eq!(s.points.len(), 4);
        for pt in &s.points {
            assert!((pt.x * pt.x + pt.y * pt.y - 2.0).norm() < 1e-10);
            assert!((pt.x * pt.y - 0.5).norm() < 1e-10);
        }
    }
}
