//! Points at infinity of the level curves `H = h`, local charts there, and
//! the Puiseux branches and induced one-dimensional dynamics.

mod dynamics;
pub mod polygon;
pub mod puiseux;
pub mod series;

use rayon::prelude::*;
use serde::Serialize;

use crate::algext::AlgElem;
use crate::bipoly::BiPoly;
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::homogeneous::{factor_homogeneous, Direction};
use crate::ratfn::RatFn;

pub use dynamics::{branch_dynamics, classify, omega_order, BranchDynamics, FlowClass, LeadingTerm, GENERIC_H};
pub use polygon::{newton_polygon, newton_principal, Edge, NewtonPolygon};
pub use puiseux::{puiseux_branches, PuiseuxBranch, DEFAULT_ORDER, MAX_ORDER};

#[derive(Clone, Debug, Serialize)]
pub struct InfinityPoint {
    pub index: usize,
    #[serde(serialize_with = "ser_direction")]
    pub direction: Direction,
    pub multiplicity: usize,
    pub chart: Option<Chart>,
    pub branches: Vec<PuiseuxBranch>,
}

fn ser_direction<S: serde::Serializer>(d: &Direction, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Direction", 3)?;
    st.serialize_field("exact", &d.exact.as_ref().map(|(b, a)| [crate::report::GJson(b.clone()), crate::report::GJson(a.clone())]))?;
    st.serialize_field("numeric", &[crate::report::CJson(d.numeric.0), crate::report::CJson(d.numeric.1)])?;
    st.end()
}

/// 2×2 matrix over ℚ(i), row major.
pub type Mat2 = [[GaussianRational; 2]; 2];

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChartFrame {
    /// `u` is the linear factor of the point with this index.
    Complementary { partner: usize },
    Default,
}

/// Chart `X = 1/u`, `Y = v/u` in linear coordinates `(u, v) = B·(x, y)`
/// with `det B = 1`, chosen so that the point sits at `X = Y = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Chart {
    #[serde(serialize_with = "crate::report::ser_mat2")]
    pub to_chart: Mat2,
    #[serde(serialize_with = "crate::report::ser_mat2")]
    pub from_chart: Mat2,
    pub frame: ChartFrame,
    /// `H` in the coordinates `(u, v)`.
    #[serde(serialize_with = "ser_bipoly_uv")]
    pub hamiltonian: BiPoly,
    /// `X^{n+1}·(H(1/X, Y/X) − h)` in the coordinates above.
    #[serde(serialize_with = "ser_chart_poly")]
    pub poly: BiPoly<RatFn>,
}

fn ser_bipoly_uv<S: serde::Serializer>(p: &BiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::parser::format_poly_with_vars(p, ["u", "v"]))
}

fn ser_chart_poly<S: serde::Serializer>(p: &BiPoly<RatFn>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_chart_poly(p))
}

/// Text form of a chart polynomial, coefficients in `h` parenthesized.
pub fn format_chart_poly(p: &BiPoly<RatFn>) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|(&(k, l), _)| (k + l, std::cmp::Reverse(k)));
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(&(k, l), c)| {
            let mut mono = Vec::new();
            if k > 0 {
                mono.push(if k == 1 { "X".to_string() } else { format!("X^{k}") });
            }
            if l > 0 {
                mono.push(if l == 1 { "Y".to_string() } else { format!("Y^{l}") });
            }
            let cs = c.to_string();
            match (mono.is_empty(), cs.as_str()) {
                (true, _) => format!("({cs})"),
                (false, "1") => mono.join("*"),
                _ => format!("({cs})*{}", mono.join("*")),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The linear form `α·x − β·y` vanishing on the direction.
fn linear_form(d: &(GaussianRational, GaussianRational)) -> [GaussianRational; 2] {
    [d.1.clone(), -d.0.clone()]
}

fn inverse(m: &Mat2) -> Result<Mat2> {
    let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
    let di = det.inv()?;
    Ok([
        [m[1][1].clone() * di.clone(), -(m[0][1].clone() * di.clone())],
        [-(m[1][0].clone() * di.clone()), m[0][0].clone() * di],
    ])
}

/// Points at infinity: the linear factors of the top homogeneous part,
/// ordered as returned by the factorization (exact first by root value,
/// the `x` factor last).
pub fn infinity_points(h: &BiPoly) -> Result<Vec<InfinityPoint>> {
    if h.is_constant() {
        return Err(CoreError::InvalidOption("H is constant".into()));
    }
    let top = h.homogeneous_part(h.total_degree());
    let fac = factor_homogeneous(&top)?;
    Ok(fac
        .factors
        .into_iter()
        .enumerate()
        .map(|(index, f)| InfinityPoint { index, direction: f.direction, multiplicity: f.multiplicity, chart: None, branches: Vec::new() })
        .collect())
}

/// Chart at `points[index]`. The coordinate `v` is the point's own linear
/// factor; `u` is the factor of the next point with an exact direction
/// when there is one (so both eigen-directions of a quadratic part stay
/// coordinate axes), and a fixed completion otherwise.
pub fn chart_at(h: &BiPoly, points: &[InfinityPoint], index: usize) -> Result<Chart> {
    let point = &points[index];
    let d = point.direction.exact.as_ref().ok_or(CoreError::ExactChartUnavailable)?;
    let v_row = linear_form(d);
    let partner = (1..points.len())
        .map(|j| (index + j) % points.len())
        .find(|&j| points[j].direction.exact.is_some());
    let (to_chart, frame) = match partner {
        Some(j) => {
            let u_row = linear_form(points[j].direction.exact.as_ref().unwrap());
            let det = u_row[0].clone() * v_row[1].clone() - u_row[1].clone() * v_row[0].clone();
            let c = det.inv()?;
            ([[u_row[0].clone() * c.clone(), u_row[1].clone() * c], v_row], ChartFrame::Complementary { partner: j })
        }
        None => {
            let (beta, alpha) = d;
            if beta.is_zero() {
                // (0, 1): u = −y, v = x.
                let z = GaussianRational::zero;
                ([[z(), -GaussianRational::one()], [GaussianRational::one(), z()]], ChartFrame::Default)
            } else {
                // u = x/β, v = βy − αx.
                ([[beta.inv()?, GaussianRational::zero()], [-alpha.clone(), beta.clone()]], ChartFrame::Default)
            }
        }
    };
    let from_chart = inverse(&to_chart)?;
    let [[a, b], [c, dd]] = &from_chart;
    let ham = h.linear_substitute(a, b, c, dd);
    let deg = h.total_degree();
    let mut poly = BiPoly::<RatFn>::zero();
    for (&(i, k), coef) in ham.terms() {
        poly.add_term((deg - i - k, k), RatFn::constant(coef.clone()));
    }
    poly.add_term((deg, 0), -RatFn::h());
    Ok(Chart { to_chart, from_chart, frame, hamiltonian: ham, poly })
}

impl Chart {
    pub fn poly_alg(&self) -> BiPoly<AlgElem> {
        self.poly.map(|c| AlgElem::Base(c.clone()))
    }
}

/// Complete analysis of one point.
#[derive(Clone, Debug, Serialize)]
pub struct PointAnalysis {
    pub point: InfinityPoint,
    pub dynamics: Vec<BranchDynamics>,
    /// Truncation order finally used.
    pub order: Option<usize>,
    pub error: Option<String>,
}

impl PointAnalysis {
    /// Number of distinct branches (the count of conjugacy classes).
    pub fn branch_count(&self) -> usize {
        self.point.branches.iter().map(|b| b.field_degree()).sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityAnalysis {
    /// `n + 1`.
    pub degree: u32,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub generic_h: num_complex::Complex64,
    pub points: Vec<PointAnalysis>,
}

impl InfinityAnalysis {
    pub fn multiplicity_sum(&self) -> usize {
        self.points.iter().map(|p| p.point.multiplicity).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.point.multiplicity).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.points.iter().all(|p| p.error.is_none())
    }
}

/// Charts, branches and dynamics at every point at infinity. Points are
/// independent and processed in parallel; failures are recorded per point.
pub fn analyze_infinity(h: &BiPoly, order: usize) -> Result<InfinityAnalysis> {
    if order == 0 || order > MAX_ORDER {
        return Err(CoreError::InvalidOption(format!("truncation order must lie in 1..={MAX_ORDER}")));
    }
    let points = infinity_points(h)?;
    let n = h.total_degree() as usize - 1;
    let pool = crate::flow::thread_pool();
    let analyzed: Vec<PointAnalysis> = pool.install(|| {
        points
            .par_iter()
            .map(|pt| {
                let mut pt = pt.clone();
                let chart = match chart_at(h, &points, pt.index) {
                    Ok(c) => c,
                    Err(e) => return PointAnalysis { point: pt, dynamics: Vec::new(), order: None, error: Some(e.to_string()) },
                };
                let f = chart.poly_alg();
                pt.chart = Some(chart);
                let mut m = order;
                loop {
                    match analyze_point(&f, n, pt.index, m) {
                        Ok((branches, dynamics)) => {
                            pt.branches = branches;
                            return PointAnalysis { point: pt, dynamics, order: Some(m), error: None };
                        }
                        Err(CoreError::TruncationInsufficient(_)) if m < MAX_ORDER => m = (2 * m).min(MAX_ORDER),
                        Err(e) => return PointAnalysis { point: pt, dynamics: Vec::new(), order: Some(m), error: Some(e.to_string()) },
                    }
                }
            })
            .collect()
    });
    Ok(InfinityAnalysis { degree: h.total_degree(), generic_h: GENERIC_H, points: analyzed })
}

fn analyze_point(f: &BiPoly<AlgElem>, n: usize, point: usize, order: usize) -> Result<(Vec<PuiseuxBranch>, Vec<BranchDynamics>)> {
    let found = puiseux::puiseux_branches_with(f, order, |b| {
        let lead = dynamics::leading_term(f, n, b)?;
        Ok((b.clone(), lead))
    })?;
    let mut branches = Vec::new();
    let mut dyns = Vec::new();
    for (i, (b, lead)) in found.into_iter().enumerate() {
        dyns.extend(branch_dynamics(point, i, &b, &lead)?);
        branches.push(b);
    }
    Ok((branches, dyns))
}
