use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::{BiPoly, Var};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::report::{ser_complex, GJson};
use crate::system::solve_pair;

/// `|H|` below which a numeric critical point counts as lying on `H = 0`.
pub const L0_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "ser_complex")]
    pub x: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub y: Complex64,
    pub exact: Option<[GJson; 2]>,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub value_exact: Option<GJson>,
    pub on_l0: bool,
}

/// Zeros of `∇H`, each with its critical value.
pub fn critical_points(h: &BiPoly) -> Result<Vec<CriticalPoint>> {
    let hx = h.partial_derivative(Var::X);
    let hy = h.partial_derivative(Var::Y);
    let sols = solve_pair(&hx, &hy).map_err(|e| match e {
        CoreError::CommonComponent => CoreError::CriticalSetNotFinite,
        e => e,
    })?;
    Ok(sols
        .points
        .into_iter()
        .map(|s| {
            let exact = s.exact_coords();
            let value_exact = exact.as_ref().map(|(x, y)| h.eval(x, y));
            let value = value_exact.as_ref().map(|v| v.to_complex()).unwrap_or_else(|| h.eval_complex(s.x, s.y));
            let on_l0 = match &value_exact {
                Some(v) => v.is_zero(),
                None => value.norm() < L0_TOL,
            };
            CriticalPoint { x: s.x, y: s.y, exact: s.exact, value, value_exact: value_exact.map(GJson), on_l0 }
        })
        .collect())
}

pub fn single_singularity_on_l0(points: &[CriticalPoint]) -> bool {
    points.iter().filter(|p| p.on_l0).count() == 1
}
