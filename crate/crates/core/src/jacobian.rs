//! Polynomial pairs `(f, g)` with constant Jacobian determinant and the
//! Hamiltonian `(f² + g²)/2` they induce.

use serde::Serialize;

use crate::bipoly::{BiPoly, Var};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::parser::format_poly;
use crate::report::{ser_gauss, ser_poly};
use crate::system::{solve_pair, Solution};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum JacobianDet {
    Constant {
        #[serde(serialize_with = "ser_gauss")]
        value: GaussianRational,
    },
    Nonconstant {
        #[serde(serialize_with = "ser_poly")]
        witness: BiPoly,
    },
}

/// `f_x·g_y − f_y·g_x`.
pub fn jacobian_poly(f: &BiPoly, g: &BiPoly) -> BiPoly {
    let fx = f.partial_derivative(Var::X);
    let fy = f.partial_derivative(Var::Y);
    let gx = g.partial_derivative(Var::X);
    let gy = g.partial_derivative(Var::Y);
    &(&fx * &gy) - &(&fy * &gx)
}

pub fn jacobian_det(f: &BiPoly, g: &BiPoly) -> JacobianDet {
    let j = jacobian_poly(f, g);
    if j.is_constant() {
        JacobianDet::Constant { value: j.coeff(0, 0) }
    } else {
        JacobianDet::Nonconstant { witness: j }
    }
}

/// A pair whose Jacobian determinant is a nonzero constant.
#[derive(Clone, Debug, Serialize)]
pub struct PolyPair {
    #[serde(serialize_with = "ser_poly")]
    pub f: BiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub g: BiPoly,
    #[serde(serialize_with = "ser_gauss")]
    pub jac: GaussianRational,
}

impl PolyPair {
    pub fn new(f: BiPoly, g: BiPoly) -> Result<Self> {
        match jacobian_det(&f, &g) {
            JacobianDet::Constant { value } if !value.is_zero() => Ok(Self { f, g, jac: value }),
            JacobianDet::Constant { .. } => Err(CoreError::NonconstantJacobian("determinant is zero".into())),
            JacobianDet::Nonconstant { witness } => Err(CoreError::NonconstantJacobian(format_poly(&witness))),
        }
    }

    /// `(f² + g²)/2`. In the coordinates `(f, g)` its flow is a rotation
    /// with angular speed `jac`, so every period is `2π/jac`.
    pub fn induced_hamiltonian(&self) -> BiPoly {
        let s = &(&self.f * &self.f) + &(&self.g * &self.g);
        s.scale(&GaussianRational::from_ratio(1, 2))
    }

    /// The factor `c` with period `2π/c`, when `c ≠ 1`.
    pub fn rescale(&self) -> Option<GaussianRational> {
        (!self.jac.is_one()).then(|| self.jac.clone())
    }
}

/// `(f² + g²)/2`, rejecting pairs whose Jacobian is not a nonzero constant.
pub fn induced_hamiltonian(f: &BiPoly, g: &BiPoly) -> Result<BiPoly> {
    Ok(PolyPair::new(f.clone(), g.clone())?.induced_hamiltonian())
}

#[derive(Clone, Debug, Serialize)]
pub struct CommonZeros {
    pub points: Vec<Solution>,
    pub ambiguous: bool,
}

pub fn common_zeros(f: &BiPoly, g: &BiPoly) -> Result<CommonZeros> {
    let s = solve_pair(f, g)?;
    Ok(CommonZeros { points: s.points, ambiguous: s.ambiguous })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CriterionStatus {
    Met,
    Violated { count: usize },
    Undetermined,
}

impl CriterionStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CriterionStatus::Met => "met",
            CriterionStatus::Violated { .. } => "violated",
            CriterionStatus::Undetermined => "undetermined",
        }
    }
}

/// Met iff `f = 0` and `g = 0` meet in exactly one point of ℂ², which for a
/// Jacobian pair is equivalent to the induced map being a global
/// homeomorphism.
pub fn intersection_criterion(pair: &PolyPair) -> Result<(CriterionStatus, CommonZeros)> {
    let zeros = common_zeros(&pair.f, &pair.g)?;
    let status = if zeros.ambiguous {
        CriterionStatus::Undetermined
    } else if zeros.points.len() == 1 {
        CriterionStatus::Met
    } else {
        CriterionStatus::Violated { count: zeros.points.len() }
    };
    Ok((status, zeros))
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    #[serde(serialize_with = "ser_poly")]
    pub f: BiPoly,
    #[serde(serialize_with = "ser_poly")]
    pub g: BiPoly,
    pub jacobian: JacobianDet,
    pub hamiltonian: Option<String>,
    pub rescale: Option<crate::report::GJson>,
    pub common_zeros: Option<CommonZeros>,
    pub criterion: Option<CriterionStatus>,
    pub note: String,
    pub summary: String,
}

const CRITERION_NOTE: &str = "criterion met ⇔ the map (x, y) ↦ (f, g) is a global homeomorphism of C²";

/// Everything about a pair. Fails only when `f` and `g` share a component.
pub fn jacobian_report(f: &BiPoly, g: &BiPoly) -> Result<JacobianReport> {
    let jacobian = jacobian_det(f, g);
    let mut report = JacobianReport {
        f: f.clone(),
        g: g.clone(),
        jacobian: jacobian.clone(),
        hamiltonian: None,
        rescale: None,
        common_zeros: None,
        criterion: None,
        note: CRITERION_NOTE.into(),
        summary: String::new(),
    };
    match PolyPair::new(f.clone(), g.clone()) {
        Ok(pair) => {
            let (status, zeros) = intersection_criterion(&pair)?;
            report.summary =
                format!("Jacobian constant {}; common zeros: {}; single-intersection criterion: {}", pair.jac, zeros.points.len(), status.label());
            report.hamiltonian = Some(format_poly(&pair.induced_hamiltonian()));
            report.rescale = pair.rescale().map(crate::report::GJson);
            report.common_zeros = Some(zeros);
            report.criterion = Some(status);
        }
        Err(_) => {
            report.summary = match &jacobian {
                JacobianDet::Constant { .. } => "Jacobian determinant is zero; not a Jacobian pair".into(),
                JacobianDet::Nonconstant { witness } => format!("Jacobian not constant: {}; not a Jacobian pair", format_poly(witness)),
            };
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(jacobian_det(&p("x"), &p("y + x^2")), JacobianDet::Constant { value: 1.into() });
        assert_eq!(jacobian_det(&p("x + y^2"), &p("y")), JacobianDet::Constant { value: 1.into() });
        assert_eq!(jacobian_det(&p("x^2"), &p("y")), JacobianDet::Nonconstant { witness: p("2*x") });
    }

    #[test]
    fn induced() {
        assert_eq!(induced_hamiltonian(&p("x"), &p("y + x^2")).unwrap(), p("1/2*(x^2 + (y + x^2)^2)"));
        assert_eq!(induced_hamiltonian(&p("x"), &p("y")).unwrap(), p("1/2*x^2 + 1/2*y^2"));
        assert_eq!(induced_hamiltonian(&p("x + y^2"), &p("y")).unwrap(), p("1/2*((x + y^2)^2 + y^2)"));
        assert!(matches!(induced_hamiltonian(&p("x^2"), &p("y")), Err(CoreError::NonconstantJacobian(_))));
        let pair = PolyPair::new(p("2*x"), p("y + x^3")).unwrap();
        assert_eq!(pair.rescale(), Some(2.into()));
    }

    #[test]
    fn criterion_reports() {
        let r = jacobian_report(&p("x"), &p("y + x^2")).unwrap();
        assert_eq!(r.summary, "Jacobian constant 1; common zeros: 1; single-intersection criterion: met");
        let r = jacobian_report(&p("x^2"), &p("y")).unwrap();
        assert!(r.criterion.is_none());
        assert_eq!(common_zeros(&p("x^2 - 1"), &p("y")).unwrap().points.len(), 2);
        assert!(common_zeros(&p("x"), &p("x + 1")).unwrap().points.is_empty());
        // A composition of shears stays a Jacobian pair meeting once.
        let f = p("x + (y + x^2)^2");
        let g = p("y + x^2");
        let pair = PolyPair::new(f, g).unwrap();
        assert!(matches!(intersection_criterion(&pair).unwrap().0, CriterionStatus::Met));
    }
}
