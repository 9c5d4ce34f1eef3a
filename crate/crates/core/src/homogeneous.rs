//! Splitting of binary forms into linear factors.

use num_complex::Complex64;

use crate::bipoly::{BiPoly, Var};
use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::roots::roots_clustered;

/// Projective direction `[β:α]`: the zero set of `α·x − β·y`.
#[derive(Clone, Debug)]
pub struct Direction {
    /// `(β, α)` when the direction is defined over ℚ(i), scaled so that
    /// `β = 1` or `(β, α) = (0, 1)`.
    pub exact: Option<(GaussianRational, GaussianRational)>,
    /// Numeric `(β, α)` normalized to `max(|β|, |α|) = 1`.
    pub numeric: (Complex64, Complex64),
}

impl Direction {
    pub fn exact(beta: GaussianRational, alpha: GaussianRational) -> Self {
        let numeric = normalize_numeric(beta.to_complex(), alpha.to_complex());
        Self { exact: Some((beta, alpha)), numeric }
    }

    pub fn numeric(beta: Complex64, alpha: Complex64) -> Self {
        Self { exact: None, numeric: normalize_numeric(beta, alpha) }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Projective distance `|β₁α₂ − β₂α₁|` of normalized representatives.
    pub fn distance(&self, beta: Complex64, alpha: Complex64) -> f64 {
        let (b2, a2) = normalize_numeric(beta, alpha);
        let (b1, a1) = self.numeric;
        (b1 * a2 - b2 * a1).norm()
    }
}

fn normalize_numeric(beta: Complex64, alpha: Complex64) -> (Complex64, Complex64) {
    let m = if beta.norm() >= alpha.norm() { beta } else { alpha };
    if m.norm() == 0.0 {
        return (beta, alpha);
    }
    (beta / m, alpha / m)
}

#[derive(Clone, Debug)]
pub struct LinearFactor {
    pub direction: Direction,
    pub multiplicity: usize,
}

/// `p = scalar · Π (α_i x − β_i y)^{n_i}`.
#[derive(Clone, Debug)]
pub struct HomogeneousFactorization {
    pub scalar: GaussianRational,
    pub factors: Vec<LinearFactor>,
}

impl HomogeneousFactorization {
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    /// Numeric value of the re-expanded product at `(x, y)`.
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = self.scalar.to_complex();
        for f in &self.factors {
            let (b, a) = match &f.direction.exact {
                Some((b, a)) => (b.to_complex(), a.to_complex()),
                // Numeric directions come from roots `y = r·x`; restore β = 1.
                None => {
                    let (b, a) = f.direction.numeric;
                    (Complex64::new(1.0, 0.0), a / b)
                }
            };
            acc *= (a * x - b * y).powu(f.multiplicity as u32);
        }
        acc
    }
}

/// Factors a nonzero binary form over ℂ. Directions are exact when the
/// corresponding root of `p(1, Y)` lies in ℚ(i).
pub fn factor_homogeneous(p: &BiPoly) -> Result<HomogeneousFactorization> {
    if p.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    if !p.is_homogeneous() {
        return Err(CoreError::NotHomogeneous);
    }
    let d = p.total_degree() as usize;
    let u = p.specialize(Var::X, &GaussianRational::one());
    let e = u.deg0();
    let mut factors = Vec::new();
    // p = lc(u)·x^(d-e)·Π (y − r x)^{n_r} and (y − r x) = −(r x − y).
    let mut scalar = u.lc();
    if e % 2 == 1 {
        scalar = -scalar;
    }
    if e > 0 {
        for r in roots_clustered(&u, crate::roots::DEFAULT_CLUSTER_TOL)? {
            let direction = match r.exact {
                Some(g) => Direction::exact(GaussianRational::one(), g),
                None => Direction::numeric(Complex64::new(1.0, 0.0), r.value),
            };
            factors.push(LinearFactor { direction, multiplicity: r.multiplicity });
        }
    }
    if d > e {
        factors.push(LinearFactor {
            direction: Direction::exact(GaussianRational::zero(), GaussianRational::one()),
            multiplicity: d - e,
        });
    }
    Ok(HomogeneousFactorization { scalar, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = BiPoly;

    #[test]
    fn quartic_examples() {
        let x = P::x();
        let y = P::y();
        let f = factor_homogeneous(&(&x.pow(4) + &y.pow(4))).unwrap();
        assert_eq!(f.factors.len(), 4);
        assert!(f.factors.iter().all(|l| l.multiplicity == 1 && !l.direction.is_exact()));

        let f = factor_homogeneous(&x.pow(4).scale(&GaussianRational::from_ratio(1, 2))).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].multiplicity, 4);
        assert_eq!(f.factors[0].direction.exact, Some((GaussianRational::zero(), GaussianRational::one())));
        assert_eq!(f.scalar, GaussianRational::from_ratio(1, 2));

        let f = factor_homogeneous(&(&x.pow(2) * &y)).unwrap();
        let mut m: Vec<_> = f
            .factors
            .iter()
            .map(|l| (l.direction.exact.clone().unwrap(), l.multiplicity))
            .collect();
        m.sort_by_key(|(_, k)| *k);
        // y: α=0, β=1 → -(0·x − 1·y); x: α=1, β=0.
        assert_eq!(m[0], ((GaussianRational::one(), GaussianRational::zero()), 1));
        assert_eq!(m[1], ((GaussianRational::zero(), GaussianRational::one()), 2));
    }

    #[test]
    fn circle_directions() {
        let x = P::x();
        let y = P::y();
        let f = factor_homogeneous(&(&x.pow(2) + &y.pow(2))).unwrap();
        let alphas: Vec<_> = f.factors.iter().map(|l| l.direction.exact.clone().unwrap().1).collect();
        assert!(alphas.contains(&GaussianRational::i()));
        assert!(alphas.contains(&-GaussianRational::i()));
        assert!((f.eval(Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.2))
            - (&x.pow(2) + &y.pow(2)).eval_complex(Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.2)))
        .norm()
            < 1e-14);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let p = &P::x() + &P::y().pow(2);
        assert!(matches!(factor_homogeneous(&p), Err(CoreError::NotHomogeneous)));
    }
}
