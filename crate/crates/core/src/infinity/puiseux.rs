//! Newton–Puiseux expansion with coefficients in ℚ(i)(h) and its algebraic
//! extensions.
//!
//! A branch is parameterized as `X = a·t^p`, `Y = t^q·ρ(t)` with `ρ(0) ≠ 0`.
//! For an edge with primitive normal `(p, q)` and a root `τ` of its edge
//! polynomial, `a = τ^u` and `ρ(0) = τ^v` with `p·v − q·u = 1`, so the
//! classical leading coefficient satisfies `c₀^p = ρ(0)^p / a^q = τ`. This
//! keeps every coefficient in the field generated by the roots `τ`.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::polygon::{bezout, edge_polynomial, newton_polygon, Edge};
use super::series::{self, Series};
use crate::algext::{with_generic_root, AlgElem, Extension};
use crate::bipoly::BiPoly;
use crate::error::{CoreError, Result};
use crate::field::{ArithError, Field};
use crate::gauss::GaussianRational;
use crate::roots::{roots_clustered, DEFAULT_CLUSTER_TOL};
use crate::unipoly::UniPoly;

pub const DEFAULT_ORDER: usize = 16;
pub const MAX_ORDER: usize = 64;
pub const MAX_DEPTH: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct PuiseuxBranch {
    pub p: usize,
    pub q: usize,
    #[serde(serialize_with = "ser_alg")]
    pub x_coeff: AlgElem,
    /// `ρ_0, …, ρ_M`.
    #[serde(serialize_with = "ser_alg_vec")]
    pub coeffs: Vec<AlgElem>,
    #[serde(serialize_with = "crate::report::ser_gauss")]
    pub shift: GaussianRational,
    pub conjugacy_class_size: usize,
    /// Tower holding the coefficients, described by its defining
    /// polynomials; `None` for ℚ(i)(h).
    #[serde(serialize_with = "ser_field")]
    pub field: Option<Arc<Extension>>,
}

fn ser_alg<S: Serializer>(a: &AlgElem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&a.to_string())
}

fn ser_alg_vec<S: Serializer>(v: &[AlgElem], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|a| a.to_string()))
}

fn ser_field<S: Serializer>(f: &Option<Arc<Extension>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(e) => s.serialize_str(&e.describe()),
        None => s.serialize_none(),
    }
}

impl PuiseuxBranch {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn c0(&self) -> &AlgElem {
        &self.coeffs[0]
    }

    /// `c₀^p` of the classical expansion `Y = c₀ X^{q/p} + …`.
    pub fn c0_pow_p(&self) -> Result<AlgElem> {
        Ok(self.c0().pow(self.p as u32) * self.x_coeff.powi(-(self.q as i64))?)
    }

    /// Number of conjugate branches sharing these symbolic coefficients
    /// (the degree of the coefficient field).
    pub fn field_degree(&self) -> usize {
        self.field.as_ref().map_or(1, |e| e.total_degree())
    }

    /// `Y(t)` modulo `t^len`.
    pub fn y_series(&self, len: usize) -> Series {
        series::shifted(&self.coeffs, self.q, len)
    }

    /// Coefficients of `F(X(t), Y(t))` through `t^through`.
    pub fn residual(&self, f: &BiPoly<AlgElem>, through: usize) -> Series {
        let len = through + 1;
        series::compose_branch(f, &self.x_coeff, self.p, &self.y_series(len), len)
    }

    /// Largest `h`-degree among the coefficients `ρ_i`, when decidable.
    pub fn max_h_degree(&self) -> Option<usize> {
        if !self.x_coeff.is_h_free() {
            return None;
        }
        self.coeffs.iter().map(|c| c.h_degree()).try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// A branch of the current curve: `X = a·t^p`, `Y = t^q·ρ(t)`.
struct Local {
    a: AlgElem,
    p: usize,
    q: usize,
    rho: Series,
}

type Finish<'a, T> = dyn FnMut(Local, Option<&Arc<Extension>>) -> Result<Vec<T>> + 'a;

/// Branches of `f = 0` through the origin with `X → 0`, truncated at order
/// `order`. `f` must satisfy `f(0, 0) = 0` and `f(0, Y) ≢ 0`.
pub fn puiseux_branches(f: &BiPoly<AlgElem>, order: usize) -> Result<Vec<PuiseuxBranch>> {
    puiseux_branches_with(f, order, |b| Ok(b.clone()))
}

/// As [`puiseux_branches`], running `finish` on each branch while its
/// coefficient tower is live, so that zero divisors met by `finish` split
/// the tower like those met during the expansion.
pub fn puiseux_branches_with<T>(
    f: &BiPoly<AlgElem>,
    order: usize,
    mut finish: impl FnMut(&PuiseuxBranch) -> Result<T>,
) -> Result<Vec<T>> {
    check_hypotheses(f)?;
    let mut top = |b: Local, field: Option<&Arc<Extension>>| {
        let br = PuiseuxBranch {
            p: b.p,
            q: b.q,
            x_coeff: b.a,
            coeffs: b.rho,
            shift: GaussianRational::zero(),
            conjugacy_class_size: b.p,
            field: field.cloned(),
        };
        Ok(vec![finish(&br)?])
    };
    solve(f, None, order, 0, &mut top)
}

pub fn check_hypotheses(f: &BiPoly<AlgElem>) -> Result<()> {
    if !f.coeff(0, 0).is_zero() {
        return Err(CoreError::PolygonHypothesis("F(0,0) = 0 does not hold".into()));
    }
    if f.terms().all(|(&(k, _), _)| k > 0) {
        return Err(CoreError::PolygonHypothesis("F(0,Y) is identically zero".into()));
    }
    Ok(())
}

/// Drops coefficients that are zero in the current tower, surfacing zero
/// divisors.
fn clean(f: &BiPoly<AlgElem>) -> Result<BiPoly<AlgElem>> {
    let mut out = BiPoly::zero();
    for (&k, c) in f.terms() {
        if !c.zero_test()? {
            out.add_term(k, c.clone());
        }
    }
    Ok(out)
}

fn solve<T>(f: &BiPoly<AlgElem>, field: Option<&Arc<Extension>>, order: usize, depth: usize, finish: &mut Finish<'_, T>) -> Result<Vec<T>> {
    if depth > MAX_DEPTH {
        return Err(CoreError::RecursionDepth(MAX_DEPTH));
    }
    let mut f = clean(f)?;
    let mut out = Vec::new();
    let lmin = f.terms().map(|(&(_, l), _)| l).min().unwrap_or(0);
    if lmin > 0 {
        // `Y = 0` is itself a component.
        if lmin > 1 {
            return Err(CoreError::DegenerateEdge("multiple component".into()));
        }
        out.extend(finish(Local { a: AlgElem::one(), p: 1, q: 1, rho: series::zeros(order + 1) }, field)?);
        f = BiPoly::from_terms(f.terms().map(|(&(k, l), c)| ((k, l - 1), c.clone())));
    }
    let polygon = newton_polygon(&f);
    for edge in &polygon.edges {
        let g = edge_polynomial(&f, edge);
        for (factor, mult) in g.squarefree()? {
            let found = for_each_root(field, factor, |tau, top| {
                let (u, v) = bezout(edge.p, edge.q);
                let alpha = tau.powi(u)?;
                let beta = tau.powi(v)?;
                let f1 = substitute_edge(&f, &alpha, &beta, edge);
                if mult == 1 {
                    let z = implicit_series(&f1, order)?;
                    let mut rho = z;
                    rho[0] = beta;
                    finish(Local { a: alpha, p: edge.p as usize, q: edge.q as usize, rho }, top)
                } else {
                    let (p, q) = (edge.p as usize, edge.q as usize);
                    let mut lift = |b: Local, t: Option<&Arc<Extension>>| finish(lift_branch(b, &alpha, &beta, p, q, order), t);
                    solve(&f1, top, order, depth + 1, &mut lift)
                }
            })?;
            out.extend(found.into_iter().flatten());
        }
    }
    Ok(out)
}

/// Runs `body` once per root of the squarefree `factor`: roots in ℚ(i) are
/// found exactly, the rest become a generic root of an extension.
fn for_each_root<T>(
    field: Option<&Arc<Extension>>,
    factor: UniPoly<AlgElem>,
    mut body: impl FnMut(AlgElem, Option<&Arc<Extension>>) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut rest = factor;
    let constant: Option<Vec<GaussianRational>> = rest.coeffs().iter().map(|c| c.as_constant()).collect();
    if let (Some(cs), true) = (constant, rest.deg0() > 1) {
        let u = UniPoly::new(cs);
        for r in roots_clustered(&u, DEFAULT_CLUSTER_TOL)? {
            if let Some(g) = r.exact {
                let lin = UniPoly::new(vec![AlgElem::from(-g.clone()), AlgElem::one()]);
                rest = rest.exact_div(&lin)?;
                out.push(body(AlgElem::from(g), field)?);
            }
        }
    }
    out.extend(with_generic_root(field, rest, |root, top, _| body(root, top))?);
    Ok(out)
}

/// `f(α s^p, s^q (β + Z)) / s^N` as a polynomial in `(s, Z)`.
fn substitute_edge(f: &BiPoly<AlgElem>, alpha: &AlgElem, beta: &AlgElem, edge: &Edge) -> BiPoly<AlgElem> {
    let mut out = BiPoly::zero();
    for (&(k, l), b) in f.terms() {
        let e = edge.p * k + edge.q * l - edge.n;
        let c = b.clone() * alpha.pow(k);
        let mut binom = AlgElem::one();
        for r in 0..=l {
            out.add_term((e, r), c.clone() * binom.clone() * beta.pow(l - r));
            binom = binom * AlgElem::from_i64((l - r) as i64) * AlgElem::from_i64(r as i64 + 1).inv().expect("nonzero");
        }
    }
    out
}

/// `Z(s) = Σ_{j≥1} z_j s^j` with `f(s, Z(s)) = 0`, given a simple root at the
/// origin. Entry 0 of the result is zero.
fn implicit_series(f: &BiPoly<AlgElem>, order: usize) -> Result<Series> {
    let c = f.coeff(0, 1);
    let cinv = c.inv().map_err(|e| match e {
        ArithError::DivisionByZero => CoreError::DegenerateEdge("vanishing derivative at a simple root".into()),
        other => other.into(),
    })?;
    let mut z = series::zeros(order + 1);
    let one = AlgElem::one();
    for j in 1..=order {
        let val = series::compose_branch(f, &one, 1, &z[..j], j + 1);
        z[j] = -(val[j].clone() * cinv.clone());
    }
    Ok(z)
}

/// Expresses a branch of `f1(s, Z)` as a branch of the curve before the
/// edge substitution `X = α s^p`, `Y = s^q (β + Z)`.
fn lift_branch(b: Local, alpha: &AlgElem, beta: &AlgElem, p: usize, q: usize, order: usize) -> Local {
    let len = order + 1;
    let mut inner = series::shifted(&b.rho, b.q, len);
    inner[0] = inner[0].clone() + beta.clone();
    let scale = b.a.pow(q as u32);
    Local {
        a: alpha.clone() * b.a.pow(p as u32),
        p: p * b.p,
        q: q * b.p,
        rho: inner.into_iter().map(|c| c * scale.clone()).collect(),
    }
}
