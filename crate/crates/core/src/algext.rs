//! Towers of simple algebraic extensions over ℚ(i)(h).
//!
//! An extension `K[t]/(m)` is created from a squarefree monic `m` that is
//! not known to be irreducible. Arithmetic proceeds as if `m` were
//! irreducible; when an inversion meets a zero divisor the error carries a
//! proper factor of `m` and the caller splits the computation (dynamic
//! evaluation).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::CoreError;
use crate::field::{ArithError, Field};
use crate::gauss::GaussianRational;
use crate::ratfn::RatFn;
use crate::roots::aberth;
use crate::unipoly::UniPoly;

static NEXT_EXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct Extension {
    id: u64,
    level: usize,
    parent: Option<Arc<Extension>>,
    /// Monic defining polynomial with coefficients in the parent field.
    modulus: UniPoly<AlgElem>,
}

impl Extension {
    pub fn new(parent: Option<Arc<Extension>>, modulus: UniPoly<AlgElem>) -> Arc<Self> {
        let level = parent.as_ref().map_or(0, |p| p.level) + 1;
        Arc::new(Self {
            id: NEXT_EXT_ID.fetch_add(1, Ordering::Relaxed),
            level,
            parent,
            modulus,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg0()
    }

    pub fn parent(&self) -> Option<&Arc<Extension>> {
        self.parent.as_ref()
    }

    pub fn modulus(&self) -> &UniPoly<AlgElem> {
        &self.modulus
    }

    /// The generator `t` as an element.
    pub fn generator(self: &Arc<Self>) -> AlgElem {
        AlgElem::normalize(self, vec![AlgElem::zero(), AlgElem::one()])
    }

    /// Product of the degrees along the tower.
    pub fn total_degree(&self) -> usize {
        self.degree() * self.parent.as_ref().map_or(1, |p| p.total_degree())
    }

    /// True when no defining polynomial in the tower involves `h`.
    pub fn is_h_free(&self) -> bool {
        self.modulus.coeffs().iter().all(|c| c.is_h_free())
            && self.parent.as_ref().is_none_or(|p| p.is_h_free())
    }

    pub fn describe(&self) -> String {
        let mut s = match &self.parent {
            Some(p) => format!("{}; ", p.describe()),
            None => String::new(),
        };
        s.push_str(&format!("t{} root of {}", self.level, fmt_poly(&self.modulus, &format!("T{}", self.level))));
        s
    }
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extension#{}({})", self.id, self.describe())
    }
}

/// Element of ℚ(i)(h) or of an extension tower over it.
#[derive(Clone)]
pub enum AlgElem {
    Base(RatFn),
    /// Coefficients in the parent field of `t^0, t^1, …`, fewer than the
    /// extension degree, length at least two after normalization.
    Ext(Arc<Extension>, Vec<AlgElem>),
}

impl AlgElem {
    pub fn h() -> Self {
        AlgElem::Base(RatFn::h())
    }

    pub fn level(&self) -> usize {
        match self {
            AlgElem::Base(_) => 0,
            AlgElem::Ext(e, _) => e.level,
        }
    }

    pub fn extension(&self) -> Option<&Arc<Extension>> {
        match self {
            AlgElem::Base(_) => None,
            AlgElem::Ext(e, _) => Some(e),
        }
    }

    pub fn as_base(&self) -> Option<&RatFn> {
        match self {
            AlgElem::Base(r) => Some(r),
            AlgElem::Ext(..) => None,
        }
    }

    /// Representation in `ext`, where `self` lives in `ext` or below.
    fn coeffs_in(&self, ext: &Arc<Extension>) -> Vec<AlgElem> {
        match self {
            AlgElem::Ext(e, v) if e.id == ext.id => v.clone(),
            other => {
                debug_assert!(other.level() < ext.level, "mixing unrelated extensions");
                vec![other.clone()]
            }
        }
    }

    fn normalize(ext: &Arc<Extension>, mut v: Vec<AlgElem>) -> AlgElem {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        match v.len() {
            0 => AlgElem::zero(),
            1 => v.pop().unwrap(),
            _ => AlgElem::Ext(ext.clone(), v),
        }
    }

    fn top_ext(a: &AlgElem, b: &AlgElem) -> Option<Arc<Extension>> {
        match (a, b) {
            (AlgElem::Base(_), AlgElem::Base(_)) => None,
            (AlgElem::Ext(e, _), AlgElem::Base(_)) | (AlgElem::Base(_), AlgElem::Ext(e, _)) => Some(e.clone()),
            (AlgElem::Ext(e1, _), AlgElem::Ext(e2, _)) => {
                if e1.level >= e2.level {
                    Some(e1.clone())
                } else {
                    Some(e2.clone())
                }
            }
        }
    }

    fn reduce(ext: &Arc<Extension>, mut v: Vec<AlgElem>) -> AlgElem {
        let m = ext.modulus.coeffs();
        let d = m.len() - 1;
        while v.len() > d {
            let c = v.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let base = v.len() - d;
            for (j, mj) in m.iter().take(d).enumerate() {
                v[base + j] = v[base + j].clone() - c.clone() * mj.clone();
            }
        }
        AlgElem::normalize(ext, v)
    }

    /// Zero test that detects zero divisors: `Ok(true)` for zero,
    /// `Ok(false)` for a unit, and a [`ArithError::ZeroDivisor`] otherwise.
    pub fn zero_test(&self) -> Result<bool, ArithError> {
        if self.is_zero() {
            return Ok(true);
        }
        match self {
            AlgElem::Base(_) => Ok(false),
            AlgElem::Ext(..) => self.inv().map(|_| false),
        }
    }

    /// True when `h` occurs neither in the element nor in its tower.
    pub fn is_h_free(&self) -> bool {
        match self {
            AlgElem::Base(r) => r.is_constant(),
            AlgElem::Ext(e, v) => e.is_h_free() && v.iter().all(|c| c.is_h_free()),
        }
    }

    /// The value in ℚ(i) when the element is an `h`-free base element.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.as_base().and_then(|r| r.as_constant())
    }

    /// Degree in `h` when the element is a polynomial in `h` with
    /// coefficients in an `h`-free tower. `None` when that is not decidable.
    pub fn h_degree(&self) -> Option<usize> {
        match self {
            AlgElem::Base(r) => r.poly_degree(),
            AlgElem::Ext(e, v) => {
                if !e.is_h_free() {
                    return None;
                }
                v.iter().map(|c| c.h_degree()).try_fold(0, |acc, d| d.map(|d| acc.max(d)))
            }
        }
    }

    /// Numeric value under an embedding of the tower (h-free elements only).
    pub fn eval_numeric(&self, emb: &Embedding) -> Option<Complex64> {
        match self {
            AlgElem::Base(r) => r.as_constant().map(|c| c.to_complex()),
            AlgElem::Ext(e, v) => {
                let t = emb.value_of(e.id)?;
                let mut acc = Complex64::new(0.0, 0.0);
                for c in v.iter().rev() {
                    acc = acc * t + c.eval_numeric(emb)?;
                }
                Some(acc)
            }
        }
    }

    /// Numeric value at a complex `h` under an embedding computed at that `h`.
    pub fn eval_at(&self, h: Complex64, emb: &Embedding) -> Option<Complex64> {
        match self {
            AlgElem::Base(r) => Some(r.eval_complex(h)),
            AlgElem::Ext(e, v) => {
                let t = emb.value_of(e.id)?;
                let mut acc = Complex64::new(0.0, 0.0);
                for c in v.iter().rev() {
                    acc = acc * t + c.eval_at(h, emb)?;
                }
                Some(acc)
            }
        }
    }
}

/// A choice of numeric root for every generator in a tower.
#[derive(Clone, Debug, Default)]
pub struct Embedding {
    values: Vec<(u64, Complex64)>,
}

impl Embedding {
    pub fn value_of(&self, id: u64) -> Option<Complex64> {
        self.values.iter().find(|(i, _)| *i == id).map(|(_, v)| *v)
    }

    /// All embeddings of the tower ending in `ext`, evaluated at `h`
    /// (`None` requires an `h`-free tower). Ordered by root position for
    /// determinism.
    pub fn enumerate(ext: Option<&Arc<Extension>>, h: Option<Complex64>) -> Result<Vec<Embedding>, CoreError> {
        let Some(ext) = ext else {
            return Ok(vec![Embedding::default()]);
        };
        let mut out = Vec::new();
        for parent in Embedding::enumerate(ext.parent.as_ref(), h)? {
            let coeffs: Option<Vec<Complex64>> = ext
                .modulus
                .coeffs()
                .iter()
                .map(|c| match h {
                    Some(hv) => c.eval_at(hv, &parent),
                    None => c.eval_numeric(&parent),
                })
                .collect();
            let coeffs = coeffs.ok_or_else(|| CoreError::InvalidOption("tower depends on h".into()))?;
            for root in aberth(&coeffs)? {
                let mut e = parent.clone();
                e.values.push((ext.id, root));
                out.push(e);
            }
        }
        Ok(out)
    }
}

impl Field for AlgElem {
    fn zero() -> Self {
        AlgElem::Base(RatFn::zero())
    }
    fn one() -> Self {
        AlgElem::Base(RatFn::one())
    }
    fn is_zero(&self) -> bool {
        match self {
            AlgElem::Base(r) => r.is_zero(),
            AlgElem::Ext(_, v) => v.is_empty(),
        }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        match self {
            AlgElem::Base(r) => Ok(AlgElem::Base(r.inv()?)),
            AlgElem::Ext(e, v) => {
                let a = UniPoly::new(v.clone());
                let (g, s) = a.gcd_cofactor(&e.modulus)?;
                if g.deg0() > 0 {
                    return Err(ArithError::ZeroDivisor { ext_id: e.id, factor: g.into_coeffs() });
                }
                if g.is_zero() {
                    return Err(ArithError::DivisionByZero);
                }
                Ok(AlgElem::normalize(e, s.into_coeffs()))
            }
        }
    }
    fn from_gauss(g: &GaussianRational) -> Self {
        AlgElem::Base(RatFn::constant(g.clone()))
    }
    fn from_i64(n: i64) -> Self {
        AlgElem::Base(RatFn::from_i64(n))
    }
}

impl From<RatFn> for AlgElem {
    fn from(r: RatFn) -> Self {
        AlgElem::Base(r)
    }
}

impl From<GaussianRational> for AlgElem {
    fn from(g: GaussianRational) -> Self {
        AlgElem::from_gauss(&g)
    }
}

impl Add for AlgElem {
    type Output = AlgElem;
    fn add(self, o: AlgElem) -> AlgElem {
        match AlgElem::top_ext(&self, &o) {
            None => match (self, o) {
                (AlgElem::Base(a), AlgElem::Base(b)) => AlgElem::Base(a + b),
                _ => unreachable!(),
            },
            Some(e) => {
                let a = self.coeffs_in(&e);
                let b = o.coeffs_in(&e);
                let n = a.len().max(b.len());
                let v = (0..n)
                    .map(|k| {
                        let x = a.get(k).cloned().unwrap_or_else(AlgElem::zero);
                        let y = b.get(k).cloned().unwrap_or_else(AlgElem::zero);
                        x + y
                    })
                    .collect();
                AlgElem::normalize(&e, v)
            }
        }
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        match self {
            AlgElem::Base(r) => AlgElem::Base(-r),
            AlgElem::Ext(e, v) => AlgElem::Ext(e, v.into_iter().map(|c| -c).collect()),
        }
    }
}

impl Sub for AlgElem {
    type Output = AlgElem;
    fn sub(self, o: AlgElem) -> AlgElem {
        self + (-o)
    }
}

impl Mul for AlgElem {
    type Output = AlgElem;
    fn mul(self, o: AlgElem) -> AlgElem {
        if self.is_zero() || o.is_zero() {
            return AlgElem::zero();
        }
        match AlgElem::top_ext(&self, &o) {
            None => match (self, o) {
                (AlgElem::Base(a), AlgElem::Base(b)) => AlgElem::Base(a * b),
                _ => unreachable!(),
            },
            Some(e) => {
                let a = self.coeffs_in(&e);
                let b = o.coeffs_in(&e);
                let mut v = vec![AlgElem::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        v[i + j] = v[i + j].clone() + x.clone() * y.clone();
                    }
                }
                AlgElem::reduce(&e, v)
            }
        }
    }
}

fn fmt_poly(p: &UniPoly<AlgElem>, var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = c.to_string();
        let term = match k {
            0 => cs,
            _ => {
                let v = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                if cs == "1" {
                    v
                } else {
                    format!("({cs})*{v}")
                }
            }
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgElem::Base(r) => write!(f, "{r}"),
            AlgElem::Ext(e, v) => {
                let p = UniPoly::new(v.clone());
                write!(f, "{}", fmt_poly(&p, &format!("t{}", e.level)))
            }
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Runs `body` on a generic root of the squarefree monic polynomial
/// `minpoly` (coefficients in the field topped by `parent`).
///
/// Linear factors are solved in place; higher-degree factors get a new
/// extension. When `body` hits a zero divisor of that extension the factor
/// is split and both parts are processed. Results come back one per final
/// factor, in a deterministic order.
pub fn with_generic_root<T>(
    parent: Option<&Arc<Extension>>,
    minpoly: UniPoly<AlgElem>,
    mut body: impl FnMut(AlgElem, Option<&Arc<Extension>>, usize) -> Result<T, CoreError>,
) -> Result<Vec<T>, CoreError> {
    let mut stack = vec![minpoly];
    let mut out = Vec::new();
    while let Some(m) = stack.pop() {
        let deg = m.deg0();
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            let root = (-m.coeff(0)).div(&m.coeff(1))?;
            let top = parent.cloned();
            out.push(body(root, top.as_ref(), 1)?);
            continue;
        }
        let m = m.monic()?;
        let ext = Extension::new(parent.cloned(), m.clone());
        match body(ext.generator(), Some(&ext), deg) {
            Ok(v) => out.push(v),
            Err(CoreError::Arith(ArithError::ZeroDivisor { ext_id, factor })) if ext_id == ext.id => {
                let g = UniPoly::new(factor).monic()?;
                let cofactor = m.exact_div(&g)?;
                stack.push(cofactor);
                stack.push(g);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
