//! Sparse bivariate polynomials.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::field::Field;
use crate::gauss::GaussianRational;
use crate::unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Terms keyed by `(deg_x, deg_y)`; zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct BiPoly<F: Field = GaussianRational> {
    terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> Default for BiPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: F, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(F::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(F::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), F)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c·x^i·y^j` in place.
    pub fn add_term(&mut self, key: (u32, u32), c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> F {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i,
                Var::Y => j,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), c.clone() * F::from_i64(i as i64))),
            Var::Y if j > 0 => Some(((i, j - 1), c.clone() * F::from_i64(j as i64))),
            _ => None,
        }))
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(&(i, j), _)| i + j == k).map(|(a, b)| (*a, b.clone())))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Lowest total degree among the terms; 0 for the zero polynomial.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).min().unwrap_or(0)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        let mut acc = F::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c.clone() * x.pow(i) * y.pow(j);
        }
        acc
    }

    /// `p(f, g)` for bivariate `f`, `g`.
    pub fn compose(&self, f: &Self, g: &Self) -> Self {
        let mut fp: Vec<Self> = vec![Self::one()];
        let mut gp: Vec<Self> = vec![Self::one()];
        let dx = self.degree_in(Var::X) as usize;
        let dy = self.degree_in(Var::Y) as usize;
        for k in 1..=dx {
            let next = &fp[k - 1] * f;
            fp.push(next);
        }
        for k in 1..=dy {
            let next = &gp[k - 1] * g;
            gp.push(next);
        }
        let mut acc = Self::zero();
        for (&(i, j), c) in &self.terms {
            let t = (&fp[i as usize] * &gp[j as usize]).scale(c);
            acc = &acc + &t;
        }
        acc
    }

    /// `p(a·x + b·y, c·x + d·y)`.
    pub fn linear_substitute(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let f = &Self::monomial(a.clone(), 1, 0) + &Self::monomial(b.clone(), 0, 1);
        let g = &Self::monomial(c.clone(), 1, 0) + &Self::monomial(d.clone(), 0, 1);
        self.compose(&f, &g)
    }

    /// Coefficient list of `p` viewed as a polynomial in `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<UniPoly<F>> {
        let n = self.degree_in(v) as usize;
        let mut cols: Vec<Vec<F>> = vec![Vec::new(); n + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (&(i, j), c) in &self.terms {
            let (outer, inner) = match v {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            let col = &mut cols[outer];
            if col.len() <= inner {
                col.resize(inner + 1, F::zero());
            }
            col[inner] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    /// Substitutes a value for one variable, leaving a polynomial in the other.
    pub fn specialize(&self, v: Var, value: &F) -> UniPoly<F> {
        let n = match v {
            Var::X => self.degree_in(Var::Y),
            Var::Y => self.degree_in(Var::X),
        } as usize;
        let mut out = vec![F::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            let (e, k) = match v {
                Var::X => (i, j as usize),
                Var::Y => (j, i as usize),
            };
            out[k] = out[k].clone() + c.clone() * value.pow(e);
        }
        UniPoly::new(out)
    }
}

impl BiPoly<GaussianRational> {
    pub fn eval_complex(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            acc += c.to_complex() * x.powu(i) * y.powu(j);
        }
        acc
    }

    /// Numeric form suited to repeated evaluation.
    pub fn to_numeric(&self) -> NumericPoly {
        NumericPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| (i, j, c.to_complex())).collect(),
            dx: self.degree_in(Var::X),
            dy: self.degree_in(Var::Y),
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }
}

/// Complex-double copy of a polynomial with power tables for fast evaluation.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    terms: Vec<(u32, u32, Complex64)>,
    dx: u32,
    dy: u32,
}

impl NumericPoly {
    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        let mut xp = Vec::with_capacity(self.dx as usize + 1);
        let mut yp = Vec::with_capacity(self.dy as usize + 1);
        let mut a = Complex64::new(1.0, 0.0);
        for _ in 0..=self.dx {
            xp.push(a);
            a *= x;
        }
        let mut b = Complex64::new(1.0, 0.0);
        for _ in 0..=self.dy {
            yp.push(b);
            b *= y;
        }
        self.terms
            .iter()
            .map(|&(i, j, c)| c * xp[i as usize] * yp[j as usize])
            .sum()
    }
}

impl<F: Field> PartialEq for BiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<'a, F: Field> Add<&'a BiPoly<F>> for &'a BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, o: &BiPoly<F>) -> BiPoly<F> {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a, F: Field> Sub<&'a BiPoly<F>> for &'a BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, o: &BiPoly<F>) -> BiPoly<F> {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a BiPoly<F>> for &'a BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, o: &BiPoly<F>) -> BiPoly<F> {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<F: Field> Neg for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl<F: Field> Add for BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, o: BiPoly<F>) -> BiPoly<F> {
        &self + &o
    }
}

impl<F: Field> Sub for BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, o: BiPoly<F>) -> BiPoly<F> {
        &self - &o
    }
}

impl<F: Field> Mul for BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, o: BiPoly<F>) -> BiPoly<F> {
        &self * &o
    }
}

impl<F: Field> Neg for BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = BiPoly;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn half() -> GaussianRational {
        GaussianRational::from_ratio(1, 2)
    }

    #[test]
    fn ring_identities() {
        let x = P::x();
        let y = P::y();
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
        assert!((&x * &P::zero()).is_zero());
        let h = (&x.pow(2) + &y.pow(2)).scale(&half());
        let sq = h.pow(2);
        assert_eq!(sq.coeff(4, 0), GaussianRational::from_ratio(1, 4));
        assert_eq!(sq.coeff(2, 2), half());
        assert_eq!(sq.coeff(0, 4), GaussianRational::from_ratio(1, 4));
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn derivatives() {
        let x = P::x();
        let y = P::y();
        let h = (&x.pow(2) + &y.pow(2)).scale(&half());
        assert_eq!(h.partial_derivative(Var::Y), y);
        assert_eq!(x.pow(3).partial_derivative(Var::X), x.pow(2).scale(&c(3)));
        let p = &(&x.pow(2) * &y) + &y.pow(2).scale(&GaussianRational::i());
        let want = &x.pow(2) + &y.scale(&GaussianRational::from_ints(0, 2));
        assert_eq!(p.partial_derivative(Var::Y), want);
    }

    #[test]
    fn homogeneous_parts() {
        let x = P::x();
        let y = P::y();
        let h = &(&x.pow(2) + &(&y + &x.pow(2)).pow(2)).scale(&half()) + &P::zero();
        assert_eq!(h.homogeneous_part(4), x.pow(4).scale(&half()));
        assert!(h.homogeneous_part(9).is_zero());
        let total = (0..=h.total_degree()).fold(P::zero(), |acc, k| &acc + &h.homogeneous_part(k));
        assert_eq!(total, h);
    }

    #[test]
    fn composition_and_specialization() {
        let x = P::x();
        let y = P::y();
        let p = &x.pow(2) + &(&x * &y);
        // p(x+y, y) = (x+y)^2 + (x+y)y
        let q = p.linear_substitute(&c(1), &c(1), &c(0), &c(1));
        let want = &(&x + &y).pow(2) + &(&(&x + &y) * &y);
        assert_eq!(q, want);
        let u = p.specialize(Var::X, &c(2));
        assert_eq!(u, UniPoly::new(vec![c(4), c(2)]));
    }
}
