//! Resultants of bivariate polynomials by the subresultant algorithm over
//! ℚ(i)[x].

use crate::bipoly::{BiPoly, Var};
use crate::error::{CoreError, Result};
use crate::gauss::GaussianRational;
use crate::unipoly::UniPoly;

type Coeff = UniPoly<GaussianRational>;

fn trim(mut v: Vec<Coeff>) -> Vec<Coeff> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deg(v: &[Coeff]) -> usize {
    v.len() - 1
}

fn upow(c: &Coeff, e: usize) -> Coeff {
    c.pow(e as u32)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1)·a mod b`.
fn prem(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r: Vec<Coeff> = a.to_vec();
    let mut e = a.len() - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = dr - db + j;
            r[idx] = &r[idx] - &(&lr * bj);
        }
        r = trim(r);
        e -= 1;
    }
    let f = upow(&lb, e);
    r.into_iter().map(|c| &c * &f).collect()
}

fn exact(a: &Coeff, b: &Coeff) -> Coeff {
    a.exact_div(b).expect("nonzero divisor in subresultant chain")
}

/// Resultant of two polynomials in `y` with coefficients in ℚ(i)[x].
fn subresultant(a: Vec<Coeff>, b: Vec<Coeff>) -> Coeff {
    let (mut a, mut b) = (trim(a), trim(b));
    if a.is_empty() || b.is_empty() {
        return Coeff::zero();
    }
    let mut sign = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = upow(&b[0], deg(&a));
        return if sign { -&r } else { r };
    }
    let mut g = Coeff::one();
    let mut h = Coeff::one();
    loop {
        let da = deg(&a);
        let db = deg(&b);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = trim(prem(&a, &b));
        let div = &g * &upow(&h, delta);
        a = b;
        b = r.iter().map(|c| exact(c, &div)).collect();
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            exact(&upow(&g, delta), &upow(&h, delta - 1))
        };
        if b.is_empty() {
            return Coeff::zero();
        }
        if deg(&b) == 0 {
            let da = deg(&a);
            let r = if da == 0 {
                Coeff::one()
            } else {
                exact(&upow(&b[0], da), &upow(&h, da - 1))
            };
            return if sign { -&r } else { r };
        }
    }
}

/// Resultant of `p` and `q` with respect to `eliminate`, as a polynomial in
/// the remaining variable.
pub fn resultant(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Result<UniPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    if p.is_constant() && q.is_constant() {
        return Err(CoreError::NoVariableToEliminate);
    }
    Ok(subresultant(p.coefficients_in(eliminate), q.coefficients_in(eliminate)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    type P = BiPoly;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn sylvester_det(a: &[Coeff], b: &[Coeff]) -> Coeff {
        // Laplace expansion oracle for small sizes.
        let m = a.len() - 1;
        let n = b.len() - 1;
        let size = m + n;
        let mut mat = vec![vec![Coeff::zero(); size]; size];
        for i in 0..n {
            for (j, aj) in a.iter().rev().enumerate() {
                mat[i][i + j] = aj.clone();
            }
        }
        for i in 0..m {
            for (j, bj) in b.iter().rev().enumerate() {
                mat[n + i][i + j] = bj.clone();
            }
        }
        det(&mat)
    }

    fn det(m: &[Vec<Coeff>]) -> Coeff {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = Coeff::zero();
        for j in 0..m.len() {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Coeff>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = &m[0][j] * &det(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn small_resultants() {
        let x = P::x();
        let y = P::y();
        let r = resultant(&x, &(&y + &x.pow(2)), Var::Y).unwrap();
        assert_eq!(r, UniPoly::new(vec![c(0), c(1)]));
        let r = resultant(&(&y.pow(2) - &x), &y, Var::Y).unwrap();
        assert_eq!(r, UniPoly::new(vec![c(0), c(-1)]));
        let p = &(&y.pow(2) + &x) - &P::one();
        assert!(resultant(&p, &p, Var::Y).unwrap().is_zero());
        assert!(matches!(resultant(&P::one(), &P::one(), Var::Y), Err(CoreError::NoVariableToEliminate)));
    }

    #[test]
    fn matches_sylvester_determinant() {
        let x = P::x();
        let y = P::y();
        let p = &(&(&y.pow(3) + &(&x * &y)) - &x.pow(2)) + &P::constant(GaussianRational::i());
        let q = &(&y.pow(2).scale(&c(2)) + &(&x.pow(2) * &y)) - &P::one();
        let r = resultant(&p, &q, Var::Y).unwrap();
        let oracle = sylvester_det(&p.coefficients_in(Var::Y), &q.coefficients_in(Var::Y));
        assert_eq!(r, oracle);
        let r2 = resultant(&q, &p, Var::Y).unwrap();
        assert_eq!(r2, oracle); // (-1)^(3·2) = 1
    }

    #[test]
    fn vanishes_on_common_zero() {
        // p, q share the point (2, -1).
        let x = P::x();
        let y = P::y();
        let p = &(&x * &y) + &P::constant(c(2));
        let q = &(&y.pow(2) + &x) - &P::constant(c(3));
        let rx = resultant(&p, &q, Var::Y).unwrap();
        assert!(rx.eval(&c(2)).is_zero());
        let ry = resultant(&p, &q, Var::X).unwrap();
        assert!(ry.eval(&c(-1)).is_zero());
    }
}
