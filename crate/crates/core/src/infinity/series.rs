//! Truncated power series in the branch parameter.

use crate::algext::AlgElem;
use crate::bipoly::BiPoly;
use crate::field::Field;

pub type Series = Vec<AlgElem>;

pub fn zeros(len: usize) -> Series {
    vec![AlgElem::zero(); len]
}

pub fn mul(a: &[AlgElem], b: &[AlgElem], len: usize) -> Series {
    let mut out = zeros(len);
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `f(a·t^p, y(t))` modulo `t^len`.
pub fn compose_branch(f: &BiPoly<AlgElem>, a: &AlgElem, p: usize, y: &[AlgElem], len: usize) -> Series {
    let max_l = f.terms().map(|(&(_, l), _)| l as usize).max().unwrap_or(0);
    let mut ypow: Vec<Series> = vec![{
        let mut one = zeros(len);
        if len > 0 {
            one[0] = AlgElem::one();
        }
        one
    }];
    for l in 1..=max_l {
        let next = mul(&ypow[l - 1], y, len);
        ypow.push(next);
    }
    let mut out = zeros(len);
    for (&(k, l), c) in f.terms() {
        let shift = p * k as usize;
        if shift >= len {
            continue;
        }
        let factor = c.clone() * a.pow(k);
        for (j, yc) in ypow[l as usize].iter().enumerate().take(len - shift) {
            if !yc.is_zero() {
                out[shift + j] = out[shift + j].clone() + factor.clone() * yc.clone();
            }
        }
    }
    out
}

/// `t^q·ρ(t)` modulo `t^len`.
pub fn shifted(rho: &[AlgElem], q: usize, len: usize) -> Series {
    let mut out = zeros(len);
    for (j, c) in rho.iter().enumerate() {
        if q + j < len {
            out[q + j] = c.clone();
        }
    }
    out
}
