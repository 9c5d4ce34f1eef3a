//! Random Morse Hamiltonians for the property suites.
#![allow(dead_code)]

use isochk::bipoly::BiPoly;
use isochk::gauss::GaussianRational;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R, max: i64) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-max..=max), rng.gen_range(1..=3))
}

pub fn small_gauss<R: Rng>(rng: &mut R, max: i64) -> GaussianRational {
    let re = small_rational(rng, max);
    if rng.gen_bool(0.3) {
        re + small_rational(rng, max) * GaussianRational::i()
    } else {
        re
    }
}

/// `(x² + y²)/2`.
pub fn circle() -> BiPoly {
    BiPoly::from_terms([((2, 0), GaussianRational::from_ratio(1, 2)), ((0, 2), GaussianRational::from_ratio(1, 2))])
}

/// Random homogeneous part of degree `d` with about half the monomials.
pub fn random_form<R: Rng>(rng: &mut R, d: u32) -> BiPoly {
    let mut p = BiPoly::zero();
    for i in 0..=d {
        if rng.gen_bool(0.5) {
            p.add_term((i, d - i), small_gauss(rng, 3));
        }
    }
    p
}

/// `(x² + y²)/2 + h.o.t.` of degree `3..=max_degree` whose top part is a
/// product of linear forms over ℚ(i) with random multiplicities.
pub fn split_top_hamiltonian<R: Rng>(rng: &mut R, max_degree: u32) -> BiPoly {
    let deg = rng.gen_range(3..=max_degree);
    let mut parts = Vec::new();
    let mut rest = deg;
    while rest > 0 {
        let m = rng.gen_range(1..=rest);
        parts.push(m);
        rest -= m;
    }
    let mut used: Vec<GaussianRational> = Vec::new();
    let mut top = BiPoly::constant(small_gauss(rng, 2) + GaussianRational::from(3));
    for (k, &m) in parts.iter().enumerate() {
        let form = if k == 0 && rng.gen_bool(0.3) {
            BiPoly::x()
        } else {
            let r = loop {
                let r = small_gauss(rng, 2);
                if !used.contains(&r) {
                    break r;
                }
            };
            used.push(r.clone());
            // r·x − y
            &BiPoly::x().scale(&r) - &BiPoly::y()
        };
        top = &top * &form.pow(m);
    }
    let mut h = circle();
    for d in 3..deg {
        h = &h + &random_form(rng, d);
    }
    &h + &top
}

/// `(x² + y²)/2 + h.o.t.` with arbitrary random forms up to `max_degree`.
pub fn random_morse<R: Rng>(rng: &mut R, max_degree: u32) -> BiPoly {
    let deg = rng.gen_range(3..=max_degree);
    let mut h = circle();
    for d in 3..=deg {
        h = &h + &random_form(rng, d);
    }
    if h.total_degree() < 3 {
        h.add_term((deg, 0), GaussianRational::from(1));
    }
    h
}
