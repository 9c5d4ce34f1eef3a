use num_integer::Integer;
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::field::Field;
use crate::unipoly::UniPoly;

/// Edge of the lower-left hull on the line `p·k + q·l = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub start: (u32, u32),
    pub end: (u32, u32),
    pub p: u32,
    pub q: u32,
    pub n: u32,
}

impl Edge {
    pub fn contains(&self, k: u32, l: u32) -> bool {
        self.p * k + self.q * l == self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Exponents `(k, l)` of `X^k Y^l` with nonzero coefficient.
    pub support: Vec<(u32, u32)>,
    /// Hull vertices from the `Y` side down to the `X` side (decreasing `l`).
    pub vertices: Vec<(u32, u32)>,
    pub edges: Vec<Edge>,
}

/// Lower-left convex hull of the support of `f` in `(X, Y)`.
pub fn newton_polygon<F: Field>(f: &BiPoly<F>) -> NewtonPolygon {
    let support: Vec<(u32, u32)> = f.terms().map(|(k, _)| *k).collect();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let Some(&first) = support.iter().min_by_key(|&&(k, l)| (k, l)) else {
        return NewtonPolygon { support, vertices, edges };
    };
    vertices.push(first);
    let mut cur = first;
    loop {
        // Steepest descent to a point strictly below; the farthest one on ties.
        let mut best: Option<((u32, u32), i64, i64)> = None;
        for &(k, l) in &support {
            if l >= cur.1 || k <= cur.0 {
                continue;
            }
            let (dk, dl) = ((k - cur.0) as i64, l as i64 - cur.1 as i64);
            best = match best {
                None => Some(((k, l), dk, dl)),
                Some((b, bk, bl)) => {
                    // compare dl/dk with bl/bk (dk, bk > 0)
                    let lhs = dl * bk;
                    let rhs = bl * dk;
                    if lhs < rhs || (lhs == rhs && k > b.0) {
                        Some(((k, l), dk, dl))
                    } else {
                        Some((b, bk, bl))
                    }
                }
            };
        }
        let Some((next, dk, dl)) = best else { break };
        let g = dk.gcd(&-dl);
        let (p, q) = ((-dl / g) as u32, (dk / g) as u32);
        edges.push(Edge { start: cur, end: next, p, q, n: p * cur.0 + q * cur.1 });
        vertices.push(next);
        cur = next;
    }
    NewtonPolygon { support, vertices, edges }
}

/// `g(1, Y)`: the part of `f` on the edge with `X = 1`.
pub fn newton_principal<F: Field>(f: &BiPoly<F>, edge: &Edge) -> UniPoly<F> {
    let mut c = vec![F::zero(); (edge.start.1 + 1) as usize];
    for (&(k, l), b) in f.terms() {
        if edge.contains(k, l) {
            c[l as usize] = b.clone();
        }
    }
    UniPoly::new(c)
}

/// Integers `(u, v)` with `p·v − q·u = 1` and `−p < u ≤ 0`.
pub fn bezout(p: u32, q: u32) -> (i64, i64) {
    let (p, q) = (p as i64, q as i64);
    for u in (-(p - 1)..=0).rev() {
        if (1 + q * u).rem_euclid(p) == 0 {
            return (u, (1 + q * u) / p);
        }
    }
    unreachable!("p and q are coprime")
}

/// The edge polynomial in `τ` after `X = τ^u`, `Y = τ^v`: the exponents
/// `u·k + v·l` of the edge terms are consecutive integers.
pub fn edge_polynomial<F: Field>(f: &BiPoly<F>, edge: &Edge) -> UniPoly<F> {
    let (u, v) = bezout(edge.p, edge.q);
    let terms: Vec<(i64, F)> = f
        .terms()
        .filter(|(&(k, l), _)| edge.contains(k, l))
        .map(|(&(k, l), b)| (u * k as i64 + v * l as i64, b.clone()))
        .collect();
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![F::zero(); (hi - lo + 1) as usize];
    for (e, b) in terms {
        c[(e - lo) as usize] = b;
    }
    UniPoly::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussianRational;
    use crate::parser::parse_poly_with_vars;

    fn poly(s: &str) -> BiPoly {
        parse_poly_with_vars(s, ["X", "Y"]).unwrap()
    }

    /// Brute-force hull oracle: a support point is a vertex of the lower-left
    /// hull iff some weight `(a, b)` with `a, b > 0` makes it the unique
    /// minimizer of `a·k + b·l`.
    fn oracle_vertices(support: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for &pt in support {
            let is_vertex = (1..60).any(|a| {
                (1..60).any(|b| {
                    let w = |(k, l): (u32, u32)| a * k + b * l;
                    support.iter().all(|&o| o == pt || w(o) > w(pt))
                })
            });
            let axis = support.iter().all(|&o| o == pt || o.0 > pt.0 || (o.0 == pt.0 && o.1 > pt.1))
                || support.iter().all(|&o| o == pt || o.1 > pt.1 || (o.1 == pt.1 && o.0 > pt.0));
            if is_vertex || axis {
                out.push(pt);
            }
        }
        out.sort_by_key(|&(k, l)| (std::cmp::Reverse(l), k));
        out
    }

    #[test]
    fn cubic_chart_polygon() {
        let f = poly("1/2*X + 1/2*X*Y^2 + Y^3 - 1/7*X^3");
        let np = newton_polygon(&f);
        assert_eq!(np.vertices, vec![(0, 3), (1, 0)]);
        assert_eq!(np.edges.len(), 1);
        let e = &np.edges[0];
        assert_eq!((e.p, e.q, e.n), (3, 1, 3));
        assert_eq!(np.vertices, oracle_vertices(&np.support));
        let g = newton_principal(&f, e);
        assert_eq!(g, UniPoly::new(vec![GaussianRational::from_ratio(1, 2), 0.into(), 0.into(), 1.into()]));
        assert_eq!(bezout(3, 1), (-1, 0));
        let gt = edge_polynomial(&f, e);
        assert_eq!(gt, UniPoly::new(vec![GaussianRational::from_ratio(1, 2), 1.into()]));
    }

    #[test]
    fn cusp_and_single_vertex() {
        let f = poly("Y^2 - X^3");
        let np = newton_polygon(&f);
        assert_eq!(np.vertices, vec![(0, 2), (3, 0)]);
        assert_eq!((np.edges[0].p, np.edges[0].q, np.edges[0].n), (2, 3, 6));
        assert_eq!(newton_principal(&f, &np.edges[0]), UniPoly::new(vec![(-1).into(), 0.into(), 1.into()]));
        let np = newton_polygon(&poly("X*Y"));
        assert_eq!(np.vertices, vec![(1, 1)]);
        assert!(np.edges.is_empty());
    }

    #[test]
    fn collinear_points_stay_on_one_edge() {
        let f = poly("1/2*Y^4 - X*Y^2 + 1/2*X^2*Y^2 + 1/2*X^2 - X^4");
        let np = newton_polygon(&f);
        assert_eq!(np.vertices, vec![(0, 4), (2, 0)]);
        assert_eq!((np.edges[0].p, np.edges[0].q, np.edges[0].n), (2, 1, 4));
        assert_eq!(newton_principal(&f, &np.edges[0]).deg0(), 4);
    }

    #[test]
    fn bezout_identity() {
        for p in 1..12u32 {
            for q in 1..12u32 {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let (u, v) = bezout(p, q);
                assert_eq!(p as i64 * v - q as i64 * u, 1);
                assert!(u <= 0 && u > -(p as i64));
            }
        }
    }
}
