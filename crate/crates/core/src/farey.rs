//! Finite windows of the Farey graph.
//!
//! The ball with bound `Qmax` and window `K` holds `1/0` and every reduced
//! `p/q` with `1 <= q <= Qmax` and `|p/q| <= K`. A vertex is interior when
//! `q <= Qmax/2` and `|p/q| <= K - 1` (and `1/0` always is): all its
//! neighbours of denominator at most `Qmax` are then in the ball, and so
//! are both triangles on any edge between interior vertices.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use num_integer::Integer;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_WINDOW: i64 = 2;
pub const FAREY_VERTEX_CAP: usize = 200_000;

/// `p/q` in lowest terms with `q > 0`, or `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyVertex {
    pub p: i64,
    pub q: i64,
}

impl FareyVertex {
    pub const INFINITY: FareyVertex = FareyVertex { p: 1, q: 0 };

    /// Reduces and normalizes; `None` for `0/0`.
    pub fn new(p: i64, q: i64) -> Option<Self> {
        if p == 0 && q == 0 {
            return None;
        }
        if q == 0 {
            return Some(Self::INFINITY);
        }
        let d = p.gcd(&q) * q.signum();
        Some(FareyVertex { p: p / d, q: q / d })
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }
}

impl fmt::Display for FareyVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for FareyVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("not a fraction: {s}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
            None if s.trim() == "inf" => (1, 0),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        FareyVertex::new(p, q).ok_or_else(bad)
    }
}

/// `|p q' - p' q| = 1`.
pub fn adjacent(x: FareyVertex, y: FareyVertex) -> bool {
    (x.p * y.q - y.p * x.q).abs() == 1
}

#[derive(Debug, Clone)]
pub struct FareyBall {
    pub qmax: i64,
    pub window: i64,
    pub vertices: Vec<FareyVertex>,
    pub graph: SimpleGraph,
    index: HashMap<FareyVertex, usize>,
}

impl FareyBall {
    pub fn index_of(&self, v: FareyVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn is_interior(&self, v: FareyVertex) -> bool {
        v.is_infinity() || (2 * v.q <= self.qmax && v.p.abs() <= (self.window - 1) * v.q)
    }

    /// One line `p/q p'/q'` per edge.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for (x, y) in self.graph.edges() {
            s.push_str(&format!("{} {}\n", self.vertices[x], self.vertices[y]));
        }
        s
    }
}

/// Neighbours of `v` with denominator at most `qmax`; for `1/0`, the
/// integers up to `limit` in absolute value.
fn neighbours(v: FareyVertex, qmax: i64, limit: i64) -> Vec<FareyVertex> {
    if v.is_infinity() {
        return (-limit..=limit).map(|n| FareyVertex { p: n, q: 1 }).collect();
    }
    // p*s0 - q*r0 = 1
    let e = v.p.extended_gcd(&v.q);
    let (s0, r0) = (e.x, -e.y);
    let mut out = Vec::new();
    if v.q == 1 {
        out.push(FareyVertex::INFINITY);
    }
    // all solutions are (r0 + k p, s0 + k q), up to sign
    let k_lo = Integer::div_floor(&(-qmax - s0), &v.q);
    let k_hi = Integer::div_floor(&(qmax - s0), &v.q);
    for k in k_lo..=k_hi {
        let (r, s) = (r0 + k * v.p, s0 + k * v.q);
        if s != 0 && s.abs() <= qmax {
            out.extend(FareyVertex::new(r, s));
        }
    }
    out
}

/// The Farey ball with denominator bound `qmax` and window `[-window, window]`.
pub fn farey_ball(qmax: i64, window: i64) -> Result<FareyBall> {
    if qmax < 1 || window < 1 {
        return Err(Error::Input("Qmax and window must be at least 1".into()));
    }
    let mut vertices = vec![FareyVertex::INFINITY];
    for q in 1..=qmax {
        for p in -window * q..=window * q {
            if p.gcd(&q) == 1 {
                vertices.push(FareyVertex { p, q });
            }
            if vertices.len() > FAREY_VERTEX_CAP {
                return Err(Error::Size { what: "Farey ball vertices", actual: vertices.len(), limit: FAREY_VERTEX_CAP });
            }
        }
    }
    vertices.sort_by_key(|v| if v.is_infinity() { (0, 0, 0) } else { (1, v.q, v.p) });
    let index: HashMap<FareyVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut graph = SimpleGraph::new(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        for w in neighbours(v, qmax, window) {
            if let Some(&j) = index.get(&w) {
                if i < j {
                    graph.add_edge(i, j);
                }
            }
        }
    }
    Ok(FareyBall { qmax, window, vertices, graph, index })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkShape {
    Line,
    NotLine,
    BoundaryInconclusive,
}

/// Whether the link of `v` inside the ball is a path.
pub fn link_is_line(ball: &FareyBall, v: FareyVertex) -> LinkShape {
    let Some(x) = ball.index_of(v) else {
        return LinkShape::BoundaryInconclusive;
    };
    if !ball.is_interior(v) {
        return LinkShape::BoundaryInconclusive;
    }
    let link = ball.graph.induced(ball.graph.neighbors(x));
    let path = link.n() > 0
        && link.is_connected()
        && link.edge_count() + 1 == link.n()
        && (0..link.n()).all(|y| link.degree(y) <= 2);
    if path {
        LinkShape::Line
    } else {
        LinkShape::NotLine
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCount {
    pub interior_edges: usize,
    /// Interior edges not on exactly two triangles, with their count.
    pub bad: Vec<(FareyVertex, FareyVertex, usize)>,
}

/// Triangles through every edge with both ends interior.
pub fn edge_two_triangles(ball: &FareyBall) -> TriangleCount {
    let g = &ball.graph;
    let mut out = TriangleCount { interior_edges: 0, bad: Vec::new() };
    for (x, y) in g.edges() {
        let (vx, vy) = (ball.vertices[x], ball.vertices[y]);
        if !(ball.is_interior(vx) && ball.is_interior(vy)) {
            continue;
        }
        out.interior_edges += 1;
        let count = g.neighbors(x).iter().filter(|&&z| g.has_edge(y, z)).count();
        if count != 2 {
            out.bad.push((vx, vy, count));
        }
    }
    out
}

/// Induced 4-cycles whose vertices are all interior.
pub fn interior_four_cycles(ball: &FareyBall) -> usize {
    let inner: Vec<bool> = ball.vertices.iter().map(|&v| ball.is_interior(v)).collect();
    induced_four_cycles(&ball.graph, &inner)
}

fn induced_four_cycles(g: &SimpleGraph, inner: &[bool]) -> usize {
    let mut count = 0;
    // a cycle a-b-c-d with a the least vertex, b < d, and no chords
    for a in (0..g.n()).filter(|&a| inner[a]) {
        for &b in g.neighbors(a) {
            for &d in g.neighbors(a) {
                if b <= a || d <= b || !inner[b] || !inner[d] || g.has_edge(b, d) {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c > a && c != d && inner[c] && g.has_edge(c, d) && !g.has_edge(a, c) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fv(p: i64, q: i64) -> FareyVertex {
        FareyVertex::new(p, q).unwrap()
    }

    fn brute_edges(ball: &FareyBall) -> Vec<(usize, usize)> {
        let n = ball.vertices.len();
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (ball.vertices[i], ball.vertices[j]);
                if (x.p * y.q - y.p * x.q).abs() == 1 {
                    e.push((i, j));
                }
            }
        }
        e
    }

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(fv(0, 1), fv(1, 1)));
        assert!(!adjacent(fv(0, 1), fv(2, 3)));
        for n in -20..=20 {
            assert!(adjacent(FareyVertex::INFINITY, fv(n, 1)));
        }
        assert_eq!(fv(-1, 0), FareyVertex::INFINITY);
        assert_eq!(fv(2, -4), FareyVertex { p: -1, q: 2 });
        assert_eq!("3/6".parse::<FareyVertex>().unwrap(), fv(1, 2));
        assert_eq!("inf".parse::<FareyVertex>().unwrap(), FareyVertex::INFINITY);
        assert!("0/0".parse::<FareyVertex>().is_err());
    }

    #[test]
    fn smallest_ball() {
        let b = farey_ball(1, 1).unwrap();
        let vs: Vec<String> = b.vertices.iter().map(|v| v.to_string()).collect();
        assert_eq!(vs, ["1/0", "-1/1", "0/1", "1/1"]);
        assert_eq!(crate::graph::girth(&b.graph), Some(3));
        assert_eq!(link_is_line(&b, FareyVertex::INFINITY), LinkShape::Line);
        assert_eq!(link_is_line(&b, fv(0, 1)), LinkShape::BoundaryInconclusive);
    }

    #[test]
    fn edges_match_brute_force() {
        for qmax in 1..=12 {
            for window in 1..=3 {
                let b = farey_ball(qmax, window).unwrap();
                assert_eq!(b.graph.edges(), brute_edges(&b), "Qmax {qmax} window {window}");
            }
        }
    }

    #[test]
    fn triangles_and_lines() {
        let b = farey_ball(8, DEFAULT_WINDOW).unwrap();
        assert_eq!(link_is_line(&b, fv(0, 1)), LinkShape::Line);
        let tri = [fv(0, 1), fv(1, 1), fv(1, 2)];
        let ids: Vec<usize> = tri.iter().map(|&v| b.index_of(v).unwrap()).collect();
        assert!(b.graph.has_edge(ids[0], ids[1]) && b.graph.has_edge(ids[1], ids[2]) && b.graph.has_edge(ids[0], ids[2]));
        let count = |x: FareyVertex, y: FareyVertex| {
            let (i, j) = (b.index_of(x).unwrap(), b.index_of(y).unwrap());
            b.graph.neighbors(i).iter().filter(|&&z| b.graph.has_edge(j, z)).count()
        };
        assert_eq!(count(fv(0, 1), fv(1, 1)), 2);
        assert_eq!(count(fv(0, 1), FareyVertex::INFINITY), 2);
        let r = edge_two_triangles(&b);
        assert!(r.interior_edges > 0);
        assert!(r.bad.is_empty(), "{:?}", r.bad);
        assert_eq!(interior_four_cycles(&b), 0);
    }

    #[test]
    fn four_cycle_counter() {
        let c4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(induced_four_cycles(&c4, &[true; 4]), 1);
        assert_eq!(induced_four_cycles(&c4, &[true, true, true, false]), 0);
        let mut chorded = c4.clone();
        chorded.add_edge(0, 2);
        assert_eq!(induced_four_cycles(&chorded, &[true; 4]), 0);
        let k24 = SimpleGraph::from_edges(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)]);
        assert_eq!(induced_four_cycles(&k24, &[true; 6]), 6);
    }

    #[test]
    fn boundary_edges_are_excluded() {
        // 1/1 - 2/1 has only one triangle when the window stops at 2
        let b = farey_ball(1, 2).unwrap();
        assert!(!b.is_interior(fv(2, 1)));
        assert!(edge_two_triangles(&b).bad.is_empty());
    }

    #[test]
    fn every_interior_link_is_a_line() {
        for qmax in 1..=12 {
            let b = farey_ball(qmax, DEFAULT_WINDOW).unwrap();
            for &v in &b.vertices {
                let shape = link_is_line(&b, v);
                assert_ne!(shape, LinkShape::NotLine, "{v} at Qmax {qmax}");
                assert_eq!(shape == LinkShape::Line, b.is_interior(v));
            }
        }
    }

    proptest! {
        #[test]
        fn adjacency_symmetric_and_sign_invariant(p in -50i64..50, q in 0i64..50, r in -50i64..50, s in 0i64..50) {
            prop_assume!((p, q) != (0, 0) && (r, s) != (0, 0));
            let (x, y) = (fv(p, q), fv(r, s));
            prop_assert_eq!(adjacent(x, y), adjacent(y, x));
            prop_assert!(!adjacent(x, x));
            prop_assert_eq!(x, fv(-p, -q));
        }
    }
}
