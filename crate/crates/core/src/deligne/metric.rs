//! The fundamental domain `K_Gamma` with its Moussong shapes, and the metric
//! on the link of the apex.
//!
//! Angles are exact rational multiples of `pi`. Lengths carry a closed form
//! and a floating value.

use crate::error::{Error, Result};
use crate::graph::{barycentric_subdivision, triangle_is_two_dimensional, BarVertex, BarycentricGraph, DefiningGraph};
use num_rational::Ratio;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// A rational multiple of `pi`.
pub type PiMultiple = Ratio<i64>;

/// Tolerance for the floating layer of [`Length`].
pub const LENGTH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Length {
    pub expr: String,
    pub value: f64,
}

impl Length {
    pub fn approx_eq(&self, x: f64) -> bool {
        (self.value - x).abs() <= LENGTH_TOLERANCE
    }
}

/// The triangle `T_ab` with vertices `v_0` (apex), `v_a` and `v_ab`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    pub gen: usize,
    pub edge: usize,
    pub angle_apex: PiMultiple,
    pub angle_gen: PiMultiple,
    pub angle_edge: PiMultiple,
    pub apex_gen: Length,
    pub apex_edge: Length,
    pub gen_edge: Length,
}

#[derive(Debug, Clone)]
pub struct FundamentalDomain {
    pub triangles: Vec<Triangle>,
    /// Boundary of `K_Gamma`: the simplices avoiding the apex.
    pub boundary: BarycentricGraph,
}

impl FundamentalDomain {
    pub fn triangle(&self, gen: usize, edge: usize) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.gen == gen && t.edge == edge)
    }
}

fn shape(g: &DefiningGraph, gen: usize, edge: usize) -> Triangle {
    let m = g.edge(edge).m as i64;
    let half = Ratio::new(1, 2);
    let at_edge = Ratio::new(1, 2 * m);
    let theta = PI / (2 * m) as f64;
    Triangle {
        gen,
        edge,
        angle_apex: half - at_edge,
        angle_gen: half,
        angle_edge: at_edge,
        apex_gen: Length { expr: "1".into(), value: 1.0 },
        apex_edge: Length { expr: format!("1/sin(pi/{})", 2 * m), value: 1.0 / theta.sin() },
        gen_edge: Length { expr: format!("1/tan(pi/{})", 2 * m), value: 1.0 / theta.tan() },
    }
}

/// Builds `K_Gamma`. Every triangle of `Gamma` must be two-dimensional.
pub fn fundamental_domain(g: &DefiningGraph) -> Result<FundamentalDomain> {
    for (a, b, c) in g.triangles() {
        let (p, q, r) = (g.label(a, b).unwrap(), g.label(a, c).unwrap(), g.label(b, c).unwrap());
        if !triangle_is_two_dimensional(p, q, r) {
            return Err(Error::pre(format!(
                "triangle {} has labels ({p},{q},{r}) with 1/p+1/q+1/r > 1",
                g.describe_vertices(&[a, b, c])
            )));
        }
    }
    let mut triangles = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        triangles.push(shape(g, e.u, id));
        triangles.push(shape(g, e.v, id));
    }
    Ok(FundamentalDomain { triangles, boundary: barycentric_subdivision(g) })
}

/// `Gamma_bar` with edge `(v_s, v_st)` of length `pi/2 - pi/(2 m_st)`: the
/// link of the apex of `K_Gamma`.
#[derive(Debug, Clone)]
pub struct LinkMetric {
    pub graph: BarycentricGraph,
    /// Per vertex of `graph`: `(neighbour, length)`.
    pub adjacency: Vec<Vec<(usize, PiMultiple)>>,
}

pub fn link_metric_at_apex(g: &DefiningGraph) -> LinkMetric {
    let graph = barycentric_subdivision(g);
    let mut adjacency = vec![Vec::new(); graph.vertices.len()];
    for (id, e) in g.edges().iter().enumerate() {
        let mid = graph.index_of(BarVertex::Edge(id)).expect("edge vertex");
        let len = Ratio::new(1, 2) - Ratio::new(1, 2 * e.m as i64);
        for v in [e.u, e.v] {
            let x = graph.index_of(BarVertex::Vertex(v)).expect("vertex");
            adjacency[x].push((mid, len));
            adjacency[mid].push((x, len));
        }
    }
    LinkMetric { graph, adjacency }
}

impl LinkMetric {
    /// Exact shortest-path distance in multiples of `pi`, `None` when
    /// disconnected.
    pub fn distance(&self, from: usize, to: usize) -> Option<PiMultiple> {
        let n = self.adjacency.len();
        let mut dist: Vec<Option<PiMultiple>> = vec![None; n];
        dist[from] = Some(Ratio::from_integer(0));
        let mut heap = BinaryHeap::from([Reverse((Ratio::from_integer(0), from))]);
        while let Some(Reverse((d, x))) = heap.pop() {
            if dist[x].is_some_and(|best| best < d) {
                continue;
            }
            if x == to {
                return Some(d);
            }
            for &(y, len) in &self.adjacency[x] {
                let nd = d + len;
                if dist[y].map_or(true, |best| nd < best) {
                    dist[y] = Some(nd);
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        dist[to]
    }

    /// Distance between the type-1 vertices `v_a` and `v_b`.
    pub fn vertex_distance(&self, a: usize, b: usize) -> Option<PiMultiple> {
        let x = self.graph.index_of(BarVertex::Vertex(a))?;
        let y = self.graph.index_of(BarVertex::Vertex(b))?;
        self.distance(x, y)
    }
}

/// Non-adjacent pairs `(a, b)` whose apex-link distance is at most `pi`,
/// with that distance (`None` for unreachable, which never violates).
pub fn link_angle_violations(g: &DefiningGraph) -> Vec<(usize, usize, PiMultiple)> {
    let metric = link_metric_at_apex(g);
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.label(a, b).is_some() {
                continue;
            }
            if let Some(d) = metric.vertex_distance(a, b) {
                if d <= Ratio::from_integer(1) {
                    out.push((a, b, d));
                }
            }
        }
    }
    out
}
