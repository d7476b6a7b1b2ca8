//! Labelled defining graphs, their text format and combinatorial invariants.
//!
//! Vertices are indexed `0..n` in declaration order. A missing edge stands for
//! the label `infinity`.

mod simple;

pub use simple::{girth, modified_link, ModifiedLink, SimpleGraph};

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// An edge `u -- v` with label `m`, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub m: u32,
}

impl Edge {
    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Finite simplicial graph with edge labels `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    label: Vec<Vec<u32>>,
    edge_id: Vec<Vec<Option<usize>>>,
    edges: Vec<Edge>,
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl DefiningGraph {
    pub fn new() -> Self {
        DefiningGraph {
            names: Vec::new(),
            index: HashMap::new(),
            label: Vec::new(),
            edge_id: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if !valid_ident(name) {
            return Err(Error::Input(format!("bad vertex name {name:?}")));
        }
        if self.index.contains_key(name) {
            return Err(Error::Input(format!("duplicate vertex {name}")));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        for row in &mut self.label {
            row.push(0);
        }
        for row in &mut self.edge_id {
            row.push(None);
        }
        self.label.push(vec![0; id + 1]);
        self.edge_id.push(vec![None; id + 1]);
        Ok(id)
    }

    pub fn add_edge(&mut self, a: usize, b: usize, m: u32) -> Result<usize> {
        if a == b {
            return Err(Error::Input("self-loop".into()));
        }
        if m < 2 {
            return Err(Error::Input(format!("label {m} < 2")));
        }
        if self.label[a][b] != 0 {
            return Err(Error::Input("duplicate edge".into()));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let id = self.edges.len();
        self.edges.push(Edge { u, v, m });
        self.label[a][b] = m;
        self.label[b][a] = m;
        self.edge_id[a][b] = Some(id);
        self.edge_id[b][a] = Some(id);
        Ok(id)
    }

    /// Builds a graph from names and `(name, name, m)` triples.
    pub fn build(vertices: &[&str], edges: &[(&str, &str, u32)]) -> Result<Self> {
        let mut g = DefiningGraph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for &(a, b, m) in edges {
            let a = g.vertex(a).ok_or_else(|| Error::Input(format!("unknown {a}")))?;
            let b = g.vertex(b).ok_or_else(|| Error::Input(format!("unknown {b}")))?;
            g.add_edge(a, b, m)?;
        }
        Ok(g)
    }

    /// Parses the `artin-graph v1` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut g = DefiningGraph::new();
        let mut seen_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if !seen_header {
                if tokens != ["artin-graph", "v1"] {
                    return Err(Error::parse(line_no, "expected header `artin-graph v1`"));
                }
                seen_header = true;
                continue;
            }
            match tokens[0] {
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(Error::parse(line_no, "expected `vertex <id>`"));
                    }
                    if !valid_ident(tokens[1]) {
                        return Err(Error::parse(line_no, format!("bad identifier {}", tokens[1])));
                    }
                    if g.index.contains_key(tokens[1]) {
                        return Err(Error::parse(line_no, format!("duplicate vertex {}", tokens[1])));
                    }
                    g.add_vertex(tokens[1])?;
                }
                "edge" => {
                    if tokens.len() != 4 {
                        return Err(Error::parse(line_no, "expected `edge <id> <id> <m>`"));
                    }
                    let lookup = |name: &str| {
                        g.vertex(name).ok_or_else(|| {
                            Error::parse(line_no, format!("vertex {name} used before declaration"))
                        })
                    };
                    let a = lookup(tokens[1])?;
                    let b = lookup(tokens[2])?;
                    if a == b {
                        return Err(Error::parse(line_no, "self-loop"));
                    }
                    let m: u32 = match tokens[3].parse() {
                        Ok(m) if m >= 2 => m,
                        _ => {
                            return Err(Error::Label {
                                line: line_no,
                                label: tokens[3].to_string(),
                            })
                        }
                    };
                    if g.label[a][b] != 0 {
                        return Err(Error::parse(line_no, "duplicate edge"));
                    }
                    g.add_edge(a, b, m)?;
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown directive {other}")));
                }
            }
        }
        if !seen_header {
            return Err(Error::parse(0, "missing header `artin-graph v1`"));
        }
        Ok(g)
    }

    /// Serialises to the text format; `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("artin-graph v1\n");
        for name in &self.names {
            s.push_str(&format!("vertex {name}\n"));
        }
        for e in &self.edges {
            s.push_str(&format!("edge {} {} {}\n", self.names[e.u], self.names[e.v], e.m));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Label of `u -- v`, `None` for non-edges (label infinity).
    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        match self.label[u][v] {
            0 => None,
            m => Some(m),
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            None
        } else {
            self.edge_id[u][v]
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&w| self.label[v][w] != 0).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.label[v].iter().filter(|&&m| m != 0).count()
    }

    /// Underlying unlabelled graph.
    pub fn simple(&self) -> SimpleGraph {
        let e: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        SimpleGraph::from_edges(self.n(), &e)
    }

    /// Full subgraph on `keep`, names preserved.
    pub fn induced(&self, keep: &[usize]) -> DefiningGraph {
        let mut g = DefiningGraph::new();
        for &v in keep {
            g.add_vertex(&self.names[v]).expect("names are unique");
        }
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if let Some(m) = self.label(a, b) {
                    g.add_edge(i, j, m).expect("edge is new");
                }
            }
        }
        g
    }

    /// Triangles `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.label[a][b] == 0 {
                    continue;
                }
                for c in b + 1..n {
                    if self.label[a][c] != 0 && self.label[b][c] != 0 {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edges.len() + 1 == self.n() && self.simple().is_connected()
    }

    /// All labels at least 3 (label 2 edges are accepted on input but are
    /// not large type).
    pub fn is_large_type(&self) -> bool {
        self.edges.iter().all(|e| e.m >= 3)
    }

    pub fn require_large_type(&self) -> Result<()> {
        if self.is_large_type() {
            Ok(())
        } else {
            Err(Error::pre("graph has an edge labelled 2; large type required"))
        }
    }

    /// Is `v` a generator whose standard trees are unbounded: not isolated
    /// and not the tip of an even-labelled leaf edge.
    pub fn is_large_generator(&self, v: usize) -> bool {
        let deg = self.degree(v);
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            let w = self.neighbors(v)[0];
            if self.label[v][w] % 2 == 0 {
                return false;
            }
        }
        true
    }

    pub fn describe_vertices(&self, vs: &[usize]) -> String {
        let names: Vec<&str> = vs.iter().map(|&v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl Default for DefiningGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Summary flags of a defining graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub large_type: bool,
    pub xxxl: bool,
    pub triangle_free: bool,
    pub two_dimensional: bool,
    pub hyperbolic_type: bool,
    pub connected: bool,
    pub leaf_vertices: Vec<usize>,
    pub isolated_vertices: Vec<usize>,
    pub separating_vertices: Vec<usize>,
    pub separating_edges: Vec<usize>,
    pub twistless: bool,
    pub large_generators: Vec<usize>,
}

/// `1/p + 1/q + 1/r <= 1`.
pub fn triangle_is_two_dimensional(p: u32, q: u32, r: u32) -> bool {
    let (p, q, r) = (p as u64, q as u64, r as u64);
    q * r + p * r + p * q <= p * q * r
}

pub fn classify(g: &DefiningGraph) -> ClassificationReport {
    let s = g.simple();
    let n = g.n();
    let tris = g.triangles();
    let label = |a: usize, b: usize| g.label(a, b).unwrap_or(0);
    let two_dimensional = tris
        .iter()
        .all(|&(a, b, c)| triangle_is_two_dimensional(label(a, b), label(b, c), label(a, c)));
    let has_333 = tris
        .iter()
        .any(|&(a, b, c)| label(a, b) == 3 && label(b, c) == 3 && label(a, c) == 3);
    let large_type = g.is_large_type();
    let separating_vertices = separating_vertices(&s);
    let separating_edges: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let mut alive = vec![true; n];
            alive[e.u] = false;
            alive[e.v] = false;
            !s.is_connected_where(&alive)
        })
        .map(|(i, _)| i)
        .collect();
    ClassificationReport {
        large_type,
        xxxl: g.edges().iter().all(|e| e.m >= 6),
        triangle_free: tris.is_empty(),
        two_dimensional,
        hyperbolic_type: large_type && !has_333,
        connected: s.is_connected(),
        leaf_vertices: (0..n).filter(|&v| s.degree(v) == 1).collect(),
        isolated_vertices: (0..n).filter(|&v| s.degree(v) == 0).collect(),
        twistless: separating_vertices.is_empty() && separating_edges.is_empty(),
        separating_vertices,
        separating_edges,
        large_generators: (0..n).filter(|&v| g.is_large_generator(v)).collect(),
    }
}

/// Vertices whose removal disconnects the rest (graphs on at most one
/// vertex count as connected).
pub fn separating_vertices(s: &SimpleGraph) -> Vec<usize> {
    (0..s.n())
        .filter(|&v| {
            let mut alive = vec![true; s.n()];
            alive[v] = false;
            !s.is_connected_where(&alive)
        })
        .collect()
}

/// Vertex of the barycentric subdivision: an original vertex or the midpoint
/// of an edge (by edge id).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarVertex {
    Vertex(usize),
    Edge(usize),
}

#[derive(Debug, Clone)]
pub struct BarycentricGraph {
    pub vertices: Vec<BarVertex>,
    pub graph: SimpleGraph,
}

impl BarycentricGraph {
    pub fn index_of(&self, x: BarVertex) -> Option<usize> {
        self.vertices.iter().position(|&y| y == x)
    }
}

/// Original vertices first (in order), then one midpoint per edge.
pub fn barycentric_subdivision(g: &DefiningGraph) -> BarycentricGraph {
    let n = g.n();
    let mut vertices: Vec<BarVertex> = (0..n).map(BarVertex::Vertex).collect();
    let mut graph = SimpleGraph::new(n + g.edges().len());
    for (i, e) in g.edges().iter().enumerate() {
        vertices.push(BarVertex::Edge(i));
        graph.add_edge(e.u, n + i);
        graph.add_edge(e.v, n + i);
    }
    BarycentricGraph { vertices, graph }
}

/// Label-preserving bijections `phi: V(g1) -> V(g2)` (as image vectors),
/// respecting `fixed` (pairs `(v, phi(v))`), found by backtracking. Stops
/// after `limit` solutions.
fn label_maps(
    g1: &DefiningGraph,
    g2: &DefiningGraph,
    fixed: &[(usize, usize)],
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = g1.n();
    if n != g2.n() || g1.edges().len() != g2.edges().len() {
        return Vec::new();
    }
    let signature = |g: &DefiningGraph, v: usize| {
        let mut ls: Vec<u32> = (0..g.n()).filter_map(|w| g.label(v, w)).collect();
        ls.sort_unstable();
        ls
    };
    let sig1: Vec<_> = (0..n).map(|v| signature(g1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| signature(g2, v)).collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in fixed {
        if sig1[a] != sig2[b] || (phi[a] != usize::MAX && phi[a] != b) || (used[b] && phi[a] != b) {
            return Vec::new();
        }
        phi[a] = b;
        used[b] = true;
    }
    for &(a, _) in fixed {
        for &(c, _) in fixed {
            if g1.label(a, c) != g2.label(phi[a], phi[c]) {
                return Vec::new();
            }
        }
    }
    let order: Vec<usize> = (0..n).filter(|&v| phi[v] == usize::MAX).collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        order: &[usize],
        g1: &DefiningGraph,
        g2: &DefiningGraph,
        sig1: &[Vec<u32>],
        sig2: &[Vec<u32>],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == order.len() {
            out.push(phi.clone());
            return;
        }
        let v = order[k];
        for w in 0..g2.n() {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            let ok = (0..g1.n())
                .all(|u| phi[u] == usize::MAX || g1.label(v, u) == g2.label(w, phi[u]));
            if !ok {
                continue;
            }
            phi[v] = w;
            used[w] = true;
            rec(k + 1, order, g1, g2, sig1, sig2, phi, used, out, limit);
            phi[v] = usize::MAX;
            used[w] = false;
        }
    }
    rec(0, &order, g1, g2, &sig1, &sig2, &mut phi, &mut used, &mut out, limit);
    out
}

/// All label-preserving automorphisms, identity included, in lexicographic
/// order of image vectors.
pub fn label_automorphisms(g: &DefiningGraph) -> Vec<Vec<usize>> {
    let mut all = label_maps(g, g, &[], usize::MAX);
    all.sort();
    all
}

/// A label-preserving isomorphism `g1 -> g2`, if any.
pub fn label_isomorphism(g1: &DefiningGraph, g2: &DefiningGraph) -> Option<Vec<usize>> {
    label_maps(g1, g2, &[], 1).into_iter().next()
}

/// Which star is held fixed in the rigidity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarMode {
    /// `v`, its neighbours and all edges among them.
    #[default]
    Closed,
    /// `v` and its incident edges only.
    Open,
}

/// Outcome of the star rigidity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarRigidity {
    pub rigid: bool,
    /// A vertex `v` and a non-trivial automorphism fixing its star.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// Vertices pinned by an automorphism that fixes the star of `v` pointwise.
pub fn star_vertices(g: &DefiningGraph, v: usize, mode: StarMode) -> Vec<usize> {
    // An automorphism fixing an edge pointwise fixes both endpoints, so both
    // readings pin `v` and all of its neighbours.
    let _ = mode;
    let mut s = vec![v];
    s.extend(g.neighbors(v));
    s.sort_unstable();
    s
}

/// Non-trivial label automorphisms fixing the star of `v` pointwise.
pub fn star_fixing_automorphisms(g: &DefiningGraph, v: usize, mode: StarMode) -> Vec<Vec<usize>> {
    let fixed: Vec<(usize, usize)> = star_vertices(g, v, mode).into_iter().map(|x| (x, x)).collect();
    let identity: Vec<usize> = (0..g.n()).collect();
    let mut all: Vec<_> = label_maps(g, g, &fixed, usize::MAX)
        .into_iter()
        .filter(|p| *p != identity)
        .collect();
    all.sort();
    all
}

/// Star rigid: the only label automorphism fixing some star pointwise is the
/// identity. The witness is the first vertex (in order) admitting a
/// non-trivial one.
pub fn is_star_rigid(g: &DefiningGraph, mode: StarMode) -> StarRigidity {
    for v in 0..g.n() {
        if let Some(p) = star_fixing_automorphisms(g, v, mode).into_iter().next() {
            return StarRigidity {
                rigid: false,
                witness: Some((v, p)),
            };
        }
    }
    StarRigidity {
        rigid: true,
        witness: None,
    }
}
