//! Standard trees inside a ball, and link girth of residues.
//!
//! The type-1 vertex `g <w>` lies on the standard tree `Fix(g w g^-1)`.
//! Inside a residue with base `b`, a member `b h <w>` sits on the tree of
//! `b (h w h^-1) b^-1`, and `h w h^-1` is a dihedral element in normal form,
//! so trees are followed exactly across residues. Pieces that only meet
//! outside the ball are merged when their descriptors are proved equal.

use super::ball::DeligneBall;
use crate::dihedral::{self, DihedralElement};
use crate::error::{Error, Result};
use crate::graph::{girth, DefiningGraph, SimpleGraph};
use crate::oracle::{GroupWord, Letter, Verdict};
use std::collections::{HashMap, VecDeque};

/// Unbounded standard trees are exactly those of large generators.
pub fn is_standard_tree_infinite(g: &DefiningGraph, a: usize) -> bool {
    g.is_large_generator(a)
}

/// The portion of one standard tree inside a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTree {
    pub id: usize,
    pub gen: usize,
    /// `rep * gen * rep^-1` for a member type-1 vertex.
    pub descriptor: GroupWord,
    pub type1: Vec<usize>,
    pub type2: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn unite(parent: &mut [usize], x: usize, y: usize) {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx != ry {
        parent[rx.max(ry)] = rx.min(ry);
    }
}

fn conjugate_word(rep: &GroupWord, gen: usize) -> GroupWord {
    let mut w = rep.clone();
    w.0.push(Letter::pos(gen));
    w.concat(&rep.inverse())
}

/// Standard trees of large generators meeting the ball. Fails when two
/// pieces could not be proved equal or distinct.
pub fn standard_trees(ball: &DeligneBall) -> Result<Vec<StandardTree>> {
    let g = &ball.graph;
    let n1 = ball.type1.len();
    let mut parent: Vec<usize> = (0..n1).collect();
    for v in &ball.type2 {
        let edge = g.edge(v.edge);
        let mut seen: HashMap<DihedralElement, usize> = HashMap::new();
        for (c, h) in &v.chambers {
            for (idx, w) in [(0u8, edge.u), (1u8, edge.v)] {
                if !g.is_large_generator(w) {
                    continue;
                }
                let key = h.mul(&DihedralElement::generator(edge.m, idx)).mul(&h.inv());
                let t = ball.type1_of(*c, w);
                match seen.get(&key) {
                    Some(&t0) => unite(&mut parent, t0, t),
                    None => {
                        seen.insert(key, t);
                    }
                }
            }
        }
    }
    let mut pieces: Vec<usize> = (0..n1)
        .filter(|&t| g.is_large_generator(ball.type1[t].gen) && find(&mut parent, t) == t)
        .collect();
    pieces.sort_unstable();
    let oracle = ball.oracle();
    let rep = oracle.rep().expect("ball has a representation");
    let descriptor = |t: usize| {
        let v = &ball.type1[t];
        conjugate_word(&ball.chambers[v.base].rep, v.gen)
    };
    let mut by_image: HashMap<_, Vec<usize>> = HashMap::new();
    for &p in &pieces {
        let d = descriptor(p);
        let img = rep.image(&d);
        let mut target = None;
        for &q in by_image.get(&img).map(Vec::as_slice).unwrap_or(&[]) {
            match oracle.equal(&d, &descriptor(q)) {
                Verdict::Equal(_) => {
                    target = Some(q);
                    break;
                }
                Verdict::Distinct(_) => {}
                Verdict::Unknown { .. } => {
                    return Err(Error::Unresolved(format!(
                        "standard trees through type-1 vertices {q} and {p} may coincide"
                    )))
                }
            }
        }
        match target {
            Some(q) => unite(&mut parent, q, p),
            None => by_image.entry(img).or_default().push(p),
        }
    }
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut trees: Vec<StandardTree> = Vec::new();
    for t in 0..n1 {
        if !g.is_large_generator(ball.type1[t].gen) {
            continue;
        }
        let r = find(&mut parent, t);
        let id = *index.entry(r).or_insert_with(|| {
            trees.push(StandardTree {
                id: trees.len(),
                gen: ball.type1[r].gen,
                descriptor: descriptor(r),
                type1: Vec::new(),
                type2: Vec::new(),
            });
            trees.len() - 1
        });
        trees[id].type1.push(t);
    }
    for tree in &mut trees {
        let mut d2 = Vec::new();
        for &t in &tree.type1 {
            let v = &ball.type1[t];
            for &(c, _) in &v.chambers {
                for (e, edge) in g.edges().iter().enumerate() {
                    if edge.contains(v.gen) {
                        d2.push(ball.type2_of(c, e));
                    }
                }
            }
        }
        d2.sort_unstable();
        d2.dedup();
        tree.type2 = d2;
    }
    Ok(trees)
}

/// Index of the tree through each type-1 vertex (`None` for generators
/// with bounded trees).
pub fn tree_of_type1(ball: &DeligneBall, trees: &[StandardTree]) -> Vec<Option<usize>> {
    let mut out = vec![None; ball.type1.len()];
    for t in trees {
        for &x in &t.type1 {
            out[x] = Some(t.id);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceVertex {
    Type1(usize),
    Type2(usize),
}

/// Part of a standard tree around a seed, up to a combinatorial depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTreeSlice {
    pub root: usize,
    pub descriptor: GroupWord,
    /// In BFS order from the root.
    pub vertices: Vec<SliceVertex>,
    /// Pairs of positions in `vertices`.
    pub edges: Vec<(usize, usize)>,
}

impl StandardTreeSlice {
    /// Connected, acyclic and alternating in type.
    pub fn is_alternating_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let graph = SimpleGraph::from_edges(n, &self.edges);
        graph.is_connected()
            && self.edges.iter().all(|&(x, y)| {
                matches!(
                    (self.vertices[x], self.vertices[y]),
                    (SliceVertex::Type1(_), SliceVertex::Type2(_)) | (SliceVertex::Type2(_), SliceVertex::Type1(_))
                )
            })
    }
}

/// The slice of the standard tree through the type-1 vertex `seed`, to
/// `depth` steps. Membership is decided inside each residue by the
/// dihedral engine.
pub fn standard_tree_slice(ball: &DeligneBall, seed: usize, depth: usize) -> Result<StandardTreeSlice> {
    let g = &ball.graph;
    let seed_v = &ball.type1[seed];
    let descriptor = conjugate_word(&ball.chambers[seed_v.base].rep, seed_v.gen);
    let mut pos: HashMap<SliceVertex, usize> = HashMap::new();
    let mut vertices = vec![SliceVertex::Type1(seed)];
    pos.insert(SliceVertex::Type1(seed), 0);
    let mut edges = Vec::new();
    // entries carry the type-1 vertex a type-2 vertex was reached from
    let mut queue = VecDeque::from([(SliceVertex::Type1(seed), 0usize, seed)]);
    while let Some((x, d, from)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        let mut next: Vec<SliceVertex> = Vec::new();
        match x {
            SliceVertex::Type1(t) => {
                let v = &ball.type1[t];
                let c = v.chambers[0].0;
                for (e, edge) in g.edges().iter().enumerate() {
                    if edge.contains(v.gen) {
                        next.push(SliceVertex::Type2(ball.type2_of(c, e)));
                    }
                }
            }
            SliceVertex::Type2(s) => {
                let v = &ball.type2[s];
                let edge = g.edge(v.edge);
                let conj = |h: &DihedralElement, idx: u8| h.mul(&DihedralElement::generator(edge.m, idx)).mul(&h.inv());
                let gen = ball.type1[from].gen;
                let idx = if gen == edge.u { 0u8 } else { 1u8 };
                let Some(key) = v
                    .chambers
                    .iter()
                    .find(|(c, _)| ball.type1_of(*c, gen) == from)
                    .map(|(_, h)| conj(h, idx))
                else {
                    continue;
                };
                for (c, h) in &v.chambers {
                    for (i, w) in [(0u8, edge.u), (1u8, edge.v)] {
                        if conj(h, i) == key {
                            next.push(SliceVertex::Type1(ball.type1_of(*c, w)));
                        }
                    }
                }
            }
        }
        next.sort_by_key(|y| match y {
            SliceVertex::Type1(i) => (1, *i),
            SliceVertex::Type2(i) => (2, *i),
        });
        next.dedup();
        let px = pos[&x];
        for y in next {
            match pos.get(&y) {
                Some(&py) => {
                    if !edges.contains(&(px.min(py), px.max(py))) && py != px {
                        edges.push((px.min(py), px.max(py)));
                    }
                }
                None => {
                    let py = vertices.len();
                    vertices.push(y);
                    pos.insert(y, py);
                    edges.push((px.min(py), px.max(py)));
                    let from = match x {
                        SliceVertex::Type1(t) => t,
                        SliceVertex::Type2(_) => from,
                    };
                    queue.push_back((y, d + 1, from));
                }
            }
        }
    }
    Ok(StandardTreeSlice { root: seed, descriptor, vertices, edges })
}

/// Girth of the link of a type-2 vertex restricted to its interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueGirth {
    /// `None` when no cycle lies in the interior.
    pub girth: Option<usize>,
    pub interior_chambers: usize,
}

/// Link of an explored type-2 vertex: type-0 vertices (chambers) and type-1
/// vertices of the residue, restricted to chambers at dihedral distance
/// below the residue radius from the explored base.
pub fn residue_link_girth(ball: &DeligneBall, vertex: usize) -> Result<ResidueGirth> {
    let v = &ball.type2[vertex];
    if !v.explored {
        return Err(Error::pre(format!("type-2 vertex {vertex} was not explored")));
    }
    let g = &ball.graph;
    let edge = g.edge(v.edge);
    let radius = ball.config.residue_radius;
    let lengths: HashMap<DihedralElement, usize> = dihedral::ball(edge.m, radius)?
        .into_iter()
        .map(|x| {
            let len = x.word.len();
            (x.element, len)
        })
        .collect();
    // explored base: a member whose offsets reach the whole radius ball
    let base = v
        .chambers
        .iter()
        .find(|(_, h0)| {
            let inv = h0.inv();
            lengths.keys().all(|x| v.chambers.iter().any(|(_, h)| inv.mul(h) == *x))
        })
        .map(|(_, h)| h.inv())
        .ok_or_else(|| Error::pre("residue is not complete to its radius"))?;
    let mut index: HashMap<(u8, usize), usize> = HashMap::new();
    let mut graph = SimpleGraph::new(0);
    let mut interior = 0;
    for (c, h) in &v.chambers {
        let rel = base.mul(h);
        if lengths.get(&rel).map_or(true, |&l| l >= radius) {
            continue;
        }
        interior += 1;
        let cv = graph.add_vertex();
        for w in [edge.u, edge.v] {
            let t = ball.type1_of(*c, w);
            let tv = *index.entry((1, t)).or_insert_with(|| graph.add_vertex());
            graph.add_edge(cv, tv);
        }
    }
    Ok(ResidueGirth { girth: girth(&graph), interior_chambers: interior })
}
