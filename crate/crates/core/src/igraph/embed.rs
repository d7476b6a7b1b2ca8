//! Typed subgraph embeddings (not necessarily induced) by backtracking.

use super::IKind;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Default cap on backtracking nodes per search.
pub const EMBED_BUDGET: usize = 50_000_000;

/// A small graph whose vertices carry a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedPattern {
    pub names: Vec<String>,
    pub kinds: Vec<IKind>,
    pub graph: SimpleGraph,
}

impl TypedPattern {
    pub fn new() -> Self {
        TypedPattern { names: Vec::new(), kinds: Vec::new(), graph: SimpleGraph::new(0) }
    }

    pub fn add(&mut self, name: impl Into<String>, kind: IKind) -> usize {
        self.names.push(name.into());
        self.kinds.push(kind);
        self.graph.add_vertex()
    }

    pub fn link(&mut self, x: usize, y: usize) {
        self.graph.add_edge(x, y);
    }

    /// Same graph with T and D exchanged.
    pub fn swapped(&self) -> Self {
        let kinds = self
            .kinds
            .iter()
            .map(|k| match k {
                IKind::T => IKind::D,
                IKind::D => IKind::T,
                IKind::E => IKind::E,
            })
            .collect();
        TypedPattern { names: self.names.clone(), kinds, graph: self.graph.clone() }
    }

    /// Parses `node <name> T|D|E` and `link <name> <name>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = TypedPattern::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let err = |r: &str| Error::Parse { line: i + 1, reason: r.to_string() };
            match parts.as_slice() {
                ["node", name, kind] => {
                    if p.names.iter().any(|n| n == name) {
                        return Err(err("duplicate node"));
                    }
                    let kind = match *kind {
                        "T" => IKind::T,
                        "D" => IKind::D,
                        "E" => IKind::E,
                        _ => return Err(err("kind must be T, D or E")),
                    };
                    p.add(*name, kind);
                }
                ["link", x, y] => {
                    let find = |n: &str| p.names.iter().position(|m| m == n);
                    match (find(x), find(y)) {
                        (Some(a), Some(b)) if a != b => p.link(a, b),
                        _ => return Err(err("link needs two declared, distinct nodes")),
                    }
                }
                _ => return Err(err("expected `node <name> <kind>` or `link <name> <name>`")),
            }
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (name, kind) in self.names.iter().zip(&self.kinds) {
            s.push_str(&format!("node {name} {kind:?}\n"));
        }
        for (x, y) in self.graph.edges() {
            s.push_str(&format!("link {} {}\n", self.names[x], self.names[y]));
        }
        s
    }
}

impl Default for TypedPattern {
    fn default() -> Self {
        Self::new()
    }
}

/// Search order: repeatedly the unplaced vertex with most placed
/// neighbours, ties to the lower index.
fn order(p: &SimpleGraph) -> Vec<usize> {
    let n = p.n();
    let mut placed = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let k = p.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (k, std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        out.push(next);
    }
    out
}

struct Search<'a> {
    pattern: &'a TypedPattern,
    host_kinds: &'a [IKind],
    host: &'a SimpleGraph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: usize,
    budget: usize,
    limit: usize,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn fits(&self, p: usize, h: usize) -> bool {
        !self.used[h]
            && self.host_kinds[h] == self.pattern.kinds[p]
            && self.host.degree(h) >= self.pattern.graph.degree(p)
            && self
                .pattern
                .graph
                .neighbors(p)
                .iter()
                .all(|&q| self.map[q] == usize::MAX || self.host.has_edge(self.map[q], h))
    }

    fn run(&mut self, i: usize) -> Result<()> {
        if self.out.len() >= self.limit {
            return Ok(());
        }
        if i == self.order.len() {
            self.out.push(self.map.clone());
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Size { what: "subgraph search nodes", actual: self.nodes, limit: self.budget });
        }
        let p = self.order[i];
        let anchor = self.pattern.graph.neighbors(p).iter().copied().find(|&q| self.map[q] != usize::MAX);
        let candidates: Vec<usize> = match anchor {
            Some(q) => self.host.neighbors(self.map[q]).to_vec(),
            None => (0..self.host.n()).collect(),
        };
        for h in candidates {
            if self.fits(p, h) {
                self.map[p] = h;
                self.used[h] = true;
                self.run(i + 1)?;
                self.used[h] = false;
                self.map[p] = usize::MAX;
                if self.out.len() >= self.limit {
                    break;
                }
            }
        }
        Ok(())
    }
}

/// Injective, kind-preserving maps sending pattern edges to host edges.
/// Stops after `limit` maps; errors beyond `budget` search nodes.
pub fn find_embeddings(
    pattern: &TypedPattern,
    host_kinds: &[IKind],
    host: &SimpleGraph,
    limit: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut s = Search {
        pattern,
        host_kinds,
        host,
        order: order(&pattern.graph),
        map: vec![usize::MAX; pattern.graph.n()],
        used: vec![false; host.n()],
        nodes: 0,
        budget,
        limit,
        out: Vec::new(),
    };
    if pattern.graph.n() > 0 {
        s.run(0)?;
    }
    Ok(s.out)
}

/// Embeddings with distinct images (vertex and edge sets).
pub fn distinct_images(pattern: &TypedPattern, maps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in maps {
        let mut vs = m.clone();
        vs.sort_unstable();
        let mut es: Vec<(usize, usize)> = pattern
            .graph
            .edges()
            .into_iter()
            .map(|(x, y)| (m[x].min(m[y]), m[x].max(m[y])))
            .collect();
        es.sort_unstable();
        if seen.insert((vs, es)) {
            out.push(m.clone());
        }
    }
    out
}
