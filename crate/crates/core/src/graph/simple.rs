//! Plain undirected simple graphs on `0..n`.

use std::collections::VecDeque;

/// Undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `u -- v`. Loops are ignored; repeated edges are stored once.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        if let Err(i) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(i, v);
        }
        if let Err(i) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(i, u);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `keep` (in the given order); vertex `i` of the
    /// result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = SimpleGraph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if pos[w] != usize::MAX && i < pos[w] {
                    g.add_edge(i, pos[w]);
                }
            }
        }
        g
    }

    /// Connected components among vertices with `alive[v]`, each sorted.
    pub fn components_where(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if !alive[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_where(&vec![true; self.n()])
    }

    /// Connected, with the convention that graphs on at most one vertex are
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connectivity of the subgraph induced on `alive`; at most one live
    /// vertex counts as connected.
    pub fn is_connected_where(&self, alive: &[bool]) -> bool {
        self.components_where(alive).len() <= 1
    }

    /// Two-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// BFS distances from `s` (`usize::MAX` when unreachable).
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices lying on at least one embedded cycle of length five.
    pub fn on_five_cycle(&self) -> Vec<bool> {
        (0..self.n())
            .map(|v| {
                let nb = &self.adj[v];
                nb.iter().enumerate().any(|(i, &w)| {
                    nb[i + 1..]
                        .iter()
                        .any(|&w2| self.has_three_path_avoiding(w, w2, v))
                })
            })
            .collect()
    }

    /// Is there a path `w - x - y - w2` with all four vertices distinct and
    /// different from `avoid`?
    fn has_three_path_avoiding(&self, w: usize, w2: usize, avoid: usize) -> bool {
        self.adj[w].iter().any(|&x| {
            x != avoid
                && x != w2
                && self.adj[x]
                    .iter()
                    .any(|&y| y != avoid && y != w && y != w2 && self.has_edge(y, w2))
        })
    }
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    let mut best = usize::MAX;
    let n = g.n();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// The modified link of `v`: neighbours of `v` lying on some embedded
/// 5-cycle, joined when they are consecutive around an embedded 5-cycle
/// through `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedLink {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

pub fn modified_link(g: &SimpleGraph, v: usize) -> ModifiedLink {
    let on5 = g.on_five_cycle();
    let vertices: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| on5[w]).collect();
    let mut edges = Vec::new();
    for (i, &w) in vertices.iter().enumerate() {
        for &w2 in &vertices[i + 1..] {
            if g.has_three_path_avoiding(w, w2, v) {
                edges.push((w, w2));
            }
        }
    }
    ModifiedLink { vertices, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        for n in 3..9 {
            assert_eq!(girth(&cycle(n)), Some(n));
        }
        let path = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(girth(&path), None);
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(girth(&k4), Some(3));
    }

    #[test]
    fn girth_of_petersen() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(girth(&SimpleGraph::from_edges(10, &e)), Some(5));
    }

    #[test]
    fn pentagon_modified_link() {
        let g = cycle(5);
        let ml = modified_link(&g, 0);
        assert_eq!(ml.vertices, vec![1, 4]);
        assert_eq!(ml.edges, vec![(1, 4)]);
    }

    #[test]
    fn hexagon_modified_link_is_empty() {
        let ml = modified_link(&cycle(6), 0);
        assert!(ml.vertices.is_empty());
        assert!(ml.edges.is_empty());
    }

    #[test]
    fn bipartite_and_components() {
        assert!(cycle(6).is_bipartite());
        assert!(!cycle(5).is_bipartite());
        let g = SimpleGraph::from_edges(5, &[(0, 1), (3, 4)]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(SimpleGraph::new(1).is_connected());
        assert!(SimpleGraph::new(0).is_connected());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = cycle(5);
        let h = g.induced(&[0, 1, 2]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
    }
}
