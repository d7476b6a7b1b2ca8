//! Decompositions of defining graphs and twistless hierarchies.
//!
//! Vertex sets are `u32` bitmasks internally, so graphs are capped at
//! [`HIERARCHY_CAP`] vertices (and at most 32 in any case).

use crate::error::{Error, Result};
use crate::graph::{DefiningGraph, SimpleGraph};
use std::collections::HashMap;
use std::fmt::Write;

pub const HIERARCHY_CAP: usize = 16;
pub const C1_CAP: usize = 10;

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_of(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// `Gamma = Gamma1 cup Gamma2` with both full and proper, every edge inside
/// one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub intersection: Vec<usize>,
}

impl Decomposition {
    /// Intersection neither empty, nor a vertex, nor an edge.
    pub fn is_twistless(&self, g: &DefiningGraph) -> bool {
        intersection_twistless(g, &self.intersection)
    }
}

fn intersection_twistless(g: &DefiningGraph, s: &[usize]) -> bool {
    match s {
        [] | [_] => false,
        [u, v] => g.label(*u, *v).is_none(),
        _ => true,
    }
}

struct Ctx<'a> {
    g: &'a DefiningGraph,
    adj: Vec<u32>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a DefiningGraph) -> Self {
        let adj = (0..g.n())
            .map(|v| mask_of(&g.neighbors(v)))
            .collect();
        Ctx { g, adj }
    }

    /// Components of the subgraph induced on `mask`, ordered by least vertex.
    fn components(&self, mask: u32) -> Vec<u32> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[v] & mask & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn connected(&self, mask: u32) -> bool {
        self.components(mask).len() <= 1
    }

    /// No separating vertex and no separating (closed) edge.
    fn twistless(&self, mask: u32) -> bool {
        for v in bits(mask) {
            if !self.connected(mask & !(1 << v)) {
                return false;
            }
            for w in bits(self.adj[v] & mask) {
                if v < w && !self.connected(mask & !(1 << v) & !(1 << w)) {
                    return false;
                }
            }
        }
        true
    }

    /// Least centre `v` with `mask` the closed star of `v`, when the induced
    /// subgraph is twistless.
    fn star_center(&self, mask: u32) -> Option<usize> {
        let center = bits(mask)
            .into_iter()
            .find(|&v| mask & !(1 << v) & !self.adj[v] == 0)?;
        self.twistless(mask).then_some(center)
    }

    /// Decompositions of the subgraph induced on `mask`, ordered by separator
    /// size, then separator vertex list, then partition index.
    fn decompositions(&self, mask: u32, twistless_only: bool) -> Vec<(u32, u32, u32)> {
        let verts = bits(mask);
        let n = verts.len();
        let mut seps: Vec<u32> = (0u64..(1u64 << n))
            .map(|sub| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sub >> i & 1 == 1)
                    .fold(0u32, |m, (_, &v)| m | 1 << v)
            })
            .collect();
        seps.sort_by_key(|&s| (s.count_ones(), bits(s)));
        let mut out = Vec::new();
        for s in seps {
            if twistless_only && !intersection_twistless(self.g, &bits(s)) {
                continue;
            }
            let comps = self.components(mask & !s);
            let k = comps.len();
            if k < 2 {
                continue;
            }
            // components[0] always sits in gamma1; gamma2 must be non-empty
            for sub in 0u64..(1u64 << (k - 1)) - 1 {
                let mut g1 = s | comps[0];
                let mut g2 = s;
                for (i, &c) in comps.iter().enumerate().skip(1) {
                    if sub >> (i - 1) & 1 == 1 {
                        g1 |= c;
                    } else {
                        g2 |= c;
                    }
                }
                out.push((g1, g2, s));
            }
        }
        out
    }
}

fn check_size(g: &DefiningGraph, cap: usize) -> Result<()> {
    let limit = cap.min(32);
    if g.n() > limit {
        return Err(Error::Size { what: "defining graph vertices", actual: g.n(), limit });
    }
    Ok(())
}

/// All decompositions (up to swapping the sides), optionally only twistless
/// ones.
pub fn admissible_decompositions(g: &DefiningGraph, twistless_only: bool) -> Result<Vec<Decomposition>> {
    check_size(g, HIERARCHY_CAP)?;
    let ctx = Ctx::new(g);
    let all = mask_of(&(0..g.n()).collect::<Vec<_>>());
    Ok(ctx
        .decompositions(all, twistless_only)
        .into_iter()
        .map(|(a, b, s)| Decomposition { gamma1: bits(a), gamma2: bits(b), intersection: bits(s) })
        .collect())
}

/// Binary tree of twistless decompositions with twistless stars at the
/// leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HierarchyTree {
    Split {
        separator: Vec<usize>,
        left: Box<HierarchyTree>,
        right: Box<HierarchyTree>,
    },
    Leaf {
        center: usize,
        vertices: Vec<usize>,
    },
}

impl HierarchyTree {
    /// Vertex set of the subgraph at this node.
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            HierarchyTree::Leaf { vertices, .. } => vertices.clone(),
            HierarchyTree::Split { left, right, .. } => {
                let mut v = left.vertices();
                v.extend(right.vertices());
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            HierarchyTree::Leaf { .. } => 1,
            HierarchyTree::Split { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    pub fn to_text(&self, g: &DefiningGraph) -> String {
        let mut s = String::new();
        self.write(g, 0, &mut s);
        s
    }

    fn write(&self, g: &DefiningGraph, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match self {
            HierarchyTree::Leaf { center, vertices } => {
                let _ = writeln!(out, "{pad}leaf center={} V={}", g.name(*center), g.describe_vertices(vertices));
            }
            HierarchyTree::Split { separator, left, right } => {
                let _ = writeln!(out, "{pad}split S={}", g.describe_vertices(separator));
                left.write(g, depth + 1, out);
                right.write(g, depth + 1, out);
            }
        }
    }

    /// Parses the indented text format.
    pub fn parse(text: &str, g: &DefiningGraph) -> Result<Self> {
        let lines: Vec<(usize, usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|(i, l)| {
                let indent = l.len() - l.trim_start().len();
                (i + 1, indent, l.trim())
            })
            .collect();
        let mut pos = 0;
        let tree = parse_node(&lines, &mut pos, g)?;
        if pos != lines.len() {
            return Err(Error::parse(lines[pos].0, "trailing content after the root node"));
        }
        Ok(tree)
    }
}

fn parse_set(s: &str, line: usize, g: &DefiningGraph) -> Result<Vec<usize>> {
    let inner = s
        .strip_prefix('{')
        .and_then(|x| x.strip_suffix('}'))
        .ok_or_else(|| Error::parse(line, format!("expected {{...}}, got {s}")))?;
    let mut out = Vec::new();
    for name in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        out.push(g.vertex(name).ok_or_else(|| Error::parse(line, format!("unknown vertex {name}")))?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_node(lines: &[(usize, usize, &str)], pos: &mut usize, g: &DefiningGraph) -> Result<HierarchyTree> {
    let Some(&(line, indent, text)) = lines.get(*pos) else {
        return Err(Error::parse(0, "unexpected end of hierarchy text"));
    };
    *pos += 1;
    let mut parts = text.split_whitespace();
    match parts.next() {
        Some("leaf") => {
            let mut center = None;
            let mut vertices = None;
            for p in parts {
                if let Some(c) = p.strip_prefix("center=") {
                    center = Some(g.vertex(c).ok_or_else(|| Error::parse(line, format!("unknown vertex {c}")))?);
                } else if let Some(v) = p.strip_prefix("V=") {
                    vertices = Some(parse_set(v, line, g)?);
                } else {
                    return Err(Error::parse(line, format!("unexpected token {p}")));
                }
            }
            match (center, vertices) {
                (Some(center), Some(vertices)) => Ok(HierarchyTree::Leaf { center, vertices }),
                _ => Err(Error::parse(line, "leaf needs center= and V=")),
            }
        }
        Some("split") => {
            let sep = parts
                .next()
                .and_then(|p| p.strip_prefix("S="))
                .ok_or_else(|| Error::parse(line, "split needs S={...}"))?;
            let separator = parse_set(sep, line, g)?;
            let mut children = Vec::new();
            for _ in 0..2 {
                match lines.get(*pos) {
                    Some(&(_, child_indent, _)) if child_indent > indent => {
                        children.push(parse_node(lines, pos, g)?);
                    }
                    _ => return Err(Error::parse(line, "split needs two indented children")),
                }
            }
            let right = Box::new(children.pop().unwrap());
            let left = Box::new(children.pop().unwrap());
            Ok(HierarchyTree::Split { separator, left, right })
        }
        _ => Err(Error::parse(line, "expected `split` or `leaf`")),
    }
}

/// Searches for a twistless hierarchy, memoised over vertex subsets.
pub fn find_twistless_hierarchy(g: &DefiningGraph) -> Result<Option<HierarchyTree>> {
    find_with_cap(g, HIERARCHY_CAP)
}

pub fn find_with_cap(g: &DefiningGraph, cap: usize) -> Result<Option<HierarchyTree>> {
    check_size(g, cap)?;
    if g.n() == 0 {
        return Ok(None);
    }
    let ctx = Ctx::new(g);
    let mut memo: HashMap<u32, Option<HierarchyTree>> = HashMap::new();
    let all = mask_of(&(0..g.n()).collect::<Vec<_>>());
    Ok(solve(&ctx, all, &mut memo))
}

fn solve(ctx: &Ctx, mask: u32, memo: &mut HashMap<u32, Option<HierarchyTree>>) -> Option<HierarchyTree> {
    if let Some(r) = memo.get(&mask) {
        return r.clone();
    }
    let result = if let Some(center) = ctx.star_center(mask) {
        Some(HierarchyTree::Leaf { center, vertices: bits(mask) })
    } else {
        ctx.decompositions(mask, true).into_iter().find_map(|(a, b, s)| {
            let left = solve(ctx, a, memo)?;
            let right = solve(ctx, b, memo)?;
            Some(HierarchyTree::Split { separator: bits(s), left: Box::new(left), right: Box::new(right) })
        })
    };
    memo.insert(mask, result.clone());
    result
}

/// Re-verifies every node of a hierarchy. On failure, names the first bad
/// node.
pub fn check_hierarchy(g: &DefiningGraph, tree: &HierarchyTree) -> std::result::Result<(), String> {
    check_size(g, 32).map_err(|e| e.to_string())?;
    let ctx = Ctx::new(g);
    let all = mask_of(&(0..g.n()).collect::<Vec<_>>());
    check_node(&ctx, g, tree, all)
}

fn check_node(ctx: &Ctx, g: &DefiningGraph, node: &HierarchyTree, mask: u32) -> std::result::Result<(), String> {
    match node {
        HierarchyTree::Leaf { center, vertices } => {
            if mask_of(vertices) != mask {
                return Err(format!("leaf {} does not match its parent's side {}", g.describe_vertices(vertices), g.describe_vertices(&bits(mask))));
            }
            if mask >> center & 1 == 0 || mask & !(1 << center) & !ctx.adj[*center] != 0 {
                return Err(format!("leaf {} is not the star of {}", g.describe_vertices(vertices), g.name(*center)));
            }
            if !ctx.twistless(mask) {
                return Err(format!("leaf {} is not twistless", g.describe_vertices(vertices)));
            }
            Ok(())
        }
        HierarchyTree::Split { separator, left, right } => {
            let (a, b) = (mask_of(&left.vertices()), mask_of(&right.vertices()));
            let s = mask_of(separator);
            let here = g.describe_vertices(&bits(mask));
            if a | b != mask || a & b != s || a == mask || b == mask {
                return Err(format!("split of {here} over {} is not a proper cover", g.describe_vertices(separator)));
            }
            for v in bits(a & !s) {
                if ctx.adj[v] & (b & !s) != 0 {
                    return Err(format!("split of {here}: an edge leaves both sides"));
                }
            }
            if !intersection_twistless(g, separator) {
                return Err(format!("split of {here} over {} is not twistless", g.describe_vertices(separator)));
            }
            check_node(ctx, g, left, a)?;
            check_node(ctx, g, right, b)
        }
    }
}

/// Induced cycles of `g` (vertex subsets inducing a cycle), `n <= cap`.
pub fn induced_cycles(g: &SimpleGraph, cap: usize) -> Result<Vec<u32>> {
    if g.n() > cap.min(32) {
        return Err(Error::Size { what: "graph vertices for C1", actual: g.n(), limit: cap.min(32) });
    }
    let adj: Vec<u32> = (0..g.n()).map(|v| mask_of(g.neighbors(v))).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << g.n()) {
        let mask = mask as u32;
        if mask.count_ones() < 3 {
            continue;
        }
        if bits(mask).iter().any(|&v| (adj[v] & mask).count_ones() != 2) {
            continue;
        }
        // 2-regular: a cycle iff connected
        let s = mask.trailing_zeros() as usize;
        let mut comp = 1u32 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & mask & !comp;
            comp |= new;
            frontier |= new;
        }
        if comp == mask {
            out.push(mask);
        }
    }
    Ok(out)
}

/// C1: `g` is a union of induced cycles that can be ordered so consecutive
/// ones share an edge.
///
/// If some family of induced cycles works, so does the family of all of
/// them: every further induced cycle shares an edge with a cycle of the
/// working family (its edges are covered). So it suffices to test that all
/// induced cycles together cover `g` and are connected under edge sharing.
pub fn condition_c1(g: &SimpleGraph) -> Result<bool> {
    let cycles = induced_cycles(g, C1_CAP)?;
    if cycles.is_empty() {
        return Ok(false);
    }
    let cycle_edges: Vec<Vec<(usize, usize)>> = cycles
        .iter()
        .map(|&c| g.edges().into_iter().filter(|&(u, v)| c >> u & 1 == 1 && c >> v & 1 == 1).collect())
        .collect();
    let covered_v = cycles.iter().fold(0u32, |m, &c| m | c);
    if covered_v.count_ones() as usize != g.n() {
        return Ok(false);
    }
    let all_edges = g.edges();
    if !all_edges.iter().all(|e| cycle_edges.iter().any(|ce| ce.contains(e))) {
        return Ok(false);
    }
    let k = cycles.len();
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !seen[j] && cycle_edges[i].iter().any(|e| cycle_edges[j].contains(e)) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.iter().all(|&x| x))
}

/// C2: connected with no separating vertex, on at least three vertices.
pub fn condition_c2(g: &SimpleGraph) -> bool {
    g.n() >= 3 && g.is_connected() && crate::graph::separating_vertices(g).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn triangle_has_no_decomposition_and_is_a_leaf() {
        let g = corpus::graph("triangle_333");
        assert!(admissible_decompositions(&g, false).unwrap().is_empty());
        let t = find_twistless_hierarchy(&g).unwrap().unwrap();
        assert!(matches!(t, HierarchyTree::Leaf { center: 0, .. }));
    }

    #[test]
    fn square_decomposes_along_diagonals() {
        let g = corpus::graph("square_3333");
        let d = admissible_decompositions(&g, true).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].intersection, vec![0, 2]);
        assert_eq!(d[0].gamma1, vec![0, 1, 2]);
        assert_eq!(d[0].gamma2, vec![0, 2, 3]);
        assert!(d[0].is_twistless(&g));
    }

    #[test]
    fn path_has_no_hierarchy() {
        let g = corpus::graph("path_33");
        assert_eq!(find_twistless_hierarchy(&g).unwrap(), None);
    }

    #[test]
    fn octahedron_splits_over_equator() {
        let g = corpus::graph("octahedron");
        let t = find_twistless_hierarchy(&g).unwrap().unwrap();
        match &t {
            HierarchyTree::Split { separator, left, right } => {
                assert_eq!(separator, &vec![0, 1, 2, 3]);
                assert_eq!(left.leaves() + right.leaves(), 2);
            }
            _ => panic!("expected a split"),
        }
        assert_eq!(check_hierarchy(&g, &t), Ok(()));
        let text = t.to_text(&g);
        assert_eq!(HierarchyTree::parse(&text, &g).unwrap(), t);
    }

    #[test]
    fn checker_rejects_bad_trees() {
        let g = corpus::graph("path_33");
        let bad = HierarchyTree::Split {
            separator: vec![1],
            left: Box::new(HierarchyTree::Leaf { center: 1, vertices: vec![0, 1] }),
            right: Box::new(HierarchyTree::Leaf { center: 1, vertices: vec![1, 2] }),
        };
        assert!(check_hierarchy(&g, &bad).unwrap_err().contains("not twistless"));
        let bad_leaf = HierarchyTree::Leaf { center: 1, vertices: vec![0, 1, 2] };
        assert!(check_hierarchy(&g, &bad_leaf).is_err());
    }

    #[test]
    fn c1_c2_examples() {
        let sq = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(condition_c1(&sq).unwrap() && condition_c2(&sq));
        let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!condition_c1(&path).unwrap() && !condition_c2(&path));
        let bowtie = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert!(!condition_c1(&bowtie).unwrap() && !condition_c2(&bowtie));
        let big = SimpleGraph::new(11);
        assert!(matches!(condition_c1(&big), Err(Error::Size { .. })));
    }

    #[test]
    fn c1_iff_c2_on_small_connected_graphs() {
        for n in 3..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = SimpleGraph::from_edges(n, &edges);
                if !g.is_connected() {
                    continue;
                }
                assert_eq!(condition_c1(&g).unwrap(), condition_c2(&g), "n={n} edges={edges:?}");
            }
        }
    }

    #[test]
    fn octahedron_edge_split_rejected() {
        let g = corpus::graph("octahedron");
        let (n, s) = (4, 5);
        let rest: Vec<usize> = (0..6).filter(|&v| v != n).collect();
        let bad = HierarchyTree::Split {
            separator: vec![0, 1],
            left: Box::new(HierarchyTree::Leaf { center: n, vertices: vec![0, 1, 2, 3, n] }),
            right: Box::new(HierarchyTree::Leaf { center: s, vertices: rest }),
        };
        assert!(check_hierarchy(&g, &bad).is_err());
    }

    #[test]
    fn size_cap() {
        let names: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = DefiningGraph::build(&refs, &[]).unwrap();
        assert!(matches!(find_twistless_hierarchy(&g), Err(Error::Size { .. })));
    }
}
