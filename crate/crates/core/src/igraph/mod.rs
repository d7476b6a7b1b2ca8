//! Finite pieces of the intersection graph: the T/D span of a Deligne
//! ball, characteristic subgraphs and their witnessing chambers, the 6-cycle
//! audit, the G1/G2 probe and the exotic pentagon.

mod embed;
mod pentagon;

pub use embed::{distinct_images, find_embeddings, TypedPattern, EMBED_BUDGET};
pub use pentagon::{exotic_pentagon, EdgeCertificate, Pentagon};

use crate::deligne::{standard_trees, tree_of_type1, DeligneBall, StandardTree};
use crate::error::{Error, Result};
use crate::graph::{barycentric_subdivision, BarVertex, DefiningGraph, SimpleGraph};
use crate::oracle::{GroupWord, Letter};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IKind {
    T,
    D,
    E,
}

/// A stable cyclic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IVertex {
    /// Conjugate `descriptor` of a large generator; `tree` indexes the
    /// standard trees of the source ball.
    T { tree: Option<usize>, gen: usize, descriptor: GroupWord },
    /// Centre of `conjugator * A_edge * conjugator^-1`.
    D { type2: Option<usize>, edge: usize, conjugator: GroupWord },
    /// `conjugator * (abcabc)^sign * conjugator^-1` for a (3,3,3) triple.
    E { triple: (usize, usize, usize), conjugator: GroupWord, sign: i8 },
}

impl IVertex {
    pub fn kind(&self) -> IKind {
        match self {
            IVertex::T { .. } => IKind::T,
            IVertex::D { .. } => IKind::D,
            IVertex::E { .. } => IKind::E,
        }
    }

    pub fn describe(&self, g: &DefiningGraph) -> String {
        let w = |x: &GroupWord| if x.is_empty() { "e".to_string() } else { x.display(g) };
        match self {
            IVertex::T { descriptor, .. } => format!("T<{}>", w(descriptor)),
            IVertex::D { edge, conjugator, .. } => {
                let e = g.edge(*edge);
                format!("D[{}]A_{}{}", w(conjugator), g.name(e.u), g.name(e.v))
            }
            IVertex::E { triple: (a, b, c), conjugator, sign } => {
                let z = format!("{0}{1}{2}{0}{1}{2}", g.name(*a), g.name(*b), g.name(*c));
                format!("E[{}]<({z})^{sign}>", w(conjugator))
            }
        }
    }
}

/// The T/D span of a Deligne ball. D-vertices come first, in type-2 order,
/// then one T-vertex per standard tree.
#[derive(Debug, Clone)]
pub struct IntersectionBall {
    pub vertices: Vec<IVertex>,
    pub graph: SimpleGraph,
    pub trees: Vec<StandardTree>,
    /// Vertex of each type-2 vertex of the ball.
    pub d_index: Vec<usize>,
    /// Vertex of each standard tree.
    pub t_index: Vec<usize>,
    /// Tree through each type-1 vertex of the ball.
    pub tree_of_type1: Vec<Option<usize>>,
}

impl IntersectionBall {
    pub fn kinds(&self) -> Vec<IKind> {
        self.vertices.iter().map(IVertex::kind).collect()
    }

    /// Edges violating the allowed shapes T-D, T-E, E-E.
    pub fn bad_edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .into_iter()
            .filter(|&(x, y)| {
                let mut k = [self.vertices[x].kind(), self.vertices[y].kind()];
                k.sort();
                !matches!(k, [IKind::T, IKind::D] | [IKind::T, IKind::E] | [IKind::E, IKind::E])
            })
            .collect()
    }

    /// Pairs of distinct D-vertices adjacent to the same two T-vertices.
    pub fn four_cycles(&self) -> usize {
        let mut count = 0;
        let d: Vec<usize> = (0..self.vertices.len()).filter(|&x| self.vertices[x].kind() == IKind::D).collect();
        for (i, &x) in d.iter().enumerate() {
            let nx: BTreeSet<usize> = self.graph.neighbors(x).iter().copied().collect();
            for &y in &d[i + 1..] {
                if self.graph.neighbors(y).iter().filter(|t| nx.contains(t)).count() >= 2 {
                    count += 1;
                }
            }
        }
        count
    }
}

/// The T/D span of an exact ball.
pub fn build_td_ball(ball: &DeligneBall) -> Result<IntersectionBall> {
    if !ball.is_exact() {
        return Err(Error::Unresolved(format!(
            "ball has {} unresolved identifications and {} inconsistencies; raise the oracle budget",
            ball.unresolved.len(),
            ball.inconsistencies
        )));
    }
    let trees = standard_trees(ball)?;
    let tree_of = tree_of_type1(ball, &trees);
    let mut vertices = Vec::new();
    let mut d_index = Vec::new();
    for v in &ball.type2 {
        d_index.push(vertices.len());
        vertices.push(IVertex::D { type2: Some(v.id), edge: v.edge, conjugator: ball.chambers[v.base].rep.clone() });
    }
    let mut t_index = Vec::new();
    for t in &trees {
        t_index.push(vertices.len());
        vertices.push(IVertex::T { tree: Some(t.id), gen: t.gen, descriptor: t.descriptor.clone() });
    }
    let mut graph = SimpleGraph::new(vertices.len());
    for t in &trees {
        for &d in &t.type2 {
            graph.add_edge(t_index[t.id], d_index[d]);
        }
    }
    Ok(IntersectionBall { vertices, graph, trees, d_index, t_index, tree_of_type1: tree_of })
}

/// `Gamma'_bar` with vertices as T and edge midpoints as D.
pub fn characteristic_pattern(gprime: &DefiningGraph) -> TypedPattern {
    let bar = barycentric_subdivision(gprime);
    let mut p = TypedPattern::new();
    for x in &bar.vertices {
        match *x {
            BarVertex::Vertex(v) => p.add(gprime.name(v), IKind::T),
            BarVertex::Edge(e) => {
                let e = gprime.edge(e);
                p.add(format!("{}{}", gprime.name(e.u), gprime.name(e.v)), IKind::D)
            }
        };
    }
    for (x, y) in bar.graph.edges() {
        p.link(x, y);
    }
    p
}

/// Type-respecting copies of `Gamma'_bar` in the T/D span, one map per
/// embedding (automorphic copies included).
pub fn find_characteristic_subgraphs(
    iball: &IntersectionBall,
    gprime: &DefiningGraph,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let pattern = characteristic_pattern(gprime);
    find_embeddings(&pattern, &iball.kinds(), &iball.graph, usize::MAX, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Unique(usize),
    Multiple(Vec<usize>),
    /// No chamber of the ball qualifies; may be truncation.
    None,
}

/// Chambers of the ball holding every D-vertex of `vertices` and a type-1
/// vertex on each of its T-trees.
pub fn fundamentality_witness(iball: &IntersectionBall, ball: &DeligneBall, vertices: &[usize]) -> Witness {
    let mut d2 = Vec::new();
    let mut trees = Vec::new();
    for &x in vertices {
        match &iball.vertices[x] {
            IVertex::D { type2: Some(d), .. } => d2.push(*d),
            IVertex::T { tree: Some(t), .. } => trees.push(*t),
            _ => {}
        }
    }
    let mut candidates: Option<BTreeSet<usize>> = None;
    for &d in &d2 {
        let here: BTreeSet<usize> = ball.type2[d].chambers.iter().map(|x| x.0).collect();
        candidates = Some(match candidates {
            None => here,
            Some(c) => c.intersection(&here).copied().collect(),
        });
    }
    let candidates = candidates.unwrap_or_else(|| (0..ball.chambers.len()).collect());
    let found: Vec<usize> = candidates
        .into_iter()
        .filter(|&c| {
            trees.iter().all(|&t| (0..ball.graph.n()).any(|v| iball.tree_of_type1[ball.type1_of(c, v)] == Some(t)))
        })
        .collect();
    match found.len() {
        0 => Witness::None,
        1 => Witness::Unique(found[0]),
        _ => Witness::Multiple(found),
    }
}

fn hexagon_pattern() -> TypedPattern {
    let mut p = TypedPattern::new();
    for (i, k) in [IKind::T, IKind::D, IKind::T, IKind::D, IKind::T, IKind::D].into_iter().enumerate() {
        p.add(format!("h{i}"), k);
    }
    for i in 0..6 {
        p.link(i, (i + 1) % 6);
    }
    p
}

/// Embedded 6-cycles of the T/D span, one vertex list per cycle.
pub fn six_cycles(iball: &IntersectionBall, budget: usize) -> Result<Vec<Vec<usize>>> {
    let p = hexagon_pattern();
    let maps = find_embeddings(&p, &iball.kinds(), &iball.graph, usize::MAX, budget)?;
    Ok(distinct_images(&p, &maps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixCycleAudit {
    pub cycles: usize,
    /// Cycles through a D-vertex whose residue was explored.
    pub interior: usize,
    pub unique: usize,
    pub multiple: usize,
    pub none: usize,
    /// Interior cycles without a unique witness.
    pub interior_failures: usize,
    pub first_multiple: Option<(Vec<usize>, Vec<usize>)>,
}

impl SixCycleAudit {
    pub fn passed(&self) -> bool {
        self.multiple == 0 && self.interior_failures == 0
    }
}

/// Runs the fundamentality witness on every 6-cycle of the T/D span.
pub fn six_cycle_audit(iball: &IntersectionBall, ball: &DeligneBall, budget: usize) -> Result<SixCycleAudit> {
    let cycles = six_cycles(iball, budget)?;
    let mut audit = SixCycleAudit {
        cycles: cycles.len(),
        interior: 0,
        unique: 0,
        multiple: 0,
        none: 0,
        interior_failures: 0,
        first_multiple: None,
    };
    for cycle in cycles {
        let interior = cycle.iter().any(|&x| match &iball.vertices[x] {
            IVertex::D { type2: Some(d), .. } => ball.type2[*d].explored,
            _ => false,
        });
        let w = fundamentality_witness(iball, ball, &cycle);
        match &w {
            Witness::Unique(_) => audit.unique += 1,
            Witness::Multiple(cs) => {
                audit.multiple += 1;
                if audit.first_multiple.is_none() {
                    audit.first_multiple = Some((cycle.clone(), cs.clone()));
                }
            }
            Witness::None => audit.none += 1,
        }
        if interior {
            audit.interior += 1;
            if !matches!(w, Witness::Unique(_)) {
                audit.interior_failures += 1;
            }
        }
    }
    Ok(audit)
}

/// G1 for `n` hexagons: centre `C` (D), spokes `t0..` (T), hexagon `i` is
/// `C t_i p_i s_i q_i t_(i+1)`, consecutive hexagons share `C t_(i+1)
/// p_(i+1)` and the last closes on `t0` alone.
pub fn g1_template(n: usize) -> TypedPattern {
    let mut p = TypedPattern::new();
    let c = p.add("C", IKind::D);
    let t: Vec<usize> = (0..n).map(|i| p.add(format!("t{i}"), IKind::T)).collect();
    let pp: Vec<usize> = (0..n).map(|i| p.add(format!("p{i}"), IKind::D)).collect();
    let s: Vec<usize> = (0..n).map(|i| p.add(format!("s{i}"), IKind::T)).collect();
    let last = p.add(format!("q{}", n - 1), IKind::D);
    for i in 0..n {
        let q = if i + 1 < n { pp[i + 1] } else { last };
        p.link(c, t[i]);
        p.link(t[i], pp[i]);
        p.link(pp[i], s[i]);
        p.link(s[i], q);
        p.link(q, t[(i + 1) % n]);
    }
    p
}

/// G2: the G1 gluing around a T centre.
pub fn g2_template(n: usize) -> TypedPattern {
    g1_template(n).swapped()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G1G2Report {
    pub n: usize,
    /// The Y chambers `e, a, ab, ...`.
    pub chambers: Vec<usize>,
    /// Image of the G1 template read off Y, if it is an embedding.
    pub g1: Option<Vec<usize>>,
    /// First G2 embedding met in the exhaustive search.
    pub g2: Option<Vec<usize>>,
}

impl G1G2Report {
    pub fn passed(&self) -> bool {
        self.g1.is_some() && self.g2.is_none()
    }
}

/// Builds G1 inside `Y = K u aK u abK u ...` (n = m_ab chambers) and
/// searches the whole span for G2 (or `g2_override`).
pub fn g1_g2_probe(
    ball: &DeligneBall,
    iball: &IntersectionBall,
    (a, b, c): (usize, usize, usize),
    g2_override: Option<&TypedPattern>,
    budget: usize,
) -> Result<G1G2Report> {
    let g = &ball.graph;
    let missing = || Error::pre("a, b, c must span a triangle");
    let eab = g.edge_between(a, b).ok_or_else(missing)?;
    let eac = g.edge_between(a, c).ok_or_else(missing)?;
    let ebc = g.edge_between(b, c).ok_or_else(missing)?;
    if ![a, b, c].iter().all(|&v| g.is_large_generator(v)) {
        return Err(Error::pre("triangle vertices must have unbounded standard trees"));
    }
    let n = g.edge(eab).m as usize;
    let mut chambers = Vec::new();
    for len in 0..n {
        let word = GroupWord((0..len).map(|i| Letter::pos(if i % 2 == 0 { a } else { b })).collect());
        match ball.find_chamber(&word)? {
            Some(ch) => chambers.push(ch),
            None => {
                return Err(Error::pre(format!(
                    "chamber {} is outside the ball; raise the residue radius",
                    word.display(g)
                )))
            }
        }
    }
    let tree = |ch: usize, v: usize| iball.tree_of_type1[ball.type1_of(ch, v)].map(|t| iball.t_index[t]);
    let dv = |ch: usize, e: usize| iball.d_index[ball.type2_of(ch, e)];
    let template = g1_template(n);
    // template order: C, t0.., p0.., s0.., q_(n-1)
    let mut map = vec![usize::MAX; 3 * n + 2];
    map[0] = dv(chambers[0], eab);
    for (i, &ch) in chambers.iter().enumerate() {
        let x = if i % 2 == 0 { b } else { a };
        let (ex, eo) = if i % 2 == 0 { (ebc, eac) } else { (eac, ebc) };
        map[1 + i] = tree(ch, x).ok_or_else(missing)?;
        map[1 + n + i] = dv(ch, ex);
        map[1 + 2 * n + i] = tree(ch, c).ok_or_else(missing)?;
        if i + 1 == n {
            map[3 * n + 1] = dv(ch, eo);
        }
    }
    let injective = map.iter().collect::<BTreeSet<_>>().len() == map.len();
    let edges_ok = template.graph.edges().into_iter().all(|(x, y)| iball.graph.has_edge(map[x], map[y]));
    let g1 = (injective && edges_ok).then_some(map);
    let g2_pattern = g2_override.cloned().unwrap_or_else(|| g2_template(n));
    let g2 = find_embeddings(&g2_pattern, &iball.kinds(), &iball.graph, 1, budget)?.into_iter().next();
    Ok(G1G2Report { n, chambers, g1, g2 })
}
