//! Finite developments of the modified Deligne complex.
//!
//! Chambers are group elements `g` (standing for `g K_Gamma`). A ball is grown
//! by residues: every chamber of depth below the target explores each of its
//! type-2 vertices `g A_e` by attaching `g h` for `h` in the dihedral ball of
//! radius `R`.
//!
//! Identification of chambers goes through the linear representation first
//! (different images are different elements) and then the oracle. Vertex
//! classes are union-find structures whose edges carry the exact offset
//! `g^-1 g'` in `A_e` (type 2) or `<v>` (type 1). Unions come from
//! - residue construction,
//! - type-1 sharing inside a residue, decided by the dihedral engine,
//! - `g^-1 g' in <v>` implying `g^-1 g' in A_f` for every edge `f` at `v`,
//! - coset invariants of the linear representation, confirmed by syllable
//!   reduction.
//!
//! Pairs with equal invariants that could not be proved equal are kept apart
//! and reported as unresolved.

use crate::dihedral::{self, DihedralElement, Letter2};
use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use crate::oracle::linear::{LinearRep, Mat};
use crate::oracle::syllable::{self, Syllable};
use crate::oracle::{free_reduce, GroupWord, Letter, Oracle, Verdict};
use std::collections::HashMap;
use std::fmt::Write;

pub const DEFAULT_DEPTH: usize = 1;
pub const DEFAULT_RESIDUE_RADIUS: usize = 3;
pub const DEFAULT_BALL_BUDGET: usize = 100_000;
/// Cap on the number of chambers in one ball.
pub const CHAMBER_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallConfig {
    pub depth: usize,
    pub residue_radius: usize,
    pub budget: usize,
}

impl Default for BallConfig {
    fn default() -> Self {
        BallConfig { depth: DEFAULT_DEPTH, residue_radius: DEFAULT_RESIDUE_RADIUS, budget: DEFAULT_BALL_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub parent: usize,
    pub edge: usize,
    /// `rep = parent.rep * offset`, `offset` in `A_edge`.
    pub offset: DihedralElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub id: usize,
    pub rep: GroupWord,
    pub depth: usize,
    pub provenance: Option<Provenance>,
}

/// A type-2 vertex `g A_e`. Member chambers are listed with their offset
/// from the base chamber: `chamber = base * offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type2Vertex {
    pub id: usize,
    pub edge: usize,
    pub base: usize,
    pub chambers: Vec<(usize, DihedralElement)>,
    pub explored: bool,
}

/// A type-1 vertex `g <v>`; `chamber = base * v^offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Vertex {
    pub id: usize,
    pub gen: usize,
    pub base: usize,
    pub chambers: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnresolvedKind {
    Chamber,
    Type1,
    Type2,
}

/// Two objects that may be equal but could not be proved so.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unresolved {
    pub kind: UnresolvedKind,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone)]
pub struct DeligneBall {
    pub graph: DefiningGraph,
    pub config: BallConfig,
    pub chambers: Vec<Chamber>,
    pub type1: Vec<Type1Vertex>,
    pub type2: Vec<Type2Vertex>,
    pub unresolved: Vec<Unresolved>,
    /// Offset contradictions met while merging; non-zero means a bug or an
    /// unsound identification.
    pub inconsistencies: usize,
    chamber_type1: Vec<Vec<usize>>,
    chamber_type2: Vec<Vec<usize>>,
    images: Vec<Mat>,
    by_image: HashMap<Mat, Vec<usize>>,
    oracle: Oracle,
}

trait Offset: Clone + PartialEq {
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
}

impl Offset for DihedralElement {
    fn then(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        self.inv()
    }
}

impl Offset for i64 {
    fn then(&self, other: &Self) -> Self {
        self + other
    }
    fn inverse(&self) -> Self {
        -self
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Union {
    Merged,
    Same,
    Conflict,
}

/// Union-find where `elem(x) = elem(parent(x)) * off(x)`. Roots are always
/// the least node of their class.
#[derive(Debug, Clone)]
struct OffsetUf<T> {
    parent: Vec<usize>,
    off: Vec<T>,
}

impl<T: Offset> OffsetUf<T> {
    fn new() -> Self {
        OffsetUf { parent: Vec::new(), off: Vec::new() }
    }

    fn push(&mut self, identity: T) {
        self.parent.push(self.parent.len());
        self.off.push(identity);
    }

    fn find(&mut self, x: usize) -> (usize, T) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.off[node] = self.off[p].then(&self.off[node]);
                self.parent[node] = root;
            }
        }
        (root, self.off[x].clone())
    }

    /// Records `elem(y) = elem(x) * h`.
    fn union(&mut self, x: usize, y: usize, h: &T) -> Union {
        let (rx, ox) = self.find(x);
        let (ry, oy) = self.find(y);
        if rx == ry {
            return if ox.then(h) == oy { Union::Same } else { Union::Conflict };
        }
        if rx < ry {
            self.parent[ry] = rx;
            self.off[ry] = ox.then(h).then(&oy.inverse());
        } else {
            self.parent[rx] = ry;
            self.off[rx] = oy.then(&h.inverse()).then(&ox.inverse());
        }
        Union::Merged
    }
}

/// Letters of an `A_e` word as letters of `A_Gamma`.
pub fn edge_word(g: &DefiningGraph, edge: usize, w: &[Letter2]) -> GroupWord {
    let e = g.edge(edge);
    GroupWord(
        w.iter()
            .map(|l| Letter { gen: if l.gen == 0 { e.u } else { e.v }, inv: l.inv })
            .collect(),
    )
}

/// Endpoint index (0 or 1) of `v` in `edge`.
fn end_index(g: &DefiningGraph, edge: usize, v: usize) -> u8 {
    if g.edge(edge).u == v {
        0
    } else {
        1
    }
}

fn syllable_element(g: &DefiningGraph, edge: usize, s: &Option<Syllable>) -> DihedralElement {
    let m = g.edge(edge).m;
    match s {
        None => DihedralElement::identity(m),
        Some(s) => syllable::edge_element(g, edge, &s.to_word(g)),
    }
}

struct Builder {
    g: DefiningGraph,
    config: BallConfig,
    oracle: Oracle,
    rep: LinearRep,
    chambers: Vec<Chamber>,
    images: Vec<Mat>,
    by_image: HashMap<Mat, Vec<usize>>,
    uf2: OffsetUf<DihedralElement>,
    uf1: OffsetUf<i64>,
    explored: Vec<usize>,
    chamber_unresolved: Vec<(usize, usize)>,
    inconsistencies: usize,
}

impl Builder {
    fn ne(&self) -> usize {
        self.g.edges().len()
    }

    fn node2(&self, c: usize, e: usize) -> usize {
        c * self.ne() + e
    }

    fn node1(&self, c: usize, v: usize) -> usize {
        c * self.g.n() + v
    }

    fn new_chamber(&mut self, rep: GroupWord, image: Mat, depth: usize, provenance: Option<Provenance>) -> usize {
        let id = self.chambers.len();
        self.chambers.push(Chamber { id, rep, depth, provenance });
        self.by_image.entry(image.clone()).or_default().push(id);
        self.images.push(image);
        for e in 0..self.ne() {
            self.uf2.push(DihedralElement::identity(self.g.edge(e).m));
        }
        for _ in 0..self.g.n() {
            self.uf1.push(0);
        }
        id
    }

    /// The chamber equal to `word`, if the oracle proves one.
    fn lookup(&self, word: &GroupWord, image: &Mat, unknown: &mut Vec<usize>) -> Option<usize> {
        for &c in self.by_image.get(image).map(Vec::as_slice).unwrap_or(&[]) {
            match self.oracle.equal(word, &self.chambers[c].rep) {
                Verdict::Equal(_) => return Some(c),
                Verdict::Distinct(_) => {}
                Verdict::Unknown { .. } => unknown.push(c),
            }
        }
        None
    }

    fn union2(&mut self, x: usize, y: usize, h: &DihedralElement) -> bool {
        match self.uf2.union(x, y, h) {
            Union::Merged => true,
            Union::Same => false,
            Union::Conflict => {
                self.inconsistencies += 1;
                false
            }
        }
    }

    fn union1(&mut self, x: usize, y: usize, k: i64) -> bool {
        match self.uf1.union(x, y, &k) {
            Union::Merged => true,
            Union::Same => false,
            Union::Conflict => {
                self.inconsistencies += 1;
                false
            }
        }
    }

    fn develop(&mut self) -> Result<()> {
        let identity = self.rep.image(&GroupWord::empty());
        self.new_chamber(GroupWord::empty(), identity, 0, None);
        let balls: Vec<Vec<dihedral::BallEntry>> = self
            .g
            .edges()
            .iter()
            .map(|e| dihedral::ball(e.m, self.config.residue_radius))
            .collect::<Result<_>>()?;
        let ball_images: Vec<Vec<Mat>> = balls
            .iter()
            .enumerate()
            .map(|(e, b)| b.iter().map(|x| self.rep.image(&edge_word(&self.g, e, &x.word))).collect())
            .collect();
        let mut frontier = vec![0usize];
        for d in 0..self.config.depth {
            let mut next = Vec::new();
            for &c in &frontier {
                for e in 0..self.ne() {
                    let node = self.node2(c, e);
                    let (root, _) = self.uf2.find(node);
                    if self.explored.iter().any(|&x| self.uf2.find(x).0 == root) {
                        continue;
                    }
                    self.explored.push(node);
                    for (entry, img) in balls[e].iter().zip(&ball_images[e]).skip(1) {
                        let word = self.chambers[c].rep.concat(&edge_word(&self.g, e, &entry.word));
                        let image = self.rep.mul(&self.images[c], img);
                        let mut unknown = Vec::new();
                        let target = match self.lookup(&word, &image, &mut unknown) {
                            Some(t) => t,
                            None => {
                                if self.chambers.len() >= CHAMBER_CAP {
                                    return Err(Error::Size {
                                        what: "chambers in Deligne ball",
                                        actual: self.chambers.len() + 1,
                                        limit: CHAMBER_CAP,
                                    });
                                }
                                let prov = Provenance { parent: c, edge: e, offset: entry.element.clone() };
                                let t = self.new_chamber(word, image, d + 1, Some(prov));
                                next.push(t);
                                for u in unknown {
                                    self.chamber_unresolved.push((u, t));
                                }
                                t
                            }
                        };
                        let other = self.node2(target, e);
                        self.union2(node, other, &entry.element);
                    }
                }
            }
            frontier = next;
        }
        Ok(())
    }

    /// Classes of the type-2 structure as `root -> [(node, offset)]`.
    fn classes2(&mut self) -> Vec<(usize, Vec<(usize, DihedralElement)>)> {
        let mut map: HashMap<usize, Vec<(usize, DihedralElement)>> = HashMap::new();
        for node in 0..self.uf2.parent.len() {
            let (r, o) = self.uf2.find(node);
            map.entry(r).or_default().push((node, o));
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_by_key(|(r, _)| *r);
        out
    }

    fn classes1(&mut self) -> Vec<(usize, Vec<(usize, i64)>)> {
        let mut map: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for node in 0..self.uf1.parent.len() {
            let (r, o) = self.uf1.find(node);
            map.entry(r).or_default().push((node, o));
        }
        let mut out: Vec<_> = map.into_iter().collect();
        out.sort_by_key(|(r, _)| *r);
        out
    }

    /// Type-1 sharing inside residues, then its consequence for type-2
    /// vertices. Returns whether anything merged.
    fn propagate(&mut self) -> bool {
        let ne = self.ne();
        let n = self.g.n();
        let mut changed = false;
        for (_, members) in self.classes2() {
            let e = members[0].0 % ne;
            let edge = self.g.edge(e);
            for v in [edge.u, edge.v] {
                let idx = end_index(&self.g, e, v);
                let mut first: HashMap<DihedralElement, (usize, DihedralElement)> = HashMap::new();
                for (node, h) in &members {
                    let c = node / ne;
                    let key = h.coset_rep(idx);
                    match first.get(&key) {
                        None => {
                            first.insert(key, (c, h.clone()));
                        }
                        Some((c0, h0)) => {
                            let d = h0.inv().mul(h);
                            let k = d.as_generator_power().map_or(0, |(_, k)| k);
                            let (x, y) = (self.node1(*c0, v), self.node1(c, v));
                            changed |= self.union1(x, y, k);
                        }
                    }
                }
            }
        }
        for (root, members) in self.classes1() {
            let v = root % n;
            let rc = root / n;
            for (node, k) in members {
                let c = node / n;
                if c == rc {
                    continue;
                }
                for f in 0..ne {
                    if self.g.edge(f).contains(v) {
                        let h = DihedralElement::gen_power(self.g.edge(f).m, end_index(&self.g, f, v), k);
                        let (x, y) = (self.node2(rc, f), self.node2(c, f));
                        changed |= self.union2(x, y, &h);
                    }
                }
            }
        }
        changed
    }

    fn proof_word(&self, c1: usize, c2: usize) -> Vec<Syllable> {
        let w = free_reduce(&self.chambers[c1].rep.inverse().concat(&self.chambers[c2].rep));
        syllable::reduce(&self.g, &w)
    }

    /// Coset-invariant buckets with syllable proofs. Returns the merges made
    /// and the pairs left unresolved.
    fn bucket2(&mut self) -> (bool, Vec<(usize, usize)>) {
        let ne = self.ne();
        let mut changed = false;
        let mut open = Vec::new();
        for e in 0..ne {
            let edge = self.g.edge(e);
            let basis = self.rep.fixed_basis(&[edge.u, edge.v]);
            let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for (root, _) in self.classes2().into_iter().filter(|(r, _)| r % ne == e) {
                let key = self.rep.coset_key(&self.images[root / ne], &basis);
                buckets.entry(key).or_default().push(root);
            }
            let mut keys: Vec<_> = buckets.into_iter().collect();
            keys.sort_by_key(|(_, v)| v[0]);
            for (_, roots) in keys {
                let mut reps: Vec<usize> = Vec::new();
                for r in roots {
                    let mut merged = false;
                    for &s in &reps {
                        let seq = self.proof_word(s / ne, r / ne);
                        if let Some(member) = syllable::as_member(&self.g, &seq, &[edge.u, edge.v]) {
                            let h = syllable_element(&self.g, e, &member);
                            changed |= self.union2(s, r, &h);
                            merged = true;
                            break;
                        }
                    }
                    if !merged {
                        for &s in &reps {
                            open.push((s, r));
                        }
                        reps.push(r);
                    }
                }
            }
        }
        (changed, open)
    }

    fn bucket1(&mut self) -> (bool, Vec<(usize, usize)>) {
        let n = self.g.n();
        let mut changed = false;
        let mut open = Vec::new();
        for v in 0..n {
            let basis = self.rep.fixed_basis(&[v]);
            let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
            for (root, _) in self.classes1().into_iter().filter(|(r, _)| r % n == v) {
                let key = self.rep.coset_key(&self.images[root / n], &basis);
                buckets.entry(key).or_default().push(root);
            }
            let mut keys: Vec<_> = buckets.into_iter().collect();
            keys.sort_by_key(|(_, x)| x[0]);
            for (_, roots) in keys {
                let mut reps: Vec<usize> = Vec::new();
                for r in roots {
                    let mut merged = false;
                    for &s in &reps {
                        let seq = self.proof_word(s / n, r / n);
                        let k = match syllable::as_member(&self.g, &seq, &[v]) {
                            Some(None) => Some(0),
                            Some(Some(Syllable::Power { exp, .. })) => Some(exp),
                            _ => None,
                        };
                        if let Some(k) = k {
                            changed |= self.union1(s, r, k);
                            merged = true;
                            break;
                        }
                    }
                    if !merged {
                        for &s in &reps {
                            open.push((s, r));
                        }
                        reps.push(r);
                    }
                }
            }
        }
        (changed, open)
    }
}

/// Grows a ball of `D_Gamma` around the base chamber.
pub fn develop_ball(g: &DefiningGraph, config: BallConfig) -> Result<DeligneBall> {
    g.require_large_type()?;
    if g.n() == 0 {
        return Err(Error::pre("empty defining graph"));
    }
    let oracle = Oracle::new(g.clone(), config.budget);
    let rep = oracle
        .rep()
        .cloned()
        .ok_or_else(|| Error::pre("no linear representation for this graph"))?;
    let mut b = Builder {
        g: g.clone(),
        config,
        oracle,
        rep,
        chambers: Vec::new(),
        images: Vec::new(),
        by_image: HashMap::new(),
        uf2: OffsetUf::new(),
        uf1: OffsetUf::new(),
        explored: Vec::new(),
        chamber_unresolved: Vec::new(),
        inconsistencies: 0,
    };
    b.develop()?;
    let (open2, open1) = loop {
        while b.propagate() {}
        let (c2, open2) = b.bucket2();
        if c2 {
            continue;
        }
        let (c1, open1) = b.bucket1();
        if c1 {
            continue;
        }
        break (open2, open1);
    };
    Ok(assemble(b, open2, open1))
}

fn assemble(mut b: Builder, open2: Vec<(usize, usize)>, open1: Vec<(usize, usize)>) -> DeligneBall {
    let ne = b.ne();
    let n = b.g.n();
    let nc = b.chambers.len();
    let mut chamber_type2 = vec![vec![usize::MAX; ne]; nc];
    let mut type2 = Vec::new();
    let mut root_to_id2 = HashMap::new();
    let explored_roots: Vec<usize> = b.explored.clone().into_iter().map(|x| b.uf2.find(x).0).collect();
    for (root, members) in b.classes2() {
        let id = type2.len();
        root_to_id2.insert(root, id);
        let mut chambers: Vec<(usize, DihedralElement)> = members.iter().map(|(node, o)| (node / ne, o.clone())).collect();
        chambers.sort_by_key(|(c, _)| *c);
        for (c, _) in &chambers {
            chamber_type2[*c][root % ne] = id;
        }
        type2.push(Type2Vertex {
            id,
            edge: root % ne,
            base: root / ne,
            chambers,
            explored: explored_roots.contains(&root),
        });
    }
    let mut chamber_type1 = vec![vec![usize::MAX; n]; nc];
    let mut type1 = Vec::new();
    let mut root_to_id1 = HashMap::new();
    for (root, members) in b.classes1() {
        let id = type1.len();
        root_to_id1.insert(root, id);
        let mut chambers: Vec<(usize, i64)> = members.iter().map(|&(node, o)| (node / n, o)).collect();
        chambers.sort_by_key(|(c, _)| *c);
        for (c, _) in &chambers {
            chamber_type1[*c][root % n] = id;
        }
        type1.push(Type1Vertex { id, gen: root % n, base: root / n, chambers });
    }
    let mut unresolved: Vec<Unresolved> = b
        .chamber_unresolved
        .iter()
        .map(|&(x, y)| Unresolved { kind: UnresolvedKind::Chamber, first: x, second: y })
        .collect();
    unresolved.extend(open2.iter().map(|(x, y)| Unresolved {
        kind: UnresolvedKind::Type2,
        first: root_to_id2[x],
        second: root_to_id2[y],
    }));
    unresolved.extend(open1.iter().map(|(x, y)| Unresolved {
        kind: UnresolvedKind::Type1,
        first: root_to_id1[x],
        second: root_to_id1[y],
    }));
    DeligneBall {
        graph: b.g,
        config: b.config,
        chambers: b.chambers,
        type1,
        type2,
        unresolved,
        inconsistencies: b.inconsistencies,
        chamber_type1,
        chamber_type2,
        images: b.images,
        by_image: b.by_image,
        oracle: b.oracle,
    }
}

impl DeligneBall {
    pub fn is_exact(&self) -> bool {
        self.unresolved.is_empty() && self.inconsistencies == 0
    }

    pub fn type2_of(&self, chamber: usize, edge: usize) -> usize {
        self.chamber_type2[chamber][edge]
    }

    pub fn type1_of(&self, chamber: usize, v: usize) -> usize {
        self.chamber_type1[chamber][v]
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    /// Image of a chamber under the ball's linear representation.
    pub fn image(&self, chamber: usize) -> &Mat {
        &self.images[chamber]
    }

    /// Triangles `(chamber, type-1 vertex, type-2 vertex)`: the 2-cells
    /// `g T_ab` of the ball.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.chambers.len() {
            for (e, edge) in self.graph.edges().iter().enumerate() {
                for v in [edge.u, edge.v] {
                    out.push((c, self.type1_of(c, v), self.type2_of(c, e)));
                }
            }
        }
        out
    }

    /// The chamber equal to `word`. Errors when an Unknown verdict leaves
    /// the answer open.
    pub fn find_chamber(&self, word: &GroupWord) -> Result<Option<usize>> {
        let rep = self.oracle.rep().expect("ball has a representation");
        let image = rep.image(word);
        let mut unknown = Vec::new();
        for &c in self.by_image.get(&image).map(Vec::as_slice).unwrap_or(&[]) {
            match self.oracle.equal(word, &self.chambers[c].rep) {
                Verdict::Equal(_) => return Ok(Some(c)),
                Verdict::Distinct(_) => {}
                Verdict::Unknown { .. } => unknown.push(c),
            }
        }
        if unknown.is_empty() {
            Ok(None)
        } else {
            Err(Error::Unresolved(format!(
                "word {} may equal chamber {}",
                word.display(&self.graph),
                unknown[0]
            )))
        }
    }

    fn edge_name(&self, e: usize) -> String {
        let edge = self.graph.edge(e);
        let (u, v) = (self.graph.name(edge.u), self.graph.name(edge.v));
        if u.len() == 1 && v.len() == 1 {
            format!("{u}{v}")
        } else {
            format!("{u}-{v}")
        }
    }

    /// Text dump: chambers, type-2 and type-1 vertices, unresolved pairs.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let ids = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        for c in &self.chambers {
            let rep = if c.rep.is_empty() { "e".to_string() } else { c.rep.display(&self.graph) };
            let _ = writeln!(s, "chamber {} depth {} rep {}", c.id, c.depth, rep);
        }
        for v in &self.type2 {
            let _ = writeln!(s, "vertex2 {} edge {} chambers {}", v.id, self.edge_name(v.edge), ids(&mut v.chambers.iter().map(|x| x.0)));
        }
        for v in &self.type1 {
            let _ = writeln!(s, "vertex1 {} gen {} chambers {}", v.id, self.graph.name(v.gen), ids(&mut v.chambers.iter().map(|x| x.0)));
        }
        for u in &self.unresolved {
            let _ = match u.kind {
                UnresolvedKind::Chamber => writeln!(s, "unresolved {} {}", u.first, u.second),
                UnresolvedKind::Type2 => writeln!(s, "unresolved vertex2 {} {}", u.first, u.second),
                UnresolvedKind::Type1 => writeln!(s, "unresolved vertex1 {} {}", u.first, u.second),
            };
        }
        s
    }
}
