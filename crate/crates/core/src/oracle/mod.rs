//! Word problem services for `A_Gamma`.
//!
//! Exact for positive words, for forests and for words in a single edge
//! group; otherwise three-valued. `Equal` and `Distinct` verdicts always come
//! with the route or certificate that proves them.

pub mod linear;
pub mod search;
pub mod syllable;
mod word;

pub use word::{free_reduce, GroupWord, Letter};

use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use linear::LinearRep;
use std::collections::{HashSet, VecDeque};

/// Default cap on closures and searches, in distinct words.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualRoute {
    FreeReduction,
    RankTwo,
    Tree,
    Positive,
    Syllable,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Abelianization,
    Coxeter,
    RankTwo,
    Tree,
    Positive,
    Linear { prime: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal(EqualRoute),
    Distinct(Certificate),
    Unknown { visited: usize },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }
}

/// Image in the abelianisation: one integer per class of generators joined
/// by odd-labelled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianImage {
    /// Class index of each vertex.
    pub class_of: Vec<usize>,
    pub sums: Vec<i64>,
}

pub fn odd_classes(g: &DefiningGraph) -> Vec<usize> {
    let n = g.n();
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if class[s] != usize::MAX {
            continue;
        }
        class[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if class[w] == usize::MAX && g.label(v, w).is_some_and(|m| m % 2 == 1) {
                    class[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    class
}

pub fn abelianization(w: &GroupWord, g: &DefiningGraph) -> AbelianImage {
    let class_of = odd_classes(g);
    let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut sums = vec![0i64; k];
    for l in &w.0 {
        sums[class_of[l.gen]] += if l.inv { -1 } else { 1 };
    }
    AbelianImage { class_of, sums }
}

/// Braid-move neighbours of a positive word (as generator list).
fn braid_moves(g: &DefiningGraph, w: &[usize], mut visit: impl FnMut(Vec<usize>)) {
    let n = w.len();
    for i in 0..n.saturating_sub(1) {
        let (s, t) = (w[i], w[i + 1]);
        let Some(m) = g.label(s, t) else { continue };
        let m = m as usize;
        if i + m > n {
            continue;
        }
        if (0..m).all(|j| w[i + j] == if j % 2 == 0 { s } else { t }) {
            let mut next = w.to_vec();
            for j in 0..m {
                next[i + j] = if j % 2 == 0 { t } else { s };
            }
            visit(next);
        }
    }
}

fn closure_contains(g: &DefiningGraph, from: &[usize], target: &[usize], budget: usize) -> Result<bool> {
    if from == target {
        return Ok(true);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([from.to_vec()]);
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        let mut found = false;
        let mut over = false;
        braid_moves(g, &cur, |next| {
            if found || over {
                return;
            }
            if next == target {
                found = true;
            } else if seen.insert(next.clone()) {
                if seen.len() > budget {
                    over = true;
                }
                queue.push_back(next);
            }
        });
        if found {
            return Ok(true);
        }
        if over {
            return Err(Error::Budget(format!("positive closure exceeded {budget} words")));
        }
    }
    Ok(false)
}

/// Exact equality of positive words (the Artin monoid embeds in the group).
pub fn positive_equal(w1: &GroupWord, w2: &GroupWord, g: &DefiningGraph, budget: usize) -> Result<bool> {
    if !w1.is_positive() || !w2.is_positive() {
        return Err(Error::pre("positive_equal needs positive words"));
    }
    if w1.len() != w2.len() {
        return Ok(false);
    }
    let (a, b) = (w1.gens(), w2.gens());
    if abelianization(w1, g) != abelianization(w2, g) {
        return Ok(false);
    }
    closure_contains(g, &a, &b, budget)
}

/// Reduces a Coxeter word with braid moves and deletions of `ss`.
fn coxeter_reduce(g: &DefiningGraph, w: Vec<usize>, budget: usize) -> Result<Vec<usize>> {
    let mut cur = w;
    'outer: loop {
        // delete literal squares first
        let mut stack: Vec<usize> = Vec::with_capacity(cur.len());
        for x in cur {
            if stack.last() == Some(&x) {
                stack.pop();
            } else {
                stack.push(x);
            }
        }
        cur = stack;
        let mut seen: HashSet<Vec<usize>> = HashSet::from([cur.clone()]);
        let mut queue = VecDeque::from([cur.clone()]);
        while let Some(x) = queue.pop_front() {
            let mut shorter = None;
            let mut over = false;
            braid_moves(g, &x, |next| {
                if shorter.is_some() || over {
                    return;
                }
                if next.windows(2).any(|p| p[0] == p[1]) {
                    shorter = Some(next);
                } else if seen.insert(next.clone()) {
                    over = seen.len() > budget;
                    queue.push_back(next);
                }
            });
            if let Some(s) = shorter {
                cur = s;
                continue 'outer;
            }
            if over {
                return Err(Error::Budget(format!("Coxeter closure exceeded {budget} words")));
            }
        }
        return Ok(cur);
    }
}

/// Exact equality in the Coxeter quotient `W_Gamma`.
pub fn coxeter_equal(w1: &GroupWord, w2: &GroupWord, g: &DefiningGraph, budget: usize) -> Result<bool> {
    let w = w1.concat(&w2.inverse());
    Ok(coxeter_reduce(g, w.gens(), budget)?.is_empty())
}

fn is_forest(g: &DefiningGraph) -> bool {
    g.edges().len() + g.simple().components().len() == g.n()
}

/// Exact equality when `Gamma` is a tree.
pub fn tree_equal(w1: &GroupWord, w2: &GroupWord, g: &DefiningGraph) -> Result<bool> {
    if !g.is_tree() {
        return Err(Error::pre("tree_equal needs a tree-shaped defining graph"));
    }
    Ok(syllable::reduce(g, &w1.concat(&w2.inverse())).is_empty())
}

/// Moves leading and trailing inverse letters to the other side of the
/// equation `w1 = w2`. Returns the two sides when both end up positive.
fn positive_rearrangement(w1: &GroupWord, w2: &GroupWord) -> Option<(GroupWord, GroupWord)> {
    let mut x = free_reduce(w1).0;
    let mut y = free_reduce(w2).0;
    loop {
        if x.first().is_some_and(|l| l.inv) {
            let l = x.remove(0);
            y.insert(0, l.inverse());
        } else if y.first().is_some_and(|l| l.inv) {
            let l = y.remove(0);
            x.insert(0, l.inverse());
        } else if x.last().is_some_and(|l| l.inv) {
            let l = x.pop().unwrap();
            y.push(l.inverse());
        } else if y.last().is_some_and(|l| l.inv) {
            let l = y.pop().unwrap();
            x.push(l.inverse());
        } else {
            break;
        }
        x = free_reduce(&GroupWord(x)).0;
        y = free_reduce(&GroupWord(y)).0;
    }
    let (x, y) = (GroupWord(x), GroupWord(y));
    (x.is_positive() && y.is_positive()).then_some((x, y))
}

/// Word problem oracle bound to one defining graph.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub graph: DefiningGraph,
    pub budget: usize,
    rep: Option<LinearRep>,
    forest: bool,
}

impl Oracle {
    pub fn new(graph: DefiningGraph, budget: usize) -> Self {
        let rep = LinearRep::new(&graph, 0x1234_5678).ok();
        let forest = is_forest(&graph);
        Oracle { graph, budget, rep, forest }
    }

    pub fn rep(&self) -> Option<&LinearRep> {
        self.rep.as_ref()
    }

    pub fn is_forest(&self) -> bool {
        self.forest
    }

    pub fn equal(&self, w1: &GroupWord, w2: &GroupWord) -> Verdict {
        let g = &self.graph;
        let r = free_reduce(&w1.concat(&w2.inverse()));
        if r.is_empty() {
            return Verdict::Equal(EqualRoute::FreeReduction);
        }
        if abelianization(w1, g) != abelianization(w2, g) {
            return Verdict::Distinct(Certificate::Abelianization);
        }
        if let Ok(false) = coxeter_equal(w1, w2, g, self.budget.min(100_000)) {
            return Verdict::Distinct(Certificate::Coxeter);
        }
        let gens: HashSet<usize> = r.0.iter().map(|l| l.gen).collect();
        if gens.len() == 2 {
            let v: Vec<usize> = gens.into_iter().collect();
            if let Some(edge) = g.edge_between(v[0], v[1]) {
                let el = syllable::edge_element(g, edge, &r);
                return if el.is_identity() {
                    Verdict::Equal(EqualRoute::RankTwo)
                } else {
                    Verdict::Distinct(Certificate::RankTwo)
                };
            }
        }
        let seq = syllable::reduce(g, &r);
        if seq.is_empty() {
            return Verdict::Equal(if self.forest { EqualRoute::Tree } else { EqualRoute::Syllable });
        }
        if self.forest {
            return Verdict::Distinct(Certificate::Tree);
        }
        if let Some((x, y)) = positive_rearrangement(w1, w2) {
            match positive_equal(&x, &y, g, self.budget) {
                Ok(true) => return Verdict::Equal(EqualRoute::Positive),
                Ok(false) => return Verdict::Distinct(Certificate::Positive),
                Err(_) => {}
            }
        }
        if let Some(rep) = &self.rep {
            if rep.image(w1) != rep.image(w2) {
                return Verdict::Distinct(Certificate::Linear { prime: rep.p, q: rep.q });
            }
        }
        let (found, visited) = search::prove_trivial(g, &r, self.budget.min(200_000), 2 * max_label(g));
        if found {
            Verdict::Equal(EqualRoute::Search)
        } else {
            Verdict::Unknown { visited }
        }
    }
}

fn max_label(g: &DefiningGraph) -> usize {
    g.edges().iter().map(|e| e.m as usize).max().unwrap_or(2)
}

/// Sound three-valued equality test.
pub fn artin_equal(w1: &GroupWord, w2: &GroupWord, g: &DefiningGraph, budget: usize) -> Verdict {
    Oracle::new(g.clone(), budget).equal(w1, w2)
}
