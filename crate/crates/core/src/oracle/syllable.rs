//! Syllable reduction: a word is cut into pieces lying in edge groups
//! `A_e` or vertex groups `<v>`, and adjacent pieces sharing a group are
//! multiplied out with the dihedral engine. A piece that becomes a generator
//! power drops to `<v>` and may then merge with either neighbour.
//!
//! Reaching the empty sequence proves triviality on any graph. When `Gamma`
//! is a forest the sequence is reduced in the sense of the normal form
//! theorem for trees of groups, so a non-empty result proves the element is
//! non-trivial.

use super::word::{GroupWord, Letter};
use crate::dihedral::{DihedralElement, Letter2};
use crate::graph::DefiningGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// `v^exp`, `exp != 0`.
    Power { v: usize, exp: i64 },
    /// Element of `A_e` (generator 0 is the smaller endpoint) that is not a
    /// generator power.
    Edge { edge: usize, el: DihedralElement },
}

impl Syllable {
    /// Does the syllable lie in the parabolic subgroup on `s`?
    pub fn lies_in(&self, g: &DefiningGraph, s: &[usize]) -> bool {
        match self {
            Syllable::Power { v, .. } => s.contains(v),
            Syllable::Edge { edge, .. } => {
                let e = g.edge(*edge);
                s.contains(&e.u) && s.contains(&e.v)
            }
        }
    }

    /// The syllable as a word in `A_Gamma`.
    pub fn to_word(&self, g: &DefiningGraph) -> GroupWord {
        match self {
            Syllable::Power { v, exp } => {
                let l = if *exp > 0 { Letter::pos(*v) } else { Letter::neg(*v) };
                GroupWord(vec![l; exp.unsigned_abs() as usize])
            }
            Syllable::Edge { edge, el } => {
                let e = g.edge(*edge);
                GroupWord(
                    el.to_word()
                        .into_iter()
                        .map(|l| Letter {
                            gen: if l.gen == 0 { e.u } else { e.v },
                            inv: l.inv,
                        })
                        .collect(),
                )
            }
        }
    }

    /// The syllable as an element of `A_e` for an edge `e` containing it.
    fn in_edge(&self, g: &DefiningGraph, edge: usize) -> DihedralElement {
        let e = g.edge(edge);
        match self {
            Syllable::Power { v, exp } => {
                DihedralElement::gen_power(e.m, if *v == e.u { 0 } else { 1 }, *exp)
            }
            Syllable::Edge { el, .. } => el.clone(),
        }
    }
}

/// Rewrites an element of `A_e` as a syllable, `None` for the identity.
pub fn edge_syllable(g: &DefiningGraph, edge: usize, el: DihedralElement) -> Option<Syllable> {
    if el.is_identity() {
        return None;
    }
    let e = g.edge(edge);
    match el.as_generator_power() {
        Some((c, exp)) => Some(Syllable::Power {
            v: if c == 0 { e.u } else { e.v },
            exp,
        }),
        None => Some(Syllable::Edge { edge, el }),
    }
}

/// Word in `A_e` (letters must be endpoints of `e`) as a dihedral element.
pub fn edge_element(g: &DefiningGraph, edge: usize, w: &GroupWord) -> DihedralElement {
    let e = g.edge(edge);
    let w2: Vec<Letter2> = w
        .0
        .iter()
        .map(|l| {
            debug_assert!(e.contains(l.gen));
            Letter2 { gen: if l.gen == e.u { 0 } else { 1 }, inv: l.inv }
        })
        .collect();
    DihedralElement::nf(&w2, e.m).expect("edge labels are at least 2")
}

/// Outcome of trying to merge two adjacent syllables.
enum Merge {
    No,
    Trivial,
    Into(Syllable),
}

fn merge(g: &DefiningGraph, x: &Syllable, y: &Syllable) -> Merge {
    use Syllable::*;
    let common_edge = match (x, y) {
        (Power { v, exp: e1 }, Power { v: w, exp: e2 }) if v == w => {
            let exp = e1 + e2;
            return if exp == 0 { Merge::Trivial } else { Merge::Into(Power { v: *v, exp }) };
        }
        (Power { v, .. }, Power { v: w, .. }) => g.edge_between(*v, *w),
        (Power { v, .. }, Edge { edge, .. }) | (Edge { edge, .. }, Power { v, .. }) => {
            g.edge(*edge).contains(*v).then_some(*edge)
        }
        (Edge { edge: e1, .. }, Edge { edge: e2, .. }) => (e1 == e2).then_some(*e1),
    };
    let Some(edge) = common_edge else {
        return Merge::No;
    };
    let el = x.in_edge(g, edge).mul(&y.in_edge(g, edge));
    match edge_syllable(g, edge, el) {
        None => Merge::Trivial,
        Some(s) => Merge::Into(s),
    }
}

/// Pushes `s` onto a reduced stack, merging as far as possible.
pub fn push(g: &DefiningGraph, stack: &mut Vec<Syllable>, mut s: Syllable) {
    loop {
        let Some(top) = stack.last() else {
            stack.push(s);
            return;
        };
        match merge(g, top, &s) {
            Merge::No => {
                stack.push(s);
                return;
            }
            Merge::Trivial => {
                stack.pop();
                return;
            }
            Merge::Into(m) => {
                stack.pop();
                s = m;
            }
        }
    }
}

/// Reduced syllable sequence of a word.
pub fn reduce(g: &DefiningGraph, w: &GroupWord) -> Vec<Syllable> {
    let mut stack = Vec::new();
    for l in &w.0 {
        push(g, &mut stack, Syllable::Power { v: l.gen, exp: if l.inv { -1 } else { 1 } });
    }
    stack
}

/// Reduced sequence of a product of sequences.
pub fn reduce_product(g: &DefiningGraph, parts: &[&[Syllable]]) -> Vec<Syllable> {
    let mut stack = Vec::new();
    for part in parts {
        for s in part.iter() {
            push(g, &mut stack, s.clone());
        }
    }
    stack
}

/// Inverse of a syllable sequence.
pub fn invert(g: &DefiningGraph, seq: &[Syllable]) -> Vec<Syllable> {
    seq.iter()
        .rev()
        .map(|s| match s {
            Syllable::Power { v, exp } => Syllable::Power { v: *v, exp: -exp },
            Syllable::Edge { edge, el } => {
                edge_syllable(g, *edge, el.inv()).expect("inverse of a non-power is a non-power")
            }
        })
        .collect()
}

/// If a reduced sequence certifies membership in the parabolic subgroup on
/// `s` (a vertex or the two ends of an edge), the element as a syllable
/// (`None` inside `Some` for the identity).
pub fn as_member(g: &DefiningGraph, seq: &[Syllable], s: &[usize]) -> Option<Option<Syllable>> {
    match seq {
        [] => Some(None),
        [x] if x.lies_in(g, s) => Some(Some(x.clone())),
        _ => None,
    }
}
