//! Bounded search for a proof that a word is trivial.
//!
//! States are cyclically reduced words up to rotation (conjugation preserves
//! triviality). A move replaces a cyclic factor `u` by `v^-1` whenever `u v`
//! is a cyclic conjugate of a relator or its inverse. The search is
//! best-first by length and capped by the number of distinct states.

use super::word::{free_reduce, GroupWord, Letter};
use crate::graph::DefiningGraph;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

fn cyclic_reduce(mut w: Vec<Letter>) -> Vec<Letter> {
    w = free_reduce(&GroupWord(w)).0;
    while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
        w.pop();
        w.remove(0);
    }
    w
}

/// Least rotation, used as the state key.
fn canonical(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// All cyclic conjugates of relators and their inverses.
fn relator_pieces(g: &DefiningGraph) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for e in g.edges() {
        let m = e.m as usize;
        let mut r: Vec<Letter> = (0..m)
            .map(|i| Letter::pos(if i % 2 == 0 { e.u } else { e.v }))
            .collect();
        let other: Vec<Letter> = (0..m)
            .map(|i| Letter::pos(if i % 2 == 0 { e.v } else { e.u }))
            .collect();
        r.extend(GroupWord(other).inverse().0);
        let inv = GroupWord(r.clone()).inverse().0;
        for base in [r, inv] {
            for i in 0..base.len() {
                let mut c = base[i..].to_vec();
                c.extend_from_slice(&base[..i]);
                out.push(c);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Searches for a derivation of `w = 1`. Returns `(found, states visited)`.
pub fn prove_trivial(g: &DefiningGraph, w: &GroupWord, budget: usize, slack: usize) -> (bool, usize) {
    let start = canonical(&cyclic_reduce(w.0.clone()));
    if start.is_empty() {
        return (true, 1);
    }
    let cap = start.len() + slack;
    let pieces = relator_pieces(g);
    let mut seen: HashSet<Vec<Letter>> = HashSet::from([start.clone()]);
    let mut heap = BinaryHeap::from([Reverse((start.len(), start))]);
    while let Some(Reverse((_, cur))) = heap.pop() {
        let n = cur.len();
        for piece in &pieces {
            let r = piece.len();
            for ulen in 1..r {
                if ulen > n {
                    break;
                }
                let u = &piece[..ulen];
                let vinv = GroupWord(piece[ulen..].to_vec()).inverse().0;
                if n - ulen + vinv.len() > cap {
                    continue;
                }
                for i in 0..n {
                    if (0..ulen).all(|j| cur[(i + j) % n] == u[j]) {
                        // rotate so the match starts at 0, then substitute
                        let mut next: Vec<Letter> = vinv.clone();
                        next.extend((ulen..n).map(|j| cur[(i + j) % n]));
                        let next = canonical(&cyclic_reduce(next));
                        if next.is_empty() {
                            return (true, seen.len());
                        }
                        if seen.insert(next.clone()) {
                            if seen.len() >= budget {
                                return (false, seen.len());
                            }
                            heap.push(Reverse((next.len(), next)));
                        }
                    }
                }
            }
        }
    }
    (false, seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn finds_relator_consequences() {
        let g = corpus::graph("triangle_333");
        let w = GroupWord::parse("a b a b^-1 a^-1 b^-1", &g).unwrap();
        assert!(prove_trivial(&g, &w, 1000, 4).0);
        let w = GroupWord::parse("b^-1 a b a b^-1 a^-1", &g).unwrap();
        assert!(prove_trivial(&g, &w, 1000, 4).0);
    }

    #[test]
    fn does_not_prove_nontrivial_words() {
        let g = corpus::graph("triangle_333");
        let w = GroupWord::parse("a b^-1", &g).unwrap();
        assert!(!prove_trivial(&g, &w, 2000, 4).0);
    }
}
