//! Garside normal forms in dihedral Artin groups
//! `A = <a, b | <ab>_m = <ba>_m>`.
//!
//! Letters are `0` (a) and `1` (b). An element is stored as `Delta^k * tail`
//! with `tail` positive, not left-divisible by `Delta`, and shortlex-least in
//! its braid-move class.

use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Default cap on the size of a braid-move closure.
pub const CLOSURE_BUDGET: usize = 1_000_000;
/// Default cap on ball radii.
pub const BALL_RADIUS_CAP: usize = 8;

pub const A: u8 = 0;
pub const B: u8 = 1;

/// Signed letter: generator `0`/`1` and inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter2 {
    pub gen: u8,
    pub inv: bool,
}

impl Letter2 {
    pub fn pos(gen: u8) -> Self {
        Letter2 { gen, inv: false }
    }

    pub fn neg(gen: u8) -> Self {
        Letter2 { gen, inv: true }
    }
}

pub type SignedWord2 = Vec<Letter2>;

/// Parses words over `a, b, A, B` (capitals are inverses). Whitespace and
/// `.`/`*` separators are ignored.
pub fn parse_word(s: &str) -> Result<SignedWord2> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '.' && *c != '*')
        .map(|c| match c {
            'a' => Ok(Letter2::pos(A)),
            'b' => Ok(Letter2::pos(B)),
            'A' => Ok(Letter2::neg(A)),
            'B' => Ok(Letter2::neg(B)),
            other => Err(Error::Input(format!("bad letter {other:?} in dihedral word"))),
        })
        .collect()
}

pub fn format_word(w: &[Letter2]) -> String {
    w.iter()
        .map(|l| match (l.gen, l.inv) {
            (0, false) => 'a',
            (0, true) => 'A',
            (_, false) => 'b',
            (_, true) => 'B',
        })
        .collect()
}

pub fn format_positive(w: &[u8]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|&x| if x == A { 'a' } else { 'b' }).collect()
}

/// Alternating positive word of length `len` starting with `first`.
pub fn alternating(first: u8, len: usize) -> Vec<u8> {
    (0..len).map(|i| if i % 2 == 0 { first } else { 1 - first }).collect()
}

/// The Garside element spelled starting with `first`.
pub fn delta_word(m: u32, first: u8) -> Vec<u8> {
    alternating(first, m as usize)
}

/// Conjugation by `Delta`: swaps the letters when `m` is odd.
pub fn sigma(m: u32, x: u8) -> u8 {
    if m % 2 == 1 {
        1 - x
    } else {
        x
    }
}

fn sigma_word(m: u32, w: &mut [u8]) {
    if m % 2 == 1 {
        for x in w.iter_mut() {
            *x = 1 - *x;
        }
    }
}

fn is_alternating(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// All positive words reachable from `w` by braid moves.
pub fn positive_closure(w: &[u8], m: u32, budget: usize) -> Result<HashSet<Vec<u8>>> {
    let m = m as usize;
    let mut seen: HashSet<Vec<u8>> = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if cur.len() < m {
            continue;
        }
        for i in 0..=cur.len() - m {
            if is_alternating(&cur[i..i + m]) {
                let mut next = cur.clone();
                for x in &mut next[i..i + m] {
                    *x = 1 - *x;
                }
                if seen.insert(next.clone()) {
                    if seen.len() > budget {
                        return Err(Error::Budget(format!(
                            "braid-move closure exceeded {budget} words"
                        )));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Element of a dihedral Artin group in Garside normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub m: u32,
    pub k: i64,
    pub tail: Vec<u8>,
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} * {}", self.k, format_positive(&self.tail))
    }
}

/// Splits off the largest power of `Delta` dividing the positive word `p` on
/// the left. Returns the power and the canonical tail.
///
/// `u Delta v = Delta sigma(u) v`, so a positive word is divisible by `Delta`
/// exactly when it contains an alternating factor of length `m`. A word with
/// no such factor admits no braid move, so its closure is itself and the
/// tail is already shortlex-least.
fn extract_delta(m: u32, mut p: Vec<u8>) -> (i64, Vec<u8>) {
    let mu = m as usize;
    let mut j = 0i64;
    while let Some(i) = find_alternating(&p, mu) {
        sigma_word(m, &mut p[..i]);
        p.drain(i..i + mu);
        j += 1;
    }
    (j, p)
}

/// Start of the first alternating factor of length `len`.
fn find_alternating(p: &[u8], len: usize) -> Option<usize> {
    if len == 0 || p.len() < len {
        return None;
    }
    let mut run_start = 0;
    for i in 0..p.len() {
        if i > 0 && p[i] == p[i - 1] {
            run_start = i;
        }
        if i + 1 - run_start >= len {
            return Some(i + 1 - len);
        }
    }
    None
}

impl DihedralElement {
    pub fn identity(m: u32) -> Self {
        DihedralElement { m, k: 0, tail: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.tail.is_empty()
    }

    pub fn generator(m: u32, g: u8) -> Self {
        DihedralElement { m, k: 0, tail: vec![g] }
    }

    /// Normal form of a signed word.
    pub fn nf(w: &[Letter2], m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::pre("dihedral label must be at least 2"));
        }
        // g^-1 = Delta^-1 * p_g with p_g * g = Delta; moving each Delta^-1 to
        // the front twists everything before it by sigma.
        let mut neg = 0i64;
        let mut p: Vec<u8> = Vec::with_capacity(w.len() * m as usize);
        for l in w {
            if l.inv {
                sigma_word(m, &mut p);
                neg += 1;
                let first = if m % 2 == 1 { l.gen } else { 1 - l.gen };
                let d = delta_word(m, first);
                p.extend_from_slice(&d[..d.len() - 1]);
            } else {
                p.push(l.gen);
            }
        }
        let (j, tail) = extract_delta(m, p);
        Ok(DihedralElement { m, k: j - neg, tail })
    }

    /// Normal form of a positive word.
    pub fn from_positive(w: &[u8], m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::pre("dihedral label must be at least 2"));
        }
        let (k, tail) = extract_delta(m, w.to_vec());
        Ok(DihedralElement { m, k, tail })
    }

    pub fn delta_power(m: u32, k: i64) -> Self {
        DihedralElement { m, k, tail: Vec::new() }
    }

    /// `g^q` for a generator `g`.
    pub fn gen_power(m: u32, g: u8, q: i64) -> Self {
        let l = if q >= 0 { Letter2::pos(g) } else { Letter2::neg(g) };
        let w = vec![l; q.unsigned_abs() as usize];
        Self::nf(&w, m).expect("label checked by caller")
    }

    /// A signed word representing this element.
    pub fn to_word(&self) -> SignedWord2 {
        let mut w = Vec::new();
        let d = delta_word(self.m, A);
        if self.k >= 0 {
            for _ in 0..self.k {
                w.extend(d.iter().map(|&x| Letter2::pos(x)));
            }
        } else {
            for _ in 0..-self.k {
                w.extend(d.iter().rev().map(|&x| Letter2::neg(x)));
            }
        }
        w.extend(self.tail.iter().map(|&x| Letter2::pos(x)));
        w
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "labels differ");
        let m = self.m;
        // Delta^k1 T1 Delta^k2 T2 = Delta^(k1+k2) sigma^k2(T1) T2
        let mut p = self.tail.clone();
        if other.k.rem_euclid(2) == 1 {
            sigma_word(m, &mut p);
        }
        p.extend_from_slice(&other.tail);
        let (j, tail) = extract_delta(m, p);
        DihedralElement { m, k: self.k + other.k + j, tail }
    }

    pub fn inv(&self) -> Self {
        let w: SignedWord2 = self
            .to_word()
            .into_iter()
            .rev()
            .map(|l| Letter2 { gen: l.gen, inv: !l.inv })
            .collect();
        Self::nf(&w, self.m).expect("label checked on construction")
    }

    /// Image in the abelianisation: `(total, 0)` in `Z` for odd `m`, exponent
    /// sums `(a, b)` in `Z^2` for even `m`.
    pub fn abelian_image(&self) -> (i64, i64) {
        let m = self.m as i64;
        let count = |g: u8| self.tail.iter().filter(|&&x| x == g).count() as i64;
        if self.m % 2 == 1 {
            (self.k * m + self.tail.len() as i64, 0)
        } else {
            (self.k * m / 2 + count(A), self.k * m / 2 + count(B))
        }
    }

    /// If this element is `g^q` for a generator `g`, returns `(g, q)`; the
    /// identity is reported as `None`.
    pub fn as_generator_power(&self) -> Option<(u8, i64)> {
        if self.is_identity() {
            return None;
        }
        for g in [A, B] {
            let t = self.pinned_exponent(g);
            if t != 0 && *self == Self::gen_power(self.m, g, t) {
                return Some((g, t));
            }
        }
        None
    }

    /// The only exponent `t` for which `self = c^t` is possible.
    fn pinned_exponent(&self, c: u8) -> i64 {
        let (a, b) = self.abelian_image();
        if self.m % 2 == 1 || c == A {
            a
        } else {
            b
        }
    }

    /// Canonical representative of the coset `self * <c>`: the one whose
    /// pinned exponent is zero.
    pub fn coset_rep(&self, c: u8) -> Self {
        let t = self.pinned_exponent(c);
        self.mul(&Self::gen_power(self.m, c, -t))
    }

    /// Canonical representative of `<c> * self`.
    pub fn left_coset_rep(&self, c: u8) -> Self {
        let t = self.pinned_exponent(c);
        Self::gen_power(self.m, c, -t).mul(self)
    }
}

pub fn center_generator(m: u32) -> DihedralElement {
    DihedralElement::delta_power(m, if m % 2 == 1 { 2 } else { 1 })
}

/// Is `x^-1 y` a power of the generator `c`?
pub fn coset_equal_gen(x: &DihedralElement, y: &DihedralElement, c: u8) -> bool {
    let d = x.inv().mul(y);
    let t = d.pinned_exponent(c);
    d == DihedralElement::gen_power(d.m, c, t)
}

/// Ball element with a shortest signed word reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallEntry {
    pub element: DihedralElement,
    pub word: SignedWord2,
}

/// All elements of word length at most `radius`, in BFS order (identity
/// first, then generator order `a, a^-1, b, b^-1` at each step).
pub fn ball(m: u32, radius: usize) -> Result<Vec<BallEntry>> {
    if radius > BALL_RADIUS_CAP {
        return Err(Error::Size {
            what: "dihedral ball radius",
            actual: radius,
            limit: BALL_RADIUS_CAP,
        });
    }
    let gens = [Letter2::pos(A), Letter2::neg(A), Letter2::pos(B), Letter2::neg(B)];
    let gen_elems: Vec<DihedralElement> = gens
        .iter()
        .map(|&l| DihedralElement::nf(&[l], m))
        .collect::<Result<_>>()?;
    let mut out = vec![BallEntry {
        element: DihedralElement::identity(m),
        word: Vec::new(),
    }];
    let mut index: HashMap<DihedralElement, usize> = HashMap::from([(out[0].element.clone(), 0)]);
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &frontier {
            for (l, g) in gens.iter().zip(&gen_elems) {
                let e = out[i].element.mul(g);
                if !index.contains_key(&e) {
                    let mut word = out[i].word.clone();
                    word.push(*l);
                    index.insert(e.clone(), out.len());
                    next.push(out.len());
                    out.push(BallEntry { element: e, word });
                }
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Checks that `Delta^k a^q = Delta^k' b^q'` forces `k = k'` and
/// `q = q' = 0` over the given box. Returns the first violation, if any.
pub fn delta_power_coset_violation(m: u32, kmax: i64, qmax: i64) -> Option<(i64, i64, i64, i64)> {
    let mut left = HashMap::new();
    for k in -kmax..=kmax {
        for q in -qmax..=qmax {
            let e = DihedralElement::delta_power(m, k).mul(&DihedralElement::gen_power(m, A, q));
            left.insert(e, (k, q));
        }
    }
    for k2 in -kmax..=kmax {
        for q2 in -qmax..=qmax {
            let e = DihedralElement::delta_power(m, k2).mul(&DihedralElement::gen_power(m, B, q2));
            if let Some(&(k, q)) = left.get(&e) {
                if !(k == k2 && q == 0 && q2 == 0) {
                    return Some((k, q, k2, q2));
                }
            }
        }
    }
    None
}

pub fn delta_power_coset_check(m: u32, kmax: i64, qmax: i64) -> bool {
    delta_power_coset_violation(m, kmax, qmax).is_none()
}
