use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use std::fmt;

/// A generator of `A_Gamma` (vertex index) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }
}

/// Word in the standard generators of `A_Gamma`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn positive(gens: &[usize]) -> Self {
        GroupWord(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    /// Parses whitespace-separated tokens `v` or `v^-1`. The tokens `1`, `e`
    /// and the empty string denote the identity (unless `e` is a vertex).
    pub fn parse(s: &str, g: &DefiningGraph) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok.strip_suffix("^1").unwrap_or(tok), false),
            };
            match g.vertex(name) {
                Some(v) => out.push(Letter { gen: v, inv }),
                None if tok == "1" || tok == "e" => {}
                None => return Err(Error::Input(format!("unknown generator {name:?}"))),
            }
        }
        Ok(GroupWord(out))
    }

    /// Parses a compact word where every generator name is one character and
    /// an upper-case letter stands for the inverse of its lower-case vertex.
    pub fn parse_compact(s: &str, g: &DefiningGraph) -> Result<Self> {
        let mut out = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace() && *c != '.' && *c != '*') {
            let lower = c.to_ascii_lowercase().to_string();
            let v = g
                .vertex(&lower)
                .ok_or_else(|| Error::Input(format!("unknown generator {c:?}")))?;
            out.push(Letter { gen: v, inv: c.is_ascii_uppercase() });
        }
        Ok(GroupWord(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inv)
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    /// Generators of a positive word.
    pub fn gens(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.gen).collect()
    }

    pub fn display(&self, g: &DefiningGraph) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| {
                if l.inv {
                    format!("{}^-1", g.name(l.gen))
                } else {
                    g.name(l.gen).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.inv { format!("{}^-1", l.gen) } else { l.gen.to_string() })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    GroupWord(out)
}
