//! A deformed reflection representation of `A_Gamma` over a prime field.
//!
//! Generator `s` acts by `x -> x + f_s(x) e_s` with `f_s(e_s) = -q - 1`, so
//! it only changes coordinate `s` and `e_s -> -q e_s`. For an edge `s < t`
//! with label `m >= 3` we take `f_s(e_t) = 1`, `f_t(e_s) = q (2 + z + 1/z)`
//! with `z` a primitive `m`-th root of unity; label 2 uses zeros and
//! non-edges use arbitrary constants. Every braid relation is checked on
//! construction, so differing images are a proof of distinctness whatever
//! the parameters.

use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};
use crate::graph::DefiningGraph;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// SplitMix64 step, used to derive parameters from a seed.
fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Dense `n x n` matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Mat { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    fn mul(&self, other: &Mat, p: u64) -> Mat {
        let n = self.n;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        data[i * n + j] = (data[i * n + j] + mul_mod(a, b, p)) % p;
                    }
                }
            }
        }
        Mat { n, data }
    }

    /// `self * rows`, where `rows` is an `n x d` matrix given by columns.
    fn apply_columns(&self, cols: &[Vec<u64>], p: u64) -> Vec<u64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * cols.len());
        for c in cols {
            for i in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + mul_mod(self.data[i * n + k], c[k], p)) % p;
                }
                out.push(acc);
            }
        }
        out
    }
}

/// The representation together with its parameters.
#[derive(Debug, Clone)]
pub struct LinearRep {
    pub p: u64,
    pub q: u64,
    n: usize,
    /// `f[s][t] = f_s(e_t)`.
    f: Vec<Vec<u64>>,
    gens: Vec<Mat>,
    invs: Vec<Mat>,
}

impl LinearRep {
    pub fn new(g: &DefiningGraph, seed: u64) -> Result<Self> {
        let mut lcm = 2u64;
        for e in g.edges() {
            if e.m >= 3 {
                let t = 2 * e.m as u64;
                lcm = lcm / gcd(lcm, t) * t;
            }
        }
        let mut t = (1u64 << 61) / lcm;
        let p = loop {
            let cand = t * lcm + 1;
            if is_prime(cand) {
                break cand;
            }
            t += 1;
        };
        let mut state = seed ^ 0x5EED_0F_A271_u64;
        for _attempt in 0..16 {
            let rep = Self::with_prime(g, p, &mut state);
            if rep.relations_hold(g) {
                return Ok(rep);
            }
        }
        Err(Error::pre("could not build a representation satisfying the braid relations"))
    }

    fn with_prime(g: &DefiningGraph, p: u64, state: &mut u64) -> Self {
        let n = g.n();
        let root_of_unity = |m: u64| -> u64 {
            let factors = prime_factors(m);
            let mut x = 2u64;
            loop {
                let z = pow_mod(x, (p - 1) / m, p);
                if factors.iter().all(|&r| pow_mod(z, m / r, p) != 1) {
                    return z;
                }
                x += 1;
            }
        };
        let q = loop {
            let q = splitmix(state) % (p - 3) + 2;
            if q != p - 1 {
                break q;
            }
        };
        let mut f = vec![vec![0u64; n]; n];
        for s in 0..n {
            f[s][s] = (p - (q + 1) % p) % p;
            for t in 0..n {
                if s == t {
                    continue;
                }
                f[s][t] = match g.label(s, t) {
                    None => splitmix(state) % p,
                    Some(2) => 0,
                    Some(m) => {
                        if s < t {
                            1
                        } else {
                            let z = root_of_unity(m as u64);
                            let zi = pow_mod(z, p - 2, p);
                            mul_mod(q, (2 + z + zi) % p, p)
                        }
                    }
                };
            }
        }
        let qi = pow_mod(q, p - 2, p);
        let mut gens = Vec::with_capacity(n);
        let mut invs = Vec::with_capacity(n);
        for s in 0..n {
            let mut m = Mat::identity(n);
            let mut mi = Mat::identity(n);
            for t in 0..n {
                m.data[s * n + t] = (m.data[s * n + t] + f[s][t]) % p;
                mi.data[s * n + t] = (mi.data[s * n + t] + mul_mod(f[s][t], qi, p)) % p;
            }
            gens.push(m);
            invs.push(mi);
        }
        LinearRep { p, q, n, f, gens, invs }
    }

    fn relations_hold(&self, g: &DefiningGraph) -> bool {
        let id = Mat::identity(self.n);
        for s in 0..self.n {
            if self.gens[s].mul(&self.invs[s], self.p) != id {
                return false;
            }
        }
        g.edges().iter().all(|e| {
            let alt = |x: usize, y: usize| {
                (0..e.m as usize).fold(Mat::identity(self.n), |acc, i| {
                    acc.mul(&self.gens[if i % 2 == 0 { x } else { y }], self.p)
                })
            };
            alt(e.u, e.v) == alt(e.v, e.u)
        })
    }

    pub fn letter(&self, l: Letter) -> &Mat {
        if l.inv {
            &self.invs[l.gen]
        } else {
            &self.gens[l.gen]
        }
    }

    pub fn image(&self, w: &GroupWord) -> Mat {
        w.0.iter()
            .fold(Mat::identity(self.n), |acc, &l| acc.mul(self.letter(l), self.p))
    }

    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        x.mul(y, self.p)
    }

    /// Basis of the subspace fixed pointwise by every generator in `s`
    /// (common kernel of the `f_v`, `v` in `s`), as column vectors.
    pub fn fixed_basis(&self, s: &[usize]) -> Vec<Vec<u64>> {
        let p = self.p;
        let n = self.n;
        let mut rows: Vec<Vec<u64>> = s.iter().map(|&v| self.f[v].clone()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = pow_mod(rows[r][c], p - 2, p);
            for x in rows[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let factor = rows[i][c];
                    for j in 0..n {
                        let sub = mul_mod(factor, rows[r][j], p);
                        rows[i][j] = (rows[i][j] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - rows[i][fc]) % p;
                }
                v
            })
            .collect()
    }

    /// Invariant of the coset `x A_S` given the image of `x`: the image
    /// restricted to the subspace fixed by `A_S`.
    pub fn coset_key(&self, image: &Mat, basis: &[Vec<u64>]) -> Vec<u64> {
        image.apply_columns(basis, self.p)
    }
}
