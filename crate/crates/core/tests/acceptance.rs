//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Every criterion is checked against an oracle written here, independent of
//! the library code it exercises.

use artin_core::deligne::{link_metric_at_apex, residue_link_girth, DEFAULT_BALL_BUDGET};
use artin_core::dihedral::{self, center_generator, delta_power_coset_check, DihedralElement, Letter2, A, B};
use artin_core::farey::{self, FareyVertex};
use artin_core::graph::{is_star_rigid, StarMode};
use artin_core::hierarchy::{check_hierarchy, condition_c1, find_twistless_hierarchy};
use artin_core::igraph::{
    exotic_pentagon, find_embeddings, g1_g2_probe, g1_template, g2_template, six_cycle_audit, EMBED_BUDGET,
};
use artin_core::oracle::DEFAULT_BUDGET;
use artin_core::{
    build_td_ball, corpus, develop_ball, BallConfig, DeligneBall, DefiningGraph, HierarchyTree, IKind,
    IntersectionBall, SimpleGraph,
};
use num_rational::Ratio;
use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

const C1_TIME_LIMIT: Duration = Duration::from_secs(300);
const C4_TIME_LIMIT: Duration = Duration::from_secs(120);
const C1_WORD_LENGTH: usize = 6;
const C1_BALL_RADIUS: usize = 6;
const C2_BOX: i64 = 3;
const C11_QMAX: i64 = 12;
const C12_RADIUS: usize = 6;
const C13_DEPTH: usize = 2;
const C13_RADIUS: usize = 4;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

// ---------------------------------------------------------------------------
// Dihedral Artin groups as amalgams.
//
// m odd: <x, y | x^2 = y^m> with y = ab, x = Delta.
// m even, k = m/2: <x, y | [x, y^k]> with x = a, y = ab.
// In both cases the normal form is a power of the central element followed
// by an alternating word of coset representatives.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct AmalgamNf {
    central: i64,
    syllables: Vec<(u8, i64)>,
}

const X: u8 = 0;
const Y: u8 = 1;

struct Amalgam {
    m: u32,
}

impl Amalgam {
    /// Exponent at which a factor hits the centre; 0 for none.
    fn modulus(&self, f: u8) -> i64 {
        let m = self.m as i64;
        match (self.m % 2, f) {
            (1, X) => 2,
            (1, _) => m,
            (_, X) => 0,
            _ => m / 2,
        }
    }

    fn letter(&self, l: Letter2) -> Vec<(u8, i64)> {
        if self.m % 2 == 1 {
            let h = (self.m as i64 - 1) / 2;
            match (l.gen, l.inv) {
                (A, false) => vec![(Y, -h), (X, 1)],
                (A, true) => vec![(X, -1), (Y, h)],
                (_, false) => vec![(X, -1), (Y, h + 1)],
                (_, true) => vec![(Y, -(h + 1)), (X, 1)],
            }
        } else {
            match (l.gen, l.inv) {
                (A, false) => vec![(X, 1)],
                (A, true) => vec![(X, -1)],
                (_, false) => vec![(X, -1), (Y, 1)],
                (_, true) => vec![(Y, -1), (X, 1)],
            }
        }
    }

    fn push(&self, nf: &mut AmalgamNf, f: u8, mut e: i64) {
        if let Some(&(g, e0)) = nf.syllables.last() {
            if g == f {
                e += e0;
                nf.syllables.pop();
            }
        }
        let p = self.modulus(f);
        if p > 0 {
            nf.central += e.div_euclid(p);
            e = e.rem_euclid(p);
        }
        if e != 0 {
            nf.syllables.push((f, e));
        }
    }

    fn nf(&self, w: &[Letter2]) -> AmalgamNf {
        let mut nf = AmalgamNf { central: 0, syllables: Vec::new() };
        for &l in w {
            for (f, e) in self.letter(l) {
                self.push(&mut nf, f, e);
            }
        }
        nf
    }
}

fn all_words(len: usize) -> Vec<Vec<Letter2>> {
    let gens = [Letter2::pos(A), Letter2::neg(A), Letter2::pos(B), Letter2::neg(B)];
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut v: Vec<Letter2> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn inverse_word(w: &[Letter2]) -> Vec<Letter2> {
    w.iter().rev().map(|l| Letter2 { gen: l.gen, inv: !l.inv }).collect()
}

fn power_word(w: &[Letter2], k: i64) -> Vec<Letter2> {
    let base = if k < 0 { inverse_word(w) } else { w.to_vec() };
    base.iter().cycle().take(base.len() * k.unsigned_abs() as usize).copied().collect()
}

fn delta_word(m: u32) -> Vec<Letter2> {
    (0..m).map(|i| Letter2::pos(if i % 2 == 0 { A } else { B })).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let words = all_words(C1_WORD_LENGTH);
    let mut details = Vec::new();
    for m in 3..=6u32 {
        let am = Amalgam { m };
        let mut lib_to_am: HashMap<DihedralElement, AmalgamNf> = HashMap::new();
        let mut am_to_lib: HashMap<AmalgamNf, DihedralElement> = HashMap::new();
        for w in &words {
            let x = lib(DihedralElement::nf(w, m))?;
            let y = am.nf(w);
            if let Some(prev) = lib_to_am.insert(x.clone(), y.clone()) {
                ensure(prev == y, || format!("m={m}: {} merges distinct elements", dihedral::format_word(w)))?;
            }
            if let Some(prev) = am_to_lib.insert(y, x.clone()) {
                ensure(prev == x, || format!("m={m}: {} splits one element", dihedral::format_word(w)))?;
            }
        }
        // ball sizes from a BFS keyed by the amalgam normal form
        let gens = [Letter2::pos(A), Letter2::neg(A), Letter2::pos(B), Letter2::neg(B)];
        let mut seen: HashSet<AmalgamNf> = HashSet::from([am.nf(&[])]);
        let mut frontier = vec![Vec::<Letter2>::new()];
        let mut sizes = vec![1usize];
        for _ in 0..C1_BALL_RADIUS {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in &gens {
                    let mut v = w.clone();
                    v.push(g);
                    if seen.insert(am.nf(&v)) {
                        next.push(v);
                    }
                }
            }
            sizes.push(seen.len());
            frontier = next;
        }
        let lib_ball = lib(dihedral::ball(m, C1_BALL_RADIUS))?;
        let lib_sizes: Vec<usize> =
            (0..=C1_BALL_RADIUS).map(|r| lib_ball.iter().filter(|x| x.word.len() <= r).count()).collect();
        ensure(lib_sizes == sizes, || format!("m={m}: ball sizes {lib_sizes:?} vs {sizes:?}"))?;
        details.push(format!("m={m} {} classes", lib_to_am.len()));
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= C1_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    let pairs = words.len() * (words.len() - 1) / 2;
    Ok(format!("{} words, {pairs} pairs per m, {} in {:.1?}", words.len(), details.join(", "), elapsed))
}

fn criterion_2() -> Outcome {
    for m in 3..=5u32 {
        ensure(delta_power_coset_check(m, C2_BOX, C2_BOX), || format!("library reports a violation for m={m}"))?;
        let am = Amalgam { m };
        let d = delta_word(m);
        let mut left = HashMap::new();
        for k in -C2_BOX..=C2_BOX {
            for q in -C2_BOX..=C2_BOX {
                let mut w = power_word(&d, k);
                w.extend(power_word(&[Letter2::pos(A)], q));
                left.insert(am.nf(&w), (k, q));
            }
        }
        for k in -C2_BOX..=C2_BOX {
            for q in -C2_BOX..=C2_BOX {
                let mut w = power_word(&d, k);
                w.extend(power_word(&[Letter2::pos(B)], q));
                if let Some(&(k0, q0)) = left.get(&am.nf(&w)) {
                    ensure(k0 == k && q0 == 0 && q == 0, || {
                        format!("m={m}: D^{k0} a^{q0} = D^{k} b^{q}")
                    })?;
                }
            }
        }
    }
    Ok(format!("m=3,4,5 over |k|,|q| <= {C2_BOX}"))
}

fn criterion_3() -> Outcome {
    for m in 2..=6u32 {
        let z = center_generator(m);
        let am = Amalgam { m };
        for g in [A, B] {
            let x = DihedralElement::generator(m, g);
            ensure(z.mul(&x) == x.mul(&z), || format!("m={m}: centre fails to commute with generator {g}"))?;
            let mut zx = z.to_word();
            zx.push(Letter2::pos(g));
            let mut xz = vec![Letter2::pos(g)];
            xz.extend(z.to_word());
            ensure(am.nf(&zx) == am.nf(&xz), || format!("m={m}: amalgam oracle disagrees"))?;
        }
    }
    let w = lib(dihedral::parse_word("ababab"))?;
    ensure(center_generator(3) == lib(DihedralElement::nf(&w, 3))?, || "m=3: centre is not ababab".into())?;
    Ok("m=2..6 commute, m=3 centre = ababab".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = corpus::graph("triangle_333");
    let p = lib(exotic_pentagon(&g, 0, 1, 2, DEFAULT_BUDGET))?;
    let elapsed = start.elapsed();
    ensure(p.certificates.len() == 5, || format!("{} certificates", p.certificates.len()))?;
    ensure(p.certificates.iter().all(|c| c.equal), || "a certificate is not Equal".into())?;
    ensure(p.graph.n() == 5 && p.graph.edge_count() == 5, || "not a 5-cycle".into())?;
    ensure(girth_upto(&p.graph, 5) == Some(5), || "girth is not 5".into())?;
    ensure(elapsed <= C4_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("5 Equal certificates in {elapsed:.1?}"))
}

// ---------------------------------------------------------------------------
// Graph helpers.

/// Girth if some cycle has length at most `cap`.
fn girth_upto(g: &SimpleGraph, cap: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        // shortest u-v path avoiding the edge uv
        let mut dist = HashMap::from([(u, 0usize)]);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d + 1 >= cap {
                break;
            }
            for &y in g.neighbors(x) {
                if (x == u && y == v) || dist.contains_key(&y) {
                    continue;
                }
                dist.insert(y, d + 1);
                queue.push_back(y);
            }
        }
        if let Some(&d) = dist.get(&v) {
            let len = d + 1;
            if len <= cap && best.map_or(true, |b| len < b) {
                best = Some(len);
            }
        }
    }
    best
}

fn two_colouring(g: &SimpleGraph) -> Option<Vec<u8>> {
    let mut colour = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if colour[y] == u8::MAX {
                    colour[y] = 1 - colour[x];
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

fn connected(n: usize, adj: &dyn Fn(usize, usize) -> bool, alive: &[bool]) -> bool {
    let Some(s) = (0..n).find(|&v| alive[v]) else { return true };
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if alive[y] && !seen[y] && adj(x, y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..n).all(|v| !alive[v] || seen[v])
}

fn td_ball(name: &str, depth: usize) -> Result<(DeligneBall, IntersectionBall), String> {
    let g = corpus::graph(name);
    let ball = lib(develop_ball(&g, BallConfig { depth, ..BallConfig::default() }))?;
    let iball = lib(build_td_ball(&ball))?;
    Ok((ball, iball))
}

fn criterion_5() -> Outcome {
    let mut details = Vec::new();
    let runs = [
        ("triangle_333", 1),
        ("triangle_333", 2),
        ("triangle_334", 1),
        ("triangle_344", 1),
        ("triangle_345", 1),
        ("octahedron", 1),
        ("book_3", 1),
        ("diamond_3", 1),
    ];
    for (name, depth) in runs {
        let (_, iball) = td_ball(name, depth)?;
        let kinds = iball.kinds();
        let colour = two_colouring(&iball.graph).ok_or_else(|| format!("{name}: not bipartite"))?;
        for (u, v) in iball.graph.edges() {
            ensure(kinds[u] != kinds[v], || format!("{name}: edge {u}-{v} joins equal kinds"))?;
            ensure(colour[u] != colour[v], || format!("{name}: bad colouring"))?;
        }
        let girth = girth_upto(&iball.graph, 6);
        ensure(girth == Some(6), || format!("{name} depth {depth}: girth {girth:?}"))?;
        details.push(format!("{name}@{depth}"));
    }
    let (_, iball) = td_ball("path_33", 2)?;
    ensure(two_colouring(&iball.graph).is_some(), || "path_33: not bipartite".into())?;
    let short = girth_upto(&iball.graph, 7);
    ensure(short.is_none(), || format!("path_33: cycle of length {short:?}"))?;
    Ok(format!("girth 6 on {}; path_33 girth >= 8", details.join(" ")))
}

/// Simple cycles of length 6, as sorted vertex sets.
fn hexagons(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, out: &mut HashSet<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == 6 {
            if g.has_edge(last, s) && path[1] < path[5] {
                let mut v = path.clone();
                v.sort_unstable();
                out.insert(v);
            }
            return;
        }
        for &y in g.neighbors(last) {
            if y > s && !path.contains(&y) {
                path.push(y);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = HashSet::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    v
}

fn chamber_hexagon(ball: &DeligneBall, iball: &IntersectionBall, c: usize) -> Option<Vec<usize>> {
    let g = &ball.graph;
    let mut v = Vec::new();
    for e in 0..g.edges().len() {
        v.push(iball.d_index[ball.type2_of(c, e)]);
    }
    for x in 0..g.n() {
        v.push(iball.t_index[iball.tree_of_type1[ball.type1_of(c, x)]?]);
    }
    v.sort_unstable();
    Some(v)
}

fn criterion_6() -> Outcome {
    let mut details = Vec::new();
    for name in ["triangle_333", "triangle_344"] {
        let (ball, iball) = td_ball(name, 1)?;
        let audit = lib(six_cycle_audit(&iball, &ball, EMBED_BUDGET))?;
        ensure(audit.passed() && audit.multiple == 0, || format!("{name}: {audit:?}"))?;
        let cycles = hexagons(&iball.graph);
        ensure(cycles.len() == audit.cycles, || {
            format!("{name}: {} hexagons found, audit saw {}", cycles.len(), audit.cycles)
        })?;
        let mut owners: HashMap<Vec<usize>, usize> = HashMap::new();
        for c in 0..ball.chambers.len() {
            if let Some(h) = chamber_hexagon(&ball, &iball, c) {
                *owners.entry(h).or_default() += 1;
            }
        }
        for cyc in &cycles {
            let n = owners.get(cyc).copied().unwrap_or(0);
            ensure(n == 1, || format!("{name}: cycle {cyc:?} is the hexagon of {n} chambers"))?;
        }
        details.push(format!("{name} {} cycles", cycles.len()));
    }
    Ok(format!("multiple 0; {}", details.join(", ")))
}

fn valid_embedding(pattern: &artin_core::TypedPattern, kinds: &[IKind], host: &SimpleGraph, map: &[usize]) -> bool {
    let distinct: HashSet<usize> = map.iter().copied().collect();
    distinct.len() == map.len()
        && map.iter().enumerate().all(|(i, &x)| kinds[x] == pattern.kinds[i])
        && pattern.graph.edges().iter().all(|&(u, v)| host.has_edge(map[u], map[v]))
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    for (name, n) in [("triangle_333", 3usize), ("triangle_334", 4)] {
        let (ball, iball) = td_ball(name, 1)?;
        let g = &ball.graph;
        let (a, b, c) = (g.vertex("a").unwrap(), g.vertex("b").unwrap(), g.vertex("c").unwrap());
        ensure(g.label(a, b) == Some(n as u32), || format!("{name}: m_ab != {n}"))?;
        let report = lib(g1_g2_probe(&ball, &iball, (a, b, c), None, EMBED_BUDGET))?;
        ensure(report.n == n, || format!("{name}: n = {}", report.n))?;
        let kinds = iball.kinds();
        let g1 = report.g1.clone().ok_or_else(|| format!("{name}: no G1"))?;
        ensure(valid_embedding(&g1_template(n), &kinds, &iball.graph, &g1), || format!("{name}: G1 map invalid"))?;
        ensure(report.g2.is_none(), || format!("{name}: G2 embeds at {:?}", report.g2))?;
        let swapped: Vec<IKind> = kinds
            .iter()
            .map(|k| match k {
                IKind::T => IKind::D,
                IKind::D => IKind::T,
                IKind::E => IKind::E,
            })
            .collect();
        let live = lib(find_embeddings(&g2_template(n), &swapped, &iball.graph, 1, EMBED_BUDGET))?;
        ensure(!live.is_empty(), || format!("{name}: G2 not found in the kind-swapped host"))?;
        details.push(format!("{name} n={n}"));
    }
    Ok(format!("G1 present, G2 absent on {}", details.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut names = Vec::new();
    for name in corpus::names() {
        let g = corpus::graph(name);
        if !g.is_large_type() || !g.simple().is_connected() {
            continue;
        }
        let n = g.n();
        let mut d: Vec<Vec<Option<Ratio<i64>>>> = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(Ratio::from_integer(0));
        }
        for e in g.edges() {
            let w = Ratio::from_integer(1) - Ratio::new(1, e.m as i64);
            d[e.u][e.v] = Some(w);
            d[e.v][e.u] = Some(w);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(x), Some(y)) = (d[i][k], d[k][j]) {
                        if d[i][j].map_or(true, |z| x + y < z) {
                            d[i][j] = Some(x + y);
                        }
                    }
                }
            }
        }
        let metric = link_metric_at_apex(&g);
        for a in 0..n {
            for b in a + 1..n {
                if g.label(a, b).is_some() {
                    continue;
                }
                let ours = d[a][b].ok_or_else(|| format!("{name}: disconnected"))?;
                ensure(ours > Ratio::from_integer(1), || format!("{name}: d({a},{b}) = {ours} pi"))?;
                ensure(metric.vertex_distance(a, b) == Some(ours), || format!("{name}: metric disagrees at {a},{b}"))?;
                checked += 1;
            }
        }
        names.push(name);
    }
    Ok(format!("{checked} non-adjacent pairs > pi on {} graphs", names.len()))
}

fn closed_star(g: &DefiningGraph, v: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..g.n()).filter(|&w| w == v || g.label(v, w).is_some()).collect();
    s.sort_unstable();
    s
}

fn criterion_9() -> Outcome {
    let oct = corpus::graph("octahedron");
    let tree = lib(find_twistless_hierarchy(&oct))?.ok_or("octahedron: no hierarchy")?;
    lib(check_hierarchy(&oct, &tree))?;
    let mut leaves = Vec::new();
    let mut stack = vec![&tree];
    while let Some(t) = stack.pop() {
        match t {
            HierarchyTree::Leaf { center, vertices } => leaves.push((*center, vertices.clone())),
            HierarchyTree::Split { left, right, .. } => {
                stack.push(left);
                stack.push(right);
            }
        }
    }
    for (c, vs) in &leaves {
        let mut vs = vs.clone();
        vs.sort_unstable();
        ensure(vs == closed_star(&oct, *c), || format!("octahedron: leaf at {c} is not a star"))?;
    }
    ensure(tree.vertices() == (0..oct.n()).collect::<Vec<_>>(), || "octahedron: hierarchy misses vertices".into())?;

    let tri = corpus::graph("triangle_333");
    let t = lib(find_twistless_hierarchy(&tri))?;
    ensure(matches!(t, Some(HierarchyTree::Leaf { .. })), || "triangle_333 is not a leaf".into())?;
    ensure(lib(find_twistless_hierarchy(&corpus::graph("path_33")))?.is_none(), || "path_33 has a hierarchy".into())?;

    let mut graphs = 0;
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let adj = |x: usize, y: usize| edges.contains(&(x.min(y), x.max(y)));
            if !connected(n, &adj, &vec![true; n]) {
                continue;
            }
            let no_cut = (0..n).all(|v| {
                let alive: Vec<bool> = (0..n).map(|w| w != v).collect();
                connected(n, &adj, &alive)
            });
            let c2 = n >= 3 && no_cut;
            let c1 = lib(condition_c1(&SimpleGraph::from_edges(n, &edges)))?;
            ensure(c1 == c2, || format!("C1 {c1} vs C2 {c2} on n={n} edges {edges:?}"))?;
            graphs += 1;
        }
    }
    Ok(format!("octahedron {} star leaves, C1 <=> C2 on {graphs} connected graphs", leaves.len()))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_label_automorphism(g: &DefiningGraph, p: &[usize]) -> bool {
    (0..g.n()).all(|u| (0..g.n()).all(|v| g.label(u, v) == g.label(p[u], p[v])))
}

fn criterion_10() -> Outcome {
    for name in corpus::names() {
        let g = corpus::graph(name);
        let perms = permutations(g.n());
        let brute_rigid = (0..g.n()).all(|v| {
            let star = closed_star(&g, v);
            !perms.iter().any(|p| {
                p.iter().enumerate().any(|(i, &x)| i != x)
                    && star.iter().all(|&s| p[s] == s)
                    && is_label_automorphism(&g, p)
            })
        });
        let r = is_star_rigid(&g, StarMode::Closed);
        ensure(r.rigid == brute_rigid, || format!("{name}: library {} vs brute force {brute_rigid}", r.rigid))?;
        if let Some((v, p)) = &r.witness {
            ensure(
                p.iter().enumerate().any(|(i, &x)| i != x)
                    && closed_star(&g, *v).iter().all(|&s| p[s] == s)
                    && is_label_automorphism(&g, p),
                || format!("{name}: witness does not check out"),
            )?;
        }
    }
    ensure(is_star_rigid(&corpus::graph("triangle_333"), StarMode::Closed).rigid, || "triangle_333 not rigid".into())?;
    let book = is_star_rigid(&corpus::graph("book_3"), StarMode::Closed);
    ensure(!book.rigid && book.witness.is_some(), || "book_3 rigid or no witness".into())?;
    Ok(format!("agrees with brute force on {} corpus graphs, book_3 witnessed", corpus::names().len()))
}

fn criterion_11() -> Outcome {
    let window = farey::DEFAULT_WINDOW;
    let mut total_edges = 0;
    for qmax in 1..=C11_QMAX {
        let ball = lib(farey::farey_ball(qmax, window))?;
        let vs = &ball.vertices;
        let adj = |x: FareyVertex, y: FareyVertex| (x.p * y.q - y.p * x.q).abs() == 1;
        let mut expected = 0;
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let a = adj(vs[i], vs[j]);
                ensure(a == ball.graph.has_edge(i, j), || format!("Qmax {qmax}: {} ~ {}", vs[i], vs[j]))?;
                expected += a as usize;
            }
        }
        total_edges += expected;
        let interior: Vec<bool> = vs.iter().map(|&v| ball.is_interior(v)).collect();
        for (i, &inner) in interior.iter().enumerate() {
            if !inner {
                continue;
            }
            // the link of an interior vertex is a path
            let nb = ball.graph.neighbors(i).to_vec();
            let link = ball.graph.induced(&nb);
            let ends = (0..link.n()).filter(|&x| link.degree(x) == 1).count();
            ensure(
                link.is_connected() && link.edge_count() + 1 == link.n() && (0..link.n()).all(|x| link.degree(x) <= 2)
                    && (link.n() < 2 || ends == 2),
                || format!("Qmax {qmax}: link of {} is not a line", vs[i]),
            )?;
            for &j in &nb {
                if j > i && interior[j] {
                    let t = nb.iter().filter(|&&k| ball.graph.has_edge(j, k)).count();
                    ensure(t == 2, || format!("Qmax {qmax}: edge {} {} in {t} triangles", vs[i], vs[j]))?;
                }
            }
        }
        let inner: Vec<usize> = (0..vs.len()).filter(|&i| interior[i]).collect();
        for (x, &u) in inner.iter().enumerate() {
            for &v in &inner[x + 1..] {
                if ball.graph.has_edge(u, v) {
                    continue;
                }
                let common: Vec<usize> =
                    inner.iter().copied().filter(|&w| ball.graph.has_edge(u, w) && ball.graph.has_edge(v, w)).collect();
                for (y, &p) in common.iter().enumerate() {
                    for &q in &common[y + 1..] {
                        ensure(ball.graph.has_edge(p, q), || {
                            format!("Qmax {qmax}: induced 4-cycle {} {} {} {}", vs[u], vs[p], vs[v], vs[q])
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!("Qmax 1..={C11_QMAX}, window {window}, {total_edges} edges checked"))
}

fn criterion_12() -> Outcome {
    let mut details = Vec::new();
    for name in ["edge_3", "edge_4", "triangle_334"] {
        let g = corpus::graph(name);
        let ball = lib(develop_ball(
            &g,
            BallConfig { depth: 0, residue_radius: C12_RADIUS, budget: DEFAULT_BALL_BUDGET },
        ))?;
        let ball = if ball.type2.iter().any(|v| v.explored) {
            ball
        } else {
            lib(develop_ball(&g, BallConfig { depth: 1, residue_radius: C12_RADIUS, budget: DEFAULT_BALL_BUDGET }))?
        };
        for (i, v) in ball.type2.iter().enumerate() {
            if !v.explored || ball.chambers[v.base].depth != 0 {
                continue;
            }
            let m = g.edge(v.edge).m;
            let r = lib(residue_link_girth(&ball, i))?;
            // chambers of length below the radius and their cosets of <a>, <b>
            let elems = lib(dihedral::ball(m, C12_RADIUS - 1))?;
            let mut link = SimpleGraph::new(0);
            let mut cosets: HashMap<(u8, DihedralElement), usize> = HashMap::new();
            for x in &elems {
                let cv = link.add_vertex();
                for gen in [A, B] {
                    let key = (gen, x.element.coset_rep(gen));
                    let tv = *cosets.entry(key).or_insert_with(|| link.add_vertex());
                    link.add_edge(cv, tv);
                }
            }
            let ours = girth_upto(&link, 8 * m as usize);
            ensure(r.interior_chambers == elems.len(), || {
                format!("{name}: {} interior chambers, expected {}", r.interior_chambers, elems.len())
            })?;
            ensure(r.girth == ours, || format!("{name}: girth {:?} vs {ours:?}", r.girth))?;
            let gi = r.girth.ok_or_else(|| format!("{name}: no cycle"))?;
            ensure(gi >= 4 * m as usize, || format!("{name}: girth {gi} < {}", 4 * m))?;
            details.push(format!("{name} m={m} girth {gi}"));
        }
    }
    Ok(details.join(", "))
}

// ---------------------------------------------------------------------------
// Bass-Serre normal form for the path a - b - c: A = A_ab *_<b> A_bc.

struct PathAmalgam {
    m: [u32; 2],
}

/// Side 0 holds `A_ab` (a = 0, b = 1); side 1 holds `A_bc` (b = 0, c = 1).
fn b_index(side: u8) -> u8 {
    if side == 0 {
        1
    } else {
        0
    }
}

type Stack = Vec<(u8, DihedralElement)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PathNf {
    reps: Vec<(u8, DihedralElement)>,
    carry: i64,
}

impl PathAmalgam {
    fn b_power(&self, side: u8, y: &DihedralElement) -> Option<i64> {
        if y.is_identity() {
            return Some(0);
        }
        match y.as_generator_power() {
            Some((g, k)) if g == b_index(side) => Some(k),
            _ => None,
        }
    }

    fn b_elem(&self, side: u8, k: i64) -> DihedralElement {
        DihedralElement::gen_power(self.m[side as usize], b_index(side), k)
    }

    fn settle(&self, stack: &mut Stack, side: u8, y: DihedralElement) {
        if y.is_identity() {
            return;
        }
        if let Some(k) = self.b_power(side, &y) {
            if let Some((s, top)) = stack.pop() {
                let z = top.mul(&self.b_elem(s, k));
                self.settle(stack, s, z);
                return;
            }
        }
        stack.push((side, y));
    }

    fn push(&self, stack: &mut Stack, side: u8, x: DihedralElement) {
        if let Some((s, top)) = stack.last().cloned() {
            if s == side {
                stack.pop();
                self.settle(stack, side, top.mul(&x));
                return;
            }
            if let Some(k) = self.b_power(s, &top) {
                stack.pop();
                self.settle(stack, side, self.b_elem(side, k).mul(&x));
                return;
            }
        }
        self.settle(stack, side, x);
    }

    /// Letters over the vertices a = 0, b = 1, c = 2.
    fn nf(&self, word: &[(usize, bool)]) -> PathNf {
        let mut stack: Stack = Vec::new();
        for &(v, inv) in word {
            let side = match v {
                0 => 0,
                2 => 1,
                _ => stack.last().map_or(0, |t| t.0),
            };
            let local = match v {
                0 => A,
                2 => B,
                _ => b_index(side),
            };
            let l = Letter2 { gen: local, inv };
            let x = DihedralElement::nf(&[l], self.m[side as usize]).expect("letter");
            self.push(&mut stack, side, x);
        }
        if stack.len() == 1 {
            if let Some(k) = self.b_power(stack[0].0, &stack[0].1) {
                return PathNf { reps: Vec::new(), carry: k };
            }
        }
        let mut carry = 0;
        let mut reps = Vec::new();
        for (s, y) in stack {
            let y = self.b_elem(s, carry).mul(&y);
            let r = y.coset_rep(b_index(s));
            carry = self.b_power(s, &r.inv().mul(&y)).expect("coset offset lies in <b>");
            reps.push((s, r));
        }
        PathNf { reps, carry }
    }

    /// Key of the coset `g A_side`.
    fn coset_key(&self, nf: &PathNf, side: u8) -> (u8, Vec<(u8, DihedralElement)>) {
        let mut reps = nf.reps.clone();
        if reps.last().is_some_and(|r| r.0 == side) {
            reps.pop();
        }
        (side, reps)
    }
}

fn criterion_13() -> Outcome {
    let g = corpus::graph("path_33");
    let config = BallConfig { depth: C13_DEPTH, residue_radius: C13_RADIUS, budget: DEFAULT_BALL_BUDGET };
    let ball = lib(develop_ball(&g, config))?;
    ensure(ball.unresolved.is_empty(), || format!("{} unresolved", ball.unresolved.len()))?;
    ensure(ball.inconsistencies == 0, || format!("{} inconsistencies", ball.inconsistencies))?;

    let names: Vec<&str> = ["a", "b", "c"].to_vec();
    let ids: Vec<usize> = names.iter().map(|n| g.vertex(n).unwrap()).collect();
    let to_local = |v: usize| ids.iter().position(|&x| x == v).unwrap();
    let edges: Vec<usize> = g.edges().iter().map(|e| to_local(e.u).min(to_local(e.v))).collect();
    let pa = PathAmalgam { m: [g.label(ids[0], ids[1]).unwrap(), g.label(ids[1], ids[2]).unwrap()] };

    // mirror of the development order with exact cosets
    let balls: Vec<_> = g.edges().iter().map(|e| dihedral::ball(e.m, C13_RADIUS)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let mut words: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    let mut nfs: Vec<PathNf> = vec![pa.nf(&[])];
    let mut index: HashMap<PathNf, usize> = HashMap::from([(nfs[0].clone(), 0)]);
    let mut explored = HashSet::new();
    let mut frontier = vec![0usize];
    for _ in 0..C13_DEPTH {
        let mut next = Vec::new();
        for &c in &frontier {
            for (e, edge) in g.edges().iter().enumerate() {
                let side = edges[e] as u8;
                if !explored.insert(pa.coset_key(&nfs[c], side)) {
                    continue;
                }
                for entry in balls[e].iter().skip(1) {
                    let mut w = words[c].clone();
                    w.extend(entry.word.iter().map(|l| (to_local(if l.gen == 0 { edge.u } else { edge.v }), l.inv)));
                    let nf = pa.nf(&w);
                    if !index.contains_key(&nf) {
                        index.insert(nf.clone(), words.len());
                        next.push(words.len());
                        words.push(w);
                        nfs.push(nf);
                    }
                }
            }
        }
        frontier = next;
    }
    ensure(ball.chambers.len() == words.len(), || {
        format!("{} chambers, Bass-Serre mirror has {}", ball.chambers.len(), words.len())
    })?;
    let lib_nfs: HashSet<PathNf> = ball
        .chambers
        .iter()
        .map(|c| pa.nf(&c.rep.0.iter().map(|l| (to_local(l.gen), l.inv)).collect::<Vec<_>>()))
        .collect();
    ensure(lib_nfs.len() == ball.chambers.len(), || "two chambers share a normal form".into())?;
    ensure(lib_nfs == index.keys().cloned().collect::<HashSet<_>>(), || "chamber sets differ".into())?;
    Ok(format!("depth {C13_DEPTH} radius {C13_RADIUS}: {} chambers, 0 unresolved", words.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("dihedral normal form vs amalgam oracle", criterion_1),
        ("Delta-power coset uniqueness", criterion_2),
        ("centre generator", criterion_3),
        ("exotic pentagon certificates", criterion_4),
        ("T/D span bipartite, girth 6", criterion_5),
        ("six-cycle audit", criterion_6),
        ("G1 present, G2 absent", criterion_7),
        ("apex link angles exceed pi", criterion_8),
        ("twistless hierarchies and C1 <=> C2", criterion_9),
        ("star rigidity", criterion_10),
        ("Farey ball structure", criterion_11),
        ("residue link girth", criterion_12),
        ("path ball exactness", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
