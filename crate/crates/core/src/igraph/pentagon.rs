//! The 5-cycle `<a> - <z_ab> - <b> - <abcabc> - <bacbac> - <a>` over a
//! (3,3,3) triangle, certified edge by edge.

use super::IVertex;
use crate::error::{Error, Result};
use crate::graph::{girth, modified_link, DefiningGraph, SimpleGraph};
use crate::oracle::{positive_equal, GroupWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCertificate {
    pub from: usize,
    pub to: usize,
    /// `xy` and `yx` as positive words.
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentagon {
    pub vertices: Vec<IVertex>,
    pub graph: SimpleGraph,
    pub certificates: Vec<EdgeCertificate>,
    pub girth: Option<usize>,
    /// Per vertex: its modified link joins its two pentagon neighbours.
    pub link_edges: Vec<bool>,
}

/// Builds the pentagon and proves each commutation with positive words.
pub fn exotic_pentagon(g: &DefiningGraph, a: usize, b: usize, c: usize, budget: usize) -> Result<Pentagon> {
    let labels = [g.label(a, b), g.label(a, c), g.label(b, c)];
    if labels != [Some(3); 3] {
        return Err(Error::pre(format!(
            "{} is not a triangle with labels (3,3,3)",
            g.describe_vertices(&[a, b, c])
        )));
    }
    let e = GroupWord::empty();
    let eab = g.edge_between(a, b).expect("edge ab");
    let vertices = vec![
        IVertex::T { tree: None, gen: a, descriptor: GroupWord::positive(&[a]) },
        IVertex::D { type2: None, edge: eab, conjugator: e.clone() },
        IVertex::T { tree: None, gen: b, descriptor: GroupWord::positive(&[b]) },
        IVertex::E { triple: (a, b, c), conjugator: e.clone(), sign: 1 },
        IVertex::E { triple: (b, a, c), conjugator: e, sign: 1 },
    ];
    let words: [Vec<usize>; 5] =
        [vec![a], vec![a, b, a, b, a, b], vec![b], vec![a, b, c, a, b, c], vec![b, a, c, b, a, c]];
    let graph = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let mut certificates = Vec::new();
    for (x, y) in graph.edges() {
        let xy: Vec<usize> = words[x].iter().chain(&words[y]).copied().collect();
        let yx: Vec<usize> = words[y].iter().chain(&words[x]).copied().collect();
        let (lhs, rhs) = (GroupWord::positive(&xy), GroupWord::positive(&yx));
        let equal = positive_equal(&lhs, &rhs, g, budget)?;
        certificates.push(EdgeCertificate { from: x, to: y, lhs: lhs.display(g), rhs: rhs.display(g), equal });
    }
    if let Some(bad) = certificates.iter().find(|c| !c.equal) {
        return Err(Error::Certification(format!("{} and {} differ as positive words", bad.lhs, bad.rhs)));
    }
    let link_edges = (0..5)
        .map(|v| {
            let (p, q) = ((v + 4) % 5, (v + 1) % 5);
            modified_link(&graph, v).edges.contains(&(p.min(q), p.max(q)))
        })
        .collect();
    let girth = girth(&graph);
    Ok(Pentagon { vertices, graph, certificates, girth, link_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle::DEFAULT_BUDGET;

    #[test]
    fn five_certificates() {
        let g = corpus::graph("triangle_333");
        let p = exotic_pentagon(&g, 0, 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(p.certificates.len(), 5);
        assert!(p.certificates.iter().all(|c| c.equal));
        assert_eq!(p.girth, Some(5));
        assert!(p.link_edges.iter().all(|&x| x));
        let z = p.certificates.iter().find(|c| (c.from, c.to) == (0, 1)).unwrap();
        assert_eq!((z.lhs.as_str(), z.rhs.as_str()), ("a a b a b a b", "a b a b a b a"));
    }

    #[test]
    fn precondition() {
        let g = corpus::graph("triangle_334");
        assert!(matches!(exotic_pentagon(&g, 0, 1, 2, DEFAULT_BUDGET), Err(Error::Precondition(_))));
        let p = corpus::graph("path_33");
        assert!(matches!(exotic_pentagon(&p, 0, 1, 2, DEFAULT_BUDGET), Err(Error::Precondition(_))));
    }
}
