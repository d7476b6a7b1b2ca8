//! Small named defining graphs used by tests, benches and the CLI.

use crate::graph::DefiningGraph;

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        const ENTRIES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../corpus/", $name, ".artin")))),*
        ];
    };
}

corpus!(
    "triangle_333",
    "triangle_334",
    "triangle_344",
    "triangle_345",
    "path_33",
    "path_34",
    "edge_3",
    "edge_4",
    "square_3333",
    "pentagon_33333",
    "octahedron",
    "book_3",
    "diamond_3",
    "label2_edge",
);

/// Source text of a corpus graph.
pub fn text(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parsed corpus graph; panics on unknown names.
pub fn graph(name: &str) -> DefiningGraph {
    let t = text(name).unwrap_or_else(|| panic!("no corpus graph {name}"));
    DefiningGraph::parse(t).expect("corpus graphs parse")
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

/// All corpus graphs with their names.
pub fn all() -> Vec<(&'static str, DefiningGraph)> {
    ENTRIES.iter().map(|(n, _)| (*n, graph(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_and_roundtrips() {
        for (name, g) in all() {
            let again = DefiningGraph::parse(&g.to_text()).unwrap();
            assert_eq!(again, g, "{name}");
        }
    }
}
