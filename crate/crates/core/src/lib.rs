//! Combinatorics of large-type Artin groups: defining graphs and their
//! hierarchies, dihedral normal forms, a word oracle, balls in the modified
//! Deligne complex, the intersection graph and Farey graphs.

pub mod error;
pub mod graph;
pub mod corpus;
pub mod dihedral;
pub mod oracle;
pub mod hierarchy;
pub mod deligne;
pub mod igraph;
pub mod farey;
pub mod verify;

pub use deligne::{develop_ball, BallConfig, DeligneBall};
pub use dihedral::DihedralElement;
pub use error::{Error, Result};
pub use farey::{FareyBall, FareyVertex};
pub use graph::{DefiningGraph, SimpleGraph};
pub use hierarchy::HierarchyTree;
pub use igraph::{build_td_ball, IKind, IVertex, IntersectionBall, TypedPattern};
pub use oracle::{GroupWord, Oracle, Verdict};
pub use verify::{run_suite, Check, Report, Status, VerifyConfig};
