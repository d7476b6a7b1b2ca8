//! The modified Deligne complex: fundamental domain, metric data, finite
//! developments and standard trees.

mod ball;
mod metric;
mod tree;

pub use ball::{
    develop_ball, edge_word, BallConfig, Chamber, DeligneBall, Provenance, Type1Vertex, Type2Vertex, Unresolved,
    UnresolvedKind, CHAMBER_CAP, DEFAULT_BALL_BUDGET, DEFAULT_DEPTH, DEFAULT_RESIDUE_RADIUS,
};
pub use metric::{
    fundamental_domain, link_angle_violations, link_metric_at_apex, FundamentalDomain, Length, LinkMetric,
    PiMultiple, Triangle, LENGTH_TOLERANCE,
};
pub use tree::{
    is_standard_tree_infinite, residue_link_girth, standard_tree_slice, standard_trees, tree_of_type1,
    ResidueGirth, SliceVertex, StandardTree, StandardTreeSlice,
};
