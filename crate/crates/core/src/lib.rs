#![allow(clippy::needless_range_loop)]

//! Lines induced by betweenness relations.
//!
//! Posets, graphs, finite metric spaces and 3-uniform hypergraphs each
//! induce a ternary betweenness relation, and through it a family of lines.
//! This crate computes those line systems, runs the constructive
//! line-finding process for posets against its height-dependent lower
//! bound, and sweeps every small graph and poset to check the line-count
//! theorems and their extremal cases.

pub mod betweenness;
pub mod cli;
pub mod error;
pub mod graph;
pub mod io;
pub mod metric;
pub mod oracle;
pub mod pointset;
pub mod poset;

pub use betweenness::{
    all_lines, has_universal_line, hypergraph_relation, line_of, BetweennessRelation, GroundSet, Line, LineEntry,
    LineSystem, Pair,
};
pub use error::{Error, Result};
pub use graph::{graph_betweenness, graph_has_universal_line, is_extremal_graph, universal_vertices, Graph};
pub use metric::{graph_shortest_path_metric, metric_betweenness, MetricSpace};
pub use pointset::PointSet;
pub use poset::{
    comparability_graph, constructive_lines, dbe_bound, is_extremal_poset, lemma1_bound,
    maximum_chain_through_levels, mirsky_partition, poset_betweenness, AntichainPartition, ConstructiveCertificate,
    Poset,
};
