//! Gate-vertex sets, k-skip covers, and distance-preserving gate graphs
//! for unweighted undirected graphs.
//!
//! The pipeline: pick a locality parameter epsilon, discover a gate-vertex
//! set (every pair at distance >= epsilon recovers its distance through a
//! chain of sub-epsilon hops over gates), connect the gates into a weighted
//! local-gate graph, sparsify it without disturbing any distance, and
//! answer exact non-local distance queries through the result. Everything
//! is verifiable against brute-force oracles in [`verify`].

pub mod error;
pub mod gategraph;
pub mod gates;
pub mod gen;
pub mod graph;
pub mod setcover;
pub mod verify;

pub use error::{Error, Result};
pub use gategraph::{
    build_local_gate_graph, gate_dijkstra, query_distance, sparsify, QueryContext, QueryResult,
    WeightedGraph,
};
pub use gates::{
    discover_fs, discover_kskip, discover_sc, DiscoverOptions, GateMode, GateVertexSet, Method,
};
pub use gen::{gen_er, gen_scale_free};
pub use graph::{
    apsp_oracle, graph_stats, load_edge_list, DistanceOracle, Graph, GraphStats, LabelTable,
    VertexId, APSP_GUARD, UNREACHABLE,
};
pub use setcover::{
    build_instance_bfs, build_instance_oracle, exact_solve, greedy_solve, CoverInstance,
    CoverMode, GreedyTrace, PairKey,
};
pub use verify::{
    approx_report, check_chain, check_gate_cover, check_kskip_cover, check_recovery,
    check_sparsify_preserves, check_sparsify_tightness, ChainReport, VerificationReport,
};
