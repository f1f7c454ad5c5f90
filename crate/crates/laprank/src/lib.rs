//! Edge centrality for weighted undirected graphs.
//!
//! The pipeline: build a graph (for air-traffic data, one node per city,
//! edges weighted by flight counts), convert it to its line graph so that
//! every original edge becomes a node, then rank line-graph nodes either by
//! PageRank or by solving the discrete-regularization problem
//!
//! ```text
//! argmin_f  S_p(f) + (mu/2) ||f - y||^2
//! ```
//!
//! where `S_p` is the graph smoothness energy built from p-Laplacian local
//! variations and `y` is a prior ranking. The resulting node scores on the
//! line graph are edge-centrality scores on the original network.
//!
//! Modules: [`graph`] owns the data model and the line-graph transform,
//! [`operators`] the discrete differential operators, [`ranking`] the
//! solvers, and [`ingest`] the flight-CSV front end.

pub mod graph;
pub mod ingest;
pub mod operators;
pub mod ranking;

pub use graph::{read_edge_list, EdgeFunction, Graph, GraphError, LineGraphMap, NodeFunction};
pub use ingest::{aggregate_to_graph, parse_flight_csv, FlightRecord, IngestError, ParseOutcome};
pub use operators::{Epsilon, SmoothnessEnergy, DEFAULT_EPSILON};
pub use ranking::{
    pagerank, solve_p2_closed_form, solve_p_iterative, top_k, uniform_prior, RankResult,
    SolveError, SolverConfig,
};
