//! Small dominating sets in complete multidigraphs whose arcs are covered by
//! `k` quasi-orders.
//!
//! The pipeline: solve the fractional domination game on every part
//! ([`game`]), split parts by a dense color ([`partition`]) down to depth
//! `k + 1`, pick a repeated color on every leaf path and extract at most
//! `g(ε)` dominators from the resulting dense triple ([`dense`]), then union
//! and certify ([`solver`]). The result never exceeds `k^{k+1} · g(ε)`
//! vertices with `ε = (1/2 − δ)/k`.
//!
//! [`exact`] holds independent baselines; [`generate`] and [`instance`]
//! produce and serialize test instances.

pub mod dense;
pub mod digraph;
pub mod error;
pub mod exact;
pub mod game;
pub mod generate;
pub mod instance;
pub mod partition;
pub mod solver;
pub mod vertex_set;

pub use dense::{g_value, greedy_dense_dominators, DenseTriple, GreedyOutcome};
pub use digraph::{ColorScope, ColoredMultidigraph, Witness};
pub use error::{Error, Result};
pub use exact::{
    exact_gamma, monte_carlo_lemma2, ExactResult, MonteCarloSummary, DEFAULT_VERTEX_CAP,
};
pub use game::{
    distribution_slack, solve_fractional_domination, solve_fractional_domination_detailed,
    Distribution, FractionalSolution, SolveMethod, SolverConfig,
};
pub use generate::{gen_colored_tournament, gen_linear_orders, gen_random_posets};
pub use instance::{codec_read, codec_write, InstanceDocument, InstanceMeta};
pub use partition::{
    build_partition_tree, effective_epsilon, partition_once, PartitionNode, PartitionTree,
};
pub use solver::{
    bound_value, find_repeat, leaf_triples, solve, solve_detailed, verify_certificate,
    DominationCertificate, LeafReport, LeafTriple, SolveRun, StageTimings, Verdict,
};
pub use vertex_set::VertexSet;
