//! Hierarchical consensus clustering for networks.
//!
//! The pipeline samples partitions of a graph by optimizing multiresolution
//! modularity over a range of resolution parameters, summarizes the ensemble
//! in a co-classification matrix, and recursively extracts clusters whose
//! co-classification is significantly higher than expected under a partition
//! null model.

pub mod benchmark;
pub mod consensus;
pub mod ensemble;
pub mod error;
pub mod graph;
pub mod hierarchy;
pub mod matrix;
pub mod metrics;
pub mod modularity;
pub mod partition;
pub mod pipeline;
pub mod resolution;
pub mod rng;
pub mod stats;

pub use benchmark::{
    generate_network, generate_network_detailed, sample_hierarchy, BenchmarkNetwork, HierBenchmarkSpec, PlantedHierarchy,
};
pub use consensus::{
    consensus_partition, consensus_partition_with, lf_consensus, Clusterer, ConsensusOptions, ModularityClusterer,
};
pub use ensemble::{
    coclassification, consensus_null_matrix, generate_ensemble, null_moments, null_prob_local, null_prob_permutation,
    significance_threshold, CoclassStats, NullKind, NullMoments, PartitionEnsemble, ThresholdMethod,
};
pub use error::{Error, Result};
pub use graph::{config_null_matrix, load_edge_list, parse_edge_list, DirectedPolicy, Graph, IdMap};
pub use hierarchy::{
    all_cuts, cut_tree, hierarchical_consensus, hierarchical_consensus_with, mean_coclassification, ConsensusTree,
    TreeNode,
};
pub use matrix::DenseMatrix;
pub use metrics::{
    ami_max, compare, entropy, expected_mi, mutual_information, nmi_max, Comparison, ContingencyTable,
};
pub use modularity::{iterated_louvain, louvain_once, modularity_score, QualityProblem};
pub use partition::Partition;
pub use pipeline::{gamma_range, sample_ensemble};
pub use resolution::{
    estimate_gamma_min, gamma_max, sample_gammas, EventProfile, GammaMinOptions, GammaStrategy,
};
pub use rng::Seed;
