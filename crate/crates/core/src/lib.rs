//! Exact distance-matrix invariants of CP graphs and 2-clique paths.
//!
//! A non-leaping sequence `s` parameterizes a family `CP(s)` of graphs built
//! vertex by vertex from neighborhood sequences. Every member's distance
//! matrix is congruent to the adjacency matrix of one small weighted graph,
//! the reduced graph of `s`, so determinant, inertia and cofactor sum depend
//! on `s` alone. This crate builds the families, checks the congruence with
//! exact integer arithmetic, evaluates the closed forms for 2-clique paths,
//! trees and block compositions, and searches addressing schemes for tiny graphs.
//!
//! ```
//! use cpgraph_core::{cp2_invariants, CliquePathSpec};
//!
//! let spec: CliquePathSpec = "2:3,4,3,4".parse().unwrap();
//! let inv = cp2_invariants(&spec);
//! assert_eq!(inv.det, (-15).into());
//! assert_eq!(inv.cof, (-8).into());
//! ```

pub mod addressing;
pub mod formulas;
pub mod generate;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod reduction;
pub mod sequence;
pub mod suites;

pub use addressing::{
    address_distance, exact_n, search_scheme, verify_scheme, AddressError, AddressScheme, ExactN,
};
pub use formulas::{
    addressing_lower_bound, block_2cp_inertia, compose_blocks, cp2_invariants, family_invariants,
    linear_2tree_invariants, peel_leading_minors, peel_ordering, tree_invariants,
    BlockCliquePathRecipe, FormulaError, GraphInvariants, Glue, RecipePart,
};
pub use graph::{
    all_pairs_distances, attach, blocks, build_cp_graph, cut_vertices, Attachment, Block,
    GraphError, GraphRecord, LabeledGraph,
};
pub use io::{parse_edge_list, parse_graph_input, InputError};
pub use linalg::{
    cofactor_sum, determinant, inertia_congruence, inertia_from_minors, inertia_leading_minors,
    leading_minors, reduced_cofactor_sum, Inertia, LinalgError,
};
pub use matrix::IntMatrix;
pub use reduction::{
    congruence_reduce, reduced_graph, reducing_matrix, seesaw_graph, seesaw_params,
    weighted_path_matrix, SeesawParams, WeightedGraph,
};
pub use sequence::{
    admissible_anchors, count_neighborhood_sequences, enumerate_neighborhood_sequences,
    expand_clique_path_spec, validate_nonleaping, CliquePathSpec, NeighborhoodSequence,
    NonLeapingSequence, SequenceError,
};
pub use suites::{run_suite, Report, SuiteError};

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Address(#[from] AddressError),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
}
