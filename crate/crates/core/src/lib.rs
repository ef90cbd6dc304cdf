//! Top-down triangular and regular decomposition of polynomial systems,
//! with variable orderings chosen from the chordal structure of the system.

pub mod decompose;
pub mod elim;
pub mod error;
pub mod families;
pub mod field;
pub mod graph;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod random;
pub mod serial;
pub mod sparse;
pub mod vars;

pub use families::{gen_family, Family};
pub use decompose::{
    decompose, decompose_from, decompose_observed, level, reduce_chain, Algorithm, BranchLabel, Config, DecompositionTree, Node,
    PivotRule, TreeEvent, TriangularSystem,
};
pub use elim::{
    pquo, prem, srs, subresultant_chain, subresultant_chain_determinantal, sylvester_resultant,
    SubresultantChain,
};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rational, Rationals};
pub use graph::{associated_graph, chordal_completion, is_subgraph, mcs_peo, AssociatedGraph};
pub use parse::{parse_system, print_system};
pub use poly::Polynomial;
pub use serial::{AnalysisJson, DecompositionJson, VerificationJson, SCHEMA};
pub use sparse::{sparse_decompose, OrderingSource, SparseDecompositionReport};
pub use vars::VarTable;
