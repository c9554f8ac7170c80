//! Concrete matrix representations of presentations.
//!
//! Permutation representations come from classical automorphisms and satisfy
//! every relation exactly. Nonclassical witnesses are magic unitaries with
//! noncommuting entries, which show that the quantum automorphism group is
//! strictly larger than the classical one. A penalty search looks for further
//! representations at a fixed dimension.

mod construct;
mod rep;
mod search;

pub use construct::{cstar_perm_rep, nonclassical_witness, perm_rep, two_projection_block};
pub use rep::{check_rep, op_norm, Matrix, MatrixRep, Noncommutativity, WitnessReport, DEFAULT_TOLERANCE};
pub use search::{search_magic_rep, SearchOptions};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error("generator {generator} has a {rows}x{cols} matrix, expected {dim}x{dim}")]
    DimensionMismatch { generator: String, rows: usize, cols: usize, dim: usize },
    #[error("no matrix assigned to generator {0}")]
    MissingGenerator(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("witness not available: {0}")]
    NotAvailable(String),
    #[error("malformed representation: {0}")]
    Malformed(String),
}
