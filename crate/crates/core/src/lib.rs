//! Classical and quantum symmetries of finite directed hypergraphs.
//!
//! A [`Hypergraph`] carries vertex and edge labels together with source and
//! range maps into vertex subsets. On top of that the crate provides
//!
//! * classical automorphism search ([`aut`]),
//! * presentations of the quantum automorphism group and of the hypergraph
//!   C*-algebra as noncommutative polynomial relations, with bounded-degree
//!   ideal membership and exact certificates ([`nc`]),
//! * concrete matrix representations and noncommutativity witnesses
//!   ([`witness`]).

pub mod aut;
pub mod fixtures;
pub mod graph;
pub mod hypergraph;
pub mod nc;
pub mod witness;

pub use aut::{AutError, AutGroup, BiPermutation, Method};
pub use graph::{ClassicalGraph, GraphKind};
pub use hypergraph::{Hypergraph, HypergraphError, IncidencePair, PropertyReport, Transform};
pub use nc::{
    Certificate, Flavor, Generator, Letter, Membership, NCPoly, Presentation, TensorPoly, Word,
};
pub use witness::{MatrixRep, WitnessReport};

/// Crate-wide error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Nc(#[from] nc::NcError),
    #[error(transparent)]
    Witness(#[from] witness::WitnessError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
