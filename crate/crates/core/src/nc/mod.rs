//! Free *-algebra machinery: polynomials, presentations, rewriting,
//! bounded-degree ideal membership and the identity suite.

mod coproduct;
mod field;
mod ideal;
mod identities;
mod normalize;
mod poly;
mod presentation;
mod symmetry;
mod tensor;

pub use coproduct::{
    coaction_check, coaction_check_with, coproduct_check, coproduct_check_with, counit, CheckItem, CheckReport, Outcome,
};
pub use field::{Field, Fp};
pub use ideal::{Certificate, Membership, Prover, ProverConfig, DEFAULT_MAX_DEGREE, DEFAULT_MAX_ROWS};
pub use identities::{
    sum_rewrite, verify_identity, verify_identity_with, IdentityId, IdentityReport, InstanceReport, MAX_SUBSET_VERTICES,
};
pub use normalize::{normalize, normalize_traced, CertTerm, Rules, Source};
pub use poly::{q, Generator, Letter, NCPoly, Word, Q};
pub use presentation::{Flavor, MagicBlock, Presentation, Relation, RelationKind, Sort};
pub use symmetry::{presentation_symmetry_check, SymmetryReport};
pub use tensor::{legwise_member, Leg, TensorCertificate, TensorMembership, TensorPoly, TensorTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NcError {
    #[error("degree bound {degree} exceeds the configured maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("degree {degree} of the query exceeds the bound {bound}")]
    QueryTooLarge { degree: usize, bound: usize },
    #[error("generator {0} is not part of the presentation")]
    ForeignGenerator(String),
    #[error("row budget exhausted at degree {degree}: {rows} candidate rows exceed {max}")]
    RowBudget { degree: usize, rows: u128, max: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("malformed document: {0}")]
    Malformed(String),
}
