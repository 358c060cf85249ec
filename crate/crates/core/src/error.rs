use thiserror::Error;

use crate::algebra::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("arity {0} is outside the supported range 1..=7")]
    ArityOutOfRange(usize),

    #[error("tabulated map of arity {arity} is not a Hom-cochain: {reason}")]
    NotACochain { arity: usize, reason: String },

    #[error("subspace of dimension {inner} is not contained in subspace of dimension {outer}")]
    NotContained { inner: usize, outer: usize },

    #[error("bracket is not Hom-Lie: {0}")]
    NotHomLie(String),

    #[error("axioms fail: {}", .0.failures_summary())]
    AxiomFail(Box<AxiomReport>),

    #[error("map is not an algebra morphism: {0}")]
    NotMorphism(String),

    #[error("commutator of derivations of degree {k} and {s} left the degree {} space", k + s)]
    ClosureViolation { k: usize, s: usize },

    #[error("order {order} term is not a 2/3-cocycle pair")]
    NotCocycle { order: usize },

    #[error("(f1, g1) does not lie in Z2 x Z3")]
    NotInZ2Z3,

    #[error("deformations or gauge refer to different bases or orders: {0}")]
    BaseMismatch(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for outcomes that contradict a proven identity, as opposed to
    /// malformed input. These indicate a bug or an erratum.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::NotContained { .. } | Error::ClosureViolation { .. }
        )
    }
}
