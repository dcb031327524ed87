use thiserror::Error;

/// Errors raised by the calculus. Condition-style failures carry the names of
/// the conditions that did not hold so callers can report them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("Weyl group larger than the configured cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("weight is not integral")]
    NotIntegral,

    #[error("weight is not dominant")]
    NotDominant,

    #[error("weight is not algebraic")]
    NotAlgebraic,

    #[error("weights are not comparable: their difference is not integral")]
    NotComparable,

    #[error("preconditions failed: {}", .0.join(", "))]
    PreconditionFailed(Vec<String>),

    #[error("module is not in the linkage class of the source weight")]
    NotLinked,

    #[error("internal consistency violation: {0}")]
    OracleMismatch(String),

    #[error("trianguline point is not generic")]
    NotGeneric,

    #[error("trianguline point is not in the irreducible locus")]
    NotIrreducibleLocus,

    #[error("twist conditions failed: {}", .0.join(", "))]
    ConditionsFailed(Vec<String>),

    #[error("malformed trianguline point: finite L-invariant off the special locus")]
    MalformedPoint,

    #[error("invalid Weyl word: {0}")]
    InvalidWord(String),
}

impl Error {
    /// Names of the failed conditions, for condition-style errors.
    pub fn failures(&self) -> Vec<String> {
        match self {
            Error::PreconditionFailed(v) | Error::ConditionsFailed(v) => v.clone(),
            Error::NotGeneric => vec!["generic".into()],
            Error::NotIrreducibleLocus => vec!["in_Sirr".into()],
            Error::NotLinked => vec!["linked".into()],
            Error::NotDominant => vec!["dominant".into()],
            Error::NotAlgebraic => vec!["algebraic".into()],
            Error::NotIntegral => vec!["integral".into()],
            Error::NotComparable => vec!["comparable".into()],
            Error::MalformedPoint => vec!["well_formed".into()],
            Error::GroupTooLarge { .. } => vec!["weyl_cap".into()],
            _ => Vec::new(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
