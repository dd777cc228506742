use thiserror::Error;

/// Which precondition of a synthesis step failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precondition {
    NotEquivalence,
    NotPrefixClosed,
    InfiniteIndex,
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Precondition::NotEquivalence => "relation is not an equivalence relation",
            Precondition::NotPrefixClosed => "relation is not prefix-closed",
            Precondition::InfiniteIndex => "syntactic congruence has infinite index",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("operation requires a deterministic complete automaton")]
    NotDeterministicComplete,

    #[error("relation is not an equivalence relation")]
    NotEquivalence,

    #[error("relation is not finer than the reference relation")]
    NotFiner,

    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),

    #[error("matrix dimension exceeded the safety cap of {cap}")]
    DimensionCap { cap: usize },

    #[error("closure witness rejected: {0}")]
    BadClosureWitness(String),

    #[error("machine is not letter-to-letter")]
    NotLetterToLetter,

    #[error("oracle bound {bound} exceeds the maximum of {max}")]
    BoundTooLarge { bound: usize, max: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: {kind}")]
    Semantic { line: usize, kind: SemanticError },

    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// Whether the error reveals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InvariantBreach(_) | Error::DimensionCap { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticError {
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("undeclared letter `{0}`")]
    UndeclaredLetter(String),
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("NONDETERMINISTIC: state `{state}` has two transitions on `{letter}`")]
    Nondeterministic { state: String, letter: String },
    #[error("letter-to-letter transition must output exactly one letter")]
    NotLetterToLetter,
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error("final output for non-final state `{0}`")]
    FinalOutputOnNonFinal(String),
    #[error("final state `{0}` has no final output")]
    MissingFinalOutput(String),
    #[error("directive `{0}` is not allowed for this kind")]
    WrongKind(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
