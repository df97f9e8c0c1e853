use thiserror::Error;

/// Everything that can go wrong while building or analysing set systems and
/// transit functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must have between 1 and {max} elements, got {got}")]
    Capacity { got: usize, max: usize },

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("empty set: clusters must be non-empty")]
    EmptyCluster,

    #[error("cluster {bits:#x} has members outside a ground set of {n} elements")]
    ForeignCluster { bits: u64, n: usize },

    #[error("element index {index} out of range for a ground set of {n} elements")]
    ElementOutOfRange { index: usize, n: usize },

    #[error("transit set for pair ({u}, {v}) is missing")]
    MissingPair { u: String, v: String },

    #[error("transit set for pair ({u}, {v}) is given more than once")]
    DuplicatePair { u: String, v: String },

    #[error("transit set R({u}, {v}) does not contain `{missing}` (axiom t1)")]
    T1Violated { u: String, v: String, missing: String },

    #[error("pair ({u}, {v}) is not contained in any cluster")]
    UncoveredPair { u: String, v: String },

    #[error("no cluster contains {target}")]
    NoCover { target: String },

    #[error("{target} has no unique inclusion-minimal cover: {first} and {second} are both minimal")]
    NoUniqueMinimum {
        target: String,
        first: String,
        second: String,
    },

    #[error("set system is not a T-system: {0}")]
    NotTSystem(String),

    #[error("ground set of {n} elements is too large for factorial search (max {max})")]
    TooLargeForBruteForce { n: usize, max: usize },

    #[error("ground set size {n} is outside the supported enumeration range {min}..={max}")]
    EnumerationRange { n: usize, min: usize, max: usize },

    #[error("ground set size {n} needs the long-run flag")]
    LongRunRequired { n: usize },

    #[error("invalid claim `{claim}`: {message}")]
    Claim { claim: String, message: String },

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("ground sets differ")]
    GroundMismatch,

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
