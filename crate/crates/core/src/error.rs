use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown type label `{0}`")]
    UnknownType(String),

    #[error("rank {rank} is out of range for type family {family}")]
    RankOutOfRange { family: char, rank: usize },

    #[error("invalid face `{selector}`: {reason}")]
    InvalidFace { selector: String, reason: String },

    #[error("unclassified cuspidal datum: no table entry for {key}")]
    Unclassified { key: String },

    #[error("enumeration budget of {budget} elements exceeded while {context}")]
    BudgetExceeded { budget: usize, context: String },

    #[error("lattice containment violated for face {face}: {detail}")]
    Containment { face: String, detail: String },

    #[error("Hom series coefficient at degree {degree} is not a nonnegative integer: {value}")]
    NonIntegral { degree: usize, value: String },

    #[error("Molien sum for {type_label} disagrees with the degree product at t^{degree}: {sum} != {closed}")]
    MolienMismatch {
        type_label: String,
        degree: usize,
        sum: String,
        closed: String,
    },

    #[error("character is not a rational class function: {0}")]
    BadCharacter(String),

    #[error("inconsistent coset complex: {0}")]
    InconsistentComplex(String),

    #[error("cuspidal table line {line}: {message}")]
    TableParse { line: usize, message: String },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
