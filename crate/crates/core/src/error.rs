use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("reduction exceeded {budget} steps while reducing `{word}`")]
    Nontermination { word: String, budget: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("excluded parameter value: {name} = {value}")]
    ExcludedParameter { name: String, value: String },

    #[error("rule `{lhs}` does not decrease in length-lexicographic order")]
    NonDecreasingRule { lhs: String },

    #[error("Haar functional undefined on `{0}`")]
    HaarUndefined(String),

    #[error("braiding has trivial kernel of I+tau: exterior algebra has no higher-order part")]
    TrivialBraidingKernel,

    #[error("inconsistent instance: {0}")]
    Inconsistent(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
