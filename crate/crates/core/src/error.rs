use thiserror::Error;

/// Errors shared by all operations of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity must be at least 1")]
    EmptyInput,

    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,

    #[error("monomial {monomial} is not in normal form: {clause}")]
    NotNormalForm { monomial: String, clause: String },

    #[error(
        "monomial {monomial} is not expressible in terms of `>`: \
         it needs weight -1 and an underived last factor (got wt={weight}, k_n={last_der})"
    )]
    NotSuccExpressible {
        monomial: String,
        weight: i64,
        last_der: u32,
    },

    #[error("monomial {monomial} has weight {weight}, not -1; it lies outside the dialgebra image")]
    NotInDialgebra { monomial: String, weight: i64 },

    #[error("term {term} is not indexed by the frozen indexer")]
    UnknownBasisElement { term: String },

    #[error("dimension mismatch: matrix has {cols} columns, vector has {len} entries")]
    DimensionMismatch { cols: usize, len: usize },

    #[error("unknown identity name `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
