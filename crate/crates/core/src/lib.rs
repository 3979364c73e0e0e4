//! Exact symbolic computation in the free perm algebra with derivation and
//! its derived-operation subalgebras.
//!
//! The crate provides:
//!
//! * canonical arithmetic for perm monomials with derivation ([`term`]),
//! * normal-form bases, the `>`-term construction and the der-lex order
//!   ([`rewrite`]),
//! * exact rational linear algebra over monomial coordinates ([`linalg`]),
//! * identity templates and operadic dimension computations ([`identities`]),
//! * the dialgebra decomposition and axiom checks ([`dialgebra`]).
//!
//! All values are immutable after construction and all operations are pure;
//! coefficients are exact rationals throughout.

pub mod dialgebra;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod rewrite;
pub mod term;

pub use error::{Error, Result};
pub use term::{
    DiffPoly, Generator, MagmaOp, MagmaPoly, MagmaTerm, PermMonomial, Rational,
};
