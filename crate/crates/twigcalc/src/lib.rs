//! Exact combinatorial calculus on weighted dual graphs of rational cuspidal
//! plane curves.
//!
//! The library computes, in exact arbitrary-precision arithmetic, the
//! invariants attached to simple normal crossing divisors on blown-up planes:
//! discriminants of intersection matrices, the delta/e/u calculus on twigs,
//! bark divisors, Hamburger-Noether pair arithmetic with a full blow-up
//! simulator, and the bounded exhaustive searches that classify resolution
//! chains of cusps. On top of that sits a rectifiability certifier for
//! user-supplied curve data and a check registry (`verify`) that re-runs every
//! enumeration and Diophantine elimination and reports pass/fail.
//!
//! Floating point is not used anywhere; every rational value is a
//! [`num::BigRational`] and every determinant a [`num::BigInt`].
//!
//! Entry points:
//! - [`dual_graph`]: weighted trees, discriminants, definiteness, blow-downs.
//! - [`twig`]: delta/e/u invariants and bark coefficients.
//! - [`search`]: chain enumerators and the five-cusp search.
//! - [`hn`]: Hamburger-Noether pairs, multiplicity sequences, blow-up simulator.
//! - [`curve`]: whole-curve assembly, inequality reports, four-cusp case analysis.
//! - [`verify`]: the declarative check registry behind `twigcalc verify-paper`.

pub mod cli;
pub mod curve;
pub mod dual_graph;
pub mod hn;
pub mod numeric;
pub mod search;
pub mod twig;
pub mod verify;

pub use dual_graph::{Chain, DualGraph};
pub use numeric::{Int, Rat};

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty divisor has no definiteness")]
    EmptyDivisor,
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("bark is defined only for trees that are not chains")]
    BarkOfChain,
    #[error("not negative definite: {0}")]
    NotNegativeDefinite(String),
    #[error("contraction not allowed: {0}")]
    Contraction(String),
    #[error("invalid H-N pair sequence: {0}")]
    HnPairs(String),
    #[error("impossible configuration: {0}")]
    ImpossibleConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
