//! Finite commutative residuated lattices and their Kalman twist-products.
//!
//! The crate builds small residuated lattices from explicit operation
//! tables, checks equations on them by exhaustive evaluation, computes
//! congruence and subalgebra structure, constructs twist-products
//! (K-expansions) together with their admissible subalgebras, and compares
//! finitely generated subvarieties through HS closures.
//!
//! Every algebra is a [`algebra::FiniteAlgebra`]: a universe `{0, .., n-1}`
//! with row-major tables for join, meet, multiplication and residuation,
//! a monoid unit, and optional labels. All operations on algebras are pure
//! functions, so values can be shared freely across threads.
//!
//! The `examples/` directory of this crate has one runnable program per
//! capability; `cargo run --example <name>` is the quickest tour. The
//! `reslat` binary exposes the same operations as subcommands over JSON
//! files.
//!
//! ```
//! use reslat::constructors::wajsberg_chain;
//! use reslat::kexpansion::k_expand;
//! use reslat::terms::{named_equation, satisfies};
//!
//! let chain = wajsberg_chain(3)?;          // the 4-element chain Ł_3
//! let twist = k_expand(&chain)?;           // its 16-element twist-product
//! assert_eq!(twist.algebra().size(), 16);
//! assert!(satisfies(twist.algebra(), &named_equation("K1").unwrap()));
//! # Ok::<(), reslat::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod algebra;
pub mod cli;
pub mod congruences;
pub mod constructors;
pub mod kexpansion;
pub mod reproduce;
pub mod subalgebras;
pub mod terms;
pub mod varieties;

/// Crate-wide error type.
///
/// Structural problems (bad table shapes, out-of-range entries) are kept
/// distinct from axiom failures, which are reported through
/// [`algebra::ValidationReport`] instead.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbound variable {0}")]
    UnboundVar(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
