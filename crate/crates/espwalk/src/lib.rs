//! Continuous-time quantum walks on normal Cayley graphs of extraspecial
//! 2-groups.
//!
//! An extraspecial 2-group of order `2^(2n+1)` has a unique central
//! involution `z`, and a normal Cayley graph on it is determined by a set of
//! conjugacy-class representatives (nonzero vectors of `F_2^(2n)`) together
//! with a flag for `z`. For these graphs, perfect state transfer, fractional
//! revival, and instantaneous uniform mixing all reduce to closed-form
//! arithmetic on the class data: 2-adic valuations of the quantities
//! `ℓ − e_y`, where `ℓ` is the number of size-2 classes and `e_y` counts the
//! class representatives orthogonal to `y`.
//!
//! This crate implements both sides of that story:
//!
//! - the closed-form criteria ([`criteria`]), driven by bit arithmetic over
//!   `F_2` ([`gf2`]), explicit group construction ([`group`]), and the
//!   integral spectrum of the graphs ([`cayley`]);
//! - an independent numeric oracle ([`walk`]) that builds the transition
//!   matrix `U(t) = Σ e^{itθ} Ẽ_θ` from character idempotents ([`chartab`])
//!   and detects state transfer by direct inspection of matrix columns.
//!
//! Every verdict the criteria produce can be cross-checked against the
//! oracle; the [`verify`] module packages those cross-checks into a suite,
//! and [`search`] classifies every admissible connection set for small `n`.
//!
//! The `parallel` feature (enabled by default) runs the search and batch
//! verification on a rayon thread pool; without it the same code paths run
//! sequentially.

pub mod cayley;
pub mod chartab;
pub mod cli;
pub mod criteria;
pub mod gf2;
pub mod group;
pub mod report;
pub mod search;
pub mod verify;
pub mod walk;

pub use cayley::{ConnectionSet, SpectrumSummary};
pub use criteria::{DyadicPi, FrCase, FrReport, MixingReport, PstReport};
pub use gf2::{GF2Subspace, GF2Vector, PartialSpread, Valuation};
pub use group::{ExtraspecialGroup, GroupElement, IsoType};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands have incompatible lengths or shapes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// No irreducible polynomial is stored for the requested field degree.
    #[error("no irreducible polynomial stored for GF(2^{0}); supported degrees are 1..=4")]
    UnsupportedFieldDegree(u32),
    /// Textual input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A connection set or spread failed validation.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Numeric data violated a structural identity it is required to satisfy.
    #[error("inconsistent input: {0}")]
    Inconsistency(String),
    /// A precondition documented on the operation was not met by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
