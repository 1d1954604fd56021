//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// `q^k` came within `tol` of 1 for some `k` up to the guard order.
    #[error("q is too close to a root of unity: |q^{k} - 1| <= tol")]
    RootOfUnity { k: u32 },

    /// `|q - q^{-1}| <= tol`; q-numbers are undefined.
    #[error("degenerate base: |q - 1/q| <= tol")]
    DegenerateBase,

    /// A scalar that must be nonzero (or finite) was not.
    #[error("invalid scalar input: {0}")]
    InvalidScalar(&'static str),

    /// A denominator q-Pochhammer factor vanished before the series terminated.
    #[error("denominator Pochhammer factor vanishes at k = {k}")]
    DenominatorPole { k: usize },

    /// The rewrite engine exceeded its step bound. Signals an implementation
    /// bug in the rule set, not a user error.
    #[error("normal-ordering did not terminate within the step bound")]
    NonTermination,

    /// `[lambda] = [lambda +- 1]` or `[lambda] = 0` while `(A1, A2) != (0, 0)`.
    #[error("shift operator denominator vanishes at q^lambda = {qlam}")]
    ShiftDenominatorZero { qlam: String },

    /// `g_j` vanished in the characteristic-polynomial factorisation.
    #[error("g_{j} vanishes; q^(2mu) is on a forbidden odd power of q")]
    GDenominatorZero { j: i64 },

    /// Some `A_{k-1}` in the x-basis rescaling vanishes.
    #[error("x-basis rescaling is singular: A_{j} = 0")]
    RescaleSingular { j: i64 },

    /// A representation-family precondition failed; names the offender.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("matrix dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    /// No intertwiner exists between two representations.
    #[error("representations are not equivalent")]
    NotEquivalent,

    /// `q^{(N+1)/2} = q^{-(N+1)/2}`; the trace prefactor is zero.
    #[error("degenerate trace prefactor")]
    DegeneratePrefactor,

    /// A `C_k` in the transition-matrix product vanished.
    #[error("zero denominator C_{k} in transition matrix product")]
    ZeroDenominator { k: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("serialization error: {0}")]
    Serde(String),
}
