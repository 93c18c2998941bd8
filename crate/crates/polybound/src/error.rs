use thiserror::Error;

/// Errors produced by the solver, the P-number machinery and the bound engine.
#[derive(Debug, Error)]
pub enum Error {
    /// The potential has no confining term, so there is no discrete spectrum
    /// to target.
    #[error("no confining term: the highest-exponent coupling must be positive")]
    NonConfining,

    /// A potential definition violated an invariant (ordering, sign rules,
    /// extension flags). The message pinpoints the offending term or field.
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// A quantum-number triple violated its invariants.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The eigensolver failed to converge. Carries the last energy bracket so
    /// callers can inspect or restart.
    #[error("eigensolver did not converge ({detail}); last bracket [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64, detail: String },

    /// An argument was outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Gamma-function evaluation would overflow in the requested formula.
    #[error("gamma overflow evaluating explicit P approximation at q={q}, d={d}")]
    GammaOverflow { q: f64, d: u32 },

    /// Cache file I/O or decoding failure.
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
