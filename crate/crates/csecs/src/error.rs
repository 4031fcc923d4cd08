use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, Error)]
pub enum CsecsError {
    /// Parameter records that violate their invariants (normalization of the
    /// superposition coefficients, bad grid axes, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The state vanishes (or its norm underflows) for the requested
    /// parameters, e.g. the odd state at `alpha = 0` with `m = n = 0`.
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// Fock-space truncation leaves more probability mass outside the cutoff
    /// than the configured tolerance allows.
    #[error("truncation tail {tail:.3e} exceeds tolerance {tol:.3e}; increase n_max")]
    Truncation { tail: f64, tol: f64 },

    /// Applying a creation operator would push amplitude past the cutoff.
    #[error("operator application would clip a creation step: {0}")]
    Headroom(String),

    /// Doubling the quadrature order moved the result by more than the
    /// convergence tolerance.
    #[error("quadrature did not converge: doubling changed the result by {delta:.3e} (tol {tol:.3e})")]
    Convergence { delta: f64, tol: f64 },

    /// The closed-form inseparability statistic only covers `m = n = 1` with
    /// even parity; other orders must go through the Fock oracle.
    #[error("closed-form statistic covers only m = n = 1 with even parity (got m={m}, n={n}); use the oracle route")]
    UnsupportedOrder { m: u32, n: u32 },

    /// A sweep description that cannot be evaluated.
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, CsecsError>;
