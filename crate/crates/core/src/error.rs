use thiserror::Error;

/// Errors surfaced by the numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// Gamma evaluated at a nonpositive integer, or zeta at s = 1.
    #[error("pole: {0}")]
    Pole(String),

    /// Requested evaluation outside the validated domain of an oracle.
    #[error("precision domain exceeded: {0}")]
    Precision(String),

    /// A quadrature or series failed to meet its error target within budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Argument outside the domain of definition (sector, disk, half-line).
    #[error("domain violation: {0}")]
    Domain(String),

    /// Root polishing stalled or produced an inconsistent root set.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// Exact functional-equation check failed; indicates a construction bug.
    #[error("functional equation violated for m = {0}")]
    FunctionalEquation(usize),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
