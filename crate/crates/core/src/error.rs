use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// `A(A+4C) < 0`: the quasiparticle gap is imaginary.
    #[error("superradiant regime: A(A+4C) = {gap_sq:e} < 0")]
    SuperradiantRegime { gap_sq: f64 },

    /// `A + 4C = 0`: the Bogoliubov angle diverges.
    #[error("phase boundary: A + 4C = 0, Bogoliubov angle diverges")]
    BoundaryDegenerate,

    #[error("no real transition: g = {g} is below the critical coupling g_c = {g_c}")]
    NoRealTransition { g: f64, g_c: f64 },

    #[error("matrix is not symmetric: max |M[i][j] - M[j][i]| = {asymmetry:e}")]
    NotSymmetric { asymmetry: f64 },

    #[error("eigensolver did not converge after {iterations} iterations (off-diagonal mass {off_diagonal:e})")]
    ConvergenceFailure { iterations: usize, off_diagonal: f64 },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn require_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {x}")))
    }
}

pub(crate) fn require_positive(name: &str, x: f64) -> Result<()> {
    require_finite(name, x)?;
    if x > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be > 0, got {x}")))
    }
}

pub(crate) fn require_nonnegative(name: &str, x: f64) -> Result<()> {
    require_finite(name, x)?;
    if x >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be >= 0, got {x}")))
    }
}
