use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    /// `E <= -mu`: the coupling `mu + E` must stay positive.
    #[error("energy {energy} is not above -mu = {neg_mu}")]
    EnergyDomain { energy: f64, neg_mu: f64 },

    #[error("no real channel: radicand {radicand} is negative")]
    NoRealChannel { radicand: f64 },

    #[error("Rodrigues oracle only supports degree <= {max}, got {degree}")]
    OracleRange { degree: usize, max: usize },

    #[error("index {index} outside [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("no real k: the form is not reducible with real parameters")]
    NoRealK,

    #[error("no branch with negative tau slope")]
    NoPhysicalBranch,

    #[error("{what} did not converge after {iterations} iterations (bracket [{lo}, {hi}], residual {residual})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
        residual: f64,
    },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("eigenvalue not converged between resolutions: {coarse} vs {fine}")]
    Accuracy { coarse: f64, fine: f64 },

    #[error("integration failed: {0}")]
    Integration(String),
}
