use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The recurrence produced a non-finite value.
    #[error("precision error: {0}")]
    Precision(String),

    /// The oscillatory Darboux–Szegő envelope was requested at θ = 0 or θ = π.
    #[error("singular envelope at theta = {theta}")]
    SingularEnvelope { theta: f64 },

    /// A quadrature disagreed with its refinement.
    #[error("resolution error in {what}: coarse = {coarse:e}, refined = {refined:e}")]
    Resolution {
        what: String,
        coarse: f64,
        refined: f64,
    },

    /// The scaled support `R / sqrt(nu)` does not fit in the chart `rho <= pi/2`.
    #[error("chart overflow: support radius {radius} needs nu >= {min_nu}, got nu = {nu}")]
    ChartOverflow { radius: f64, nu: u64, min_nu: u64 },

    /// A sweep spans less than the minimum parameter ratio.
    #[error("insufficient sweep range: max/min = {ratio}, need at least {required}")]
    InsufficientRange { ratio: f64, required: f64 },
}
