use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature order {got} is below the minimum of {min}")]
    QuadOrderTooSmall { got: usize, min: usize },

    #[error("requested {modes} modes but quadrature order {quad_order} resolves at most {max}")]
    InsufficientResolution { modes: usize, quad_order: usize, max: usize },

    #[error("eigenvalue {index} = {value:e} is below the resolvable floor {floor:e}")]
    Unresolvable { index: usize, value: f64, floor: f64 },

    #[error("symmetric eigensolver did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("mode {mode} out of range (spectrum holds modes 0..={n_max})")]
    ModeOutOfRange { mode: usize, n_max: usize },

    #[error("abscissa {x} lies outside [-1, 1]")]
    AbscissaOutOfRange { x: f64 },

    #[error("signal has zero energy")]
    ZeroEnergy,

    #[error("signal has zero L1 norm")]
    ZeroL1Norm,

    #[error("requested omega_max {omega_max} exceeds the Nyquist limit {nyquist} of the sampling grid")]
    GridTooCoarse { omega_max: f64, nyquist: f64 },

    #[error("signal tails do not decay: edge magnitude ratio {ratio:e} exceeds {limit:e}")]
    NonDecayingTails { ratio: f64, limit: f64 },

    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("concentration pair ({alpha}, {beta}) is excluded from the admissibility theorem")]
    ExcludedPair { alpha: f64, beta: f64 },

    #[error("inconsistent specification: {0}")]
    InconsistentSpec(String),

    #[error("pair ordering violated: smaller pair must be componentwise in (0, larger]")]
    OrderingViolated,

    #[error("system is not stable: {0}")]
    Unstable(String),

    #[error("system is not strictly proper; impulse response contains an impulse")]
    ImproperForSimulation,

    #[error("transfer function is improper (numerator degree {num} > denominator degree {den})")]
    Improper { num: usize, den: usize },

    #[error("step dt = {dt} does not resolve the fastest pole (dt*|p| = {product} > {limit})")]
    InadequateStep { dt: f64, product: f64, limit: f64 },

    #[error("system has zero DC gain")]
    ZeroDcGain,

    #[error("|H(jw)| is not integrable on [0, inf): relative degree {relative_degree} < 2")]
    NonIntegrable { relative_degree: usize },

    #[error("no -3 dB crossing found below omega_max = {omega_max}")]
    NoCrossing { omega_max: f64 },

    #[error("step response has no peak (monotone response)")]
    NoPeak,

    #[error("adaptive quadrature failed to reach tolerance {tol:e} (estimate {estimate:e})")]
    QuadratureFailure { tol: f64, estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
