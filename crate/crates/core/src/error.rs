use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("Simpson quadrature needs an even, nonzero panel count (got {0})")]
    OddPanels(usize),

    #[error("configurations differ (radius, sigma and n_max must match exactly)")]
    ConfigMismatch,

    #[error("coefficient vector has length {got}, basis dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state has zero norm")]
    ZeroState,

    #[error("state is not normalized: |c|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("momentum label {n} outside the basis [-{n_max}, {n_max}]")]
    IndexOutOfRange { n: i64, n_max: usize },

    #[error("momentum shift {k} exceeds the representable range |k| <= {limit}")]
    ShiftOutOfRange { k: i64, limit: i64 },

    #[error("theta series requires Im(tau) > 0 (got {0})")]
    ThetaDomain(f64),

    #[error("theta series did not reach tolerance within {0} terms")]
    ThetaNoConvergence(usize),

    #[error("all coefficients underflowed to zero")]
    Underflow,

    #[error("Wigner value has imaginary part {imag:.3e}; density matrix is inconsistent")]
    ImaginaryWigner { imag: f64 },
}
