use thiserror::Error;

use crate::mathieu::ParityClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter must be finite, got {0}")]
    NonFinite(f64),

    #[error(
        "eigenvalue k={k} of class {class} at q={q} did not converge before n_max={n_max} \
         (last delta {last_delta:e})"
    )]
    NotConverged {
        class: ParityClass,
        k: usize,
        q: f64,
        n_max: usize,
        last_delta: f64,
    },

    #[error("ambiguous zero of the eigenfunction near phi={phi} (|H| = {value:e} without sign change)")]
    AmbiguousZero { phi: f64, value: f64 },

    #[error(
        "not a sub-Laplacian: every generator has zero T-component (a_j = 0 for all j), \
         so the generators do not satisfy the bracket condition and the operator is not hypoelliptic"
    )]
    AllHorizontalA,

    #[error(
        "not a sub-Laplacian: the horizontal quadratic form sum U_j^2 - U^2 vanishes (b = c = 0), \
         so the operator is not hypoelliptic"
    )]
    DegenerateForm,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("multiplier does not decay fast enough: tail {tail:e} exceeds tolerance {tol:e} ({context})")]
    NonDecaying { tail: f64, tol: f64, context: String },

    #[error("grid too coarse: frequency {required} exceeds the Nyquist limit {nyquist}")]
    GridTooCoarse { required: f64, nyquist: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("root finding failed: {0}")]
    Root(String),

    #[error("the spectrum is discrete for n = 0; list it with `abelian::discrete_spectrum` instead")]
    DiscreteSpectrum,

    #[error("lambda = {h}^2 is a jump point of chi; use chi_rt_left / chi_rt_right")]
    JumpPoint { h: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
