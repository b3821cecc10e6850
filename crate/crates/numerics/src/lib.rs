//! Numerical real-regulator integrals on hyperelliptic curves: invariant
//! volume forms, the function `I(lambda)` on Legendre curves, the bielliptic
//! splitting and the pairing of the basic cycle with `tau`.

pub mod bielliptic;
pub mod cover;
pub mod elliptic;
pub mod forms;
pub mod model;
pub mod pairing;
pub mod periods;
pub mod quadrature;
pub mod sum;

pub use bielliptic::{
    bielliptic_identity_check, build_bielliptic, BiellipticChecks, BiellipticModel, BiellipticReport,
    DoubleCover, Verdict,
};
pub use cover::{build_genus3_cover, CoverChecks, Genus3Cover};
pub use elliptic::{covolume_by_quadrature, functional_equation, i_of_lambda, FunctionalEquation, ILambda};
pub use forms::{gram_matrix, gram_normalize, gram_normalize_basis, GramData, VolumeForm};
pub use model::ComplexCurveModel;
pub use num_complex::Complex64;
pub use pairing::{regulator_pairing_k, LogFactor};
pub use periods::{agm, elliptic_periods, monte_carlo_i, weierstrass_p, EllipticPeriods, MonteCarloEstimate};
pub use quadrature::{
    integrate_curve, integrate_scalar, CurveIntegral, Density, Integrand, Precision, QuadOptions, QuadratureResult,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("lambda = {0} is degenerate (0 or 1)")]
    DegenerateLambda(Complex64),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("a curve model needs at least three finite branch points")]
    TooFewBranchPoints,
    #[error("repeated branch point {0}")]
    RepeatedBranchPoint(Complex64),
    #[error("Gram matrix is not numerically positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("expected genus at least {expected}, got {actual}")]
    Genus { expected: usize, actual: usize },
    #[error("basis of shape {rows}x{cols} does not fit genus {genus}")]
    BasisShape { rows: usize, cols: usize, genus: usize },
}
