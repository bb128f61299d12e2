use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("two poles share the position {0}")]
    DuplicatePole(Complex64),
    #[error("pole at {0} has zero residue")]
    ZeroResidue(Complex64),
    #[error("pole position or residue is not finite")]
    NonFinite,
    #[error("a character form needs at least two poles, got {0}")]
    TooFewPoles(usize),
    #[error("evaluation point {0} is within the guard distance of a pole")]
    EvalAtPole(Complex64),
    #[error("numerator of the form vanishes identically")]
    DegenerateForm,
    #[error("closed-form zeros are only available for numerators of degree <= 2 (got {0})")]
    UnsupportedDegree(usize),
    #[error("invalid angle data: {0}")]
    BadAngle(String),
    #[error("leading coefficient of the P_gamma quadratic vanishes")]
    DegenerateQuadratic,
    #[error("the P_gamma quadratic has a double root")]
    DoubleRoot,
    #[error("points {0} and {1} collide")]
    CollidingPoles(Complex64, Complex64),
    #[error("beta*P_gamma - gamma*P_beta vanishes; P_alpha is undefined")]
    DivisionByZero,
    #[error("p_beta = {0} is excluded from the special family")]
    ExcludedPoint(Complex64),
    #[error("pole triple violates the zero constraints (residuals {0:e}, {1:e})")]
    ConstraintViolated(f64, f64),
    #[error("finite-difference stencil around {0} touches a singular point")]
    StencilHitsSingularity(Complex64),
    #[error("stencil step {0} is outside the supported range")]
    BadStep(f64),
    #[error("{0} is neither a pole nor a zero of the form")]
    NotASingularPoint(String),
    #[error("quadrature contour around {0} passes too close to another pole")]
    QuadratureNearPole(String),
    #[error("radial trace failed: {0}")]
    TraceDiverged(String),
    #[error("trace did not reach its endpoint (defect {0:e})")]
    EndpointNotReached(f64),
    #[error("shooting failed: {0}")]
    ShootingFailed(String),
    #[error("geodesic integration came within {0:e} of a singular point")]
    StepNearPole(f64),
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("degenerate spherical triangle ({0})")]
    DegenerateTriangle(String),
}
