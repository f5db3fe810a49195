use thiserror::Error;

/// Everything that can go wrong between loading a benchmark and emitting a table.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid benchmark: {0}")]
    InvalidBenchmark(String),

    #[error("benchmark parse error: {0}")]
    Parse(String),

    #[error("non-positive {segment} margin {margin}")]
    NonpositiveMargin { segment: &'static str, margin: f64 },

    #[error("negative {segment} margin {margin} outside forced perfect competition")]
    NegativeMargin { segment: &'static str, margin: f64 },

    #[error("industrial revenue I - p_ER*E_R = {0} is not positive")]
    NonpositiveIndustrialRevenue(f64),

    #[error("implied competition index n = {0} is below one")]
    CompetitionIndexBelowOne(f64),

    #[error("zero {0} margin implies the perfect competition limit; use forced perfect competition")]
    PerfectCompetitionLimit(&'static str),

    #[error("{which} elasticity {elasticity} violates the bound eps < -1/n (n = {n})")]
    ElasticityBoundViolation {
        which: &'static str,
        elasticity: f64,
        n: f64,
    },

    #[error("income identity violated: relative residual {0:e}")]
    IncomeIdentityViolation(f64),

    #[error("non-positive substitution elasticity {which} = {value}")]
    NonpositiveSigma { which: &'static str, value: f64 },

    #[error("negative energy-sector capital: emission cost exceeds marginal cost bill by {0}")]
    NegativeCapital(f64),

    #[error("pass-through factor singular: 1 + n*eps = 0")]
    PassThroughSingularity,

    #[error("emission-tax special case requires all other shocks to be zero")]
    InvalidSpecialCase,

    #[error("shock on {0} is not meaningful because its base tax is zero")]
    ShockOnZeroTax(&'static str),

    #[error("singular displacement system")]
    SingularSystem,

    #[error("lump-sum transfer base is zero")]
    ZeroTransferBase,

    #[error("free instruments cannot span the constraints")]
    SingularConstraintMap,

    #[error("ill-posed scenario: {0}")]
    IllPosedSpec(String),

    #[error("parametric calibration residual {0:e} exceeds tolerance")]
    CalibrationResidual(f64),

    #[error("equilibrium solve did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("equilibrium iterate left the positive orthant")]
    NonpositiveState,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown built-in scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
