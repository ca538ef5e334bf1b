use thiserror::Error;

/// Errors raised by state construction, measure evaluation and feasibility checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("diagonal entry rho00 = {0} is outside [0, 1]")]
    TraceRange(f64),

    #[error(
        "not positive semidefinite: |rho01|^2 = {off_diag_sq} exceeds rho00*rho11 = {diag_product}"
    )]
    NotPositive { off_diag_sq: f64, diag_product: f64 },

    #[error("pure state is not normalized: |c0|^2 + |c1|^2 = {0}")]
    NotNormalized(f64),

    #[error("weight {0} is outside [0, 1]")]
    WeightRange(f64),

    #[error("ensemble weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("ensemble has no members")]
    EmptyEnsemble,

    #[error("measure `{0}` is not continuous and convex in |c0 c1*|; use the roof oracle instead")]
    NonConvexMeasure(String),

    #[error("isometry columns are not orthonormal (deviation {0})")]
    NotIsometry(f64),

    #[error("isometry must have between 2 and 4 rows, got {0}")]
    IsometrySize(usize),

    #[error("mu = {0} is outside [0, 1]")]
    MuRange(f64),

    #[error("target populations out of order: tau = {tau} exceeds theta = {theta}")]
    BadOrdering { theta: f64, tau: f64 },

    #[error("lower population {0} is outside [0, 1/2]")]
    PopulationRange(f64),

    #[error("unknown measure `{0}` (expected concurrence, formation, geometric, cmax, cmu:<mu> or rank)")]
    UnknownMeasure(String),

    #[error("invalid roof configuration: {0}")]
    RoofConfig(String),

    #[error("grid needs at least {min} points, got {got}")]
    GridSize { min: usize, got: usize },

    #[error("malformed state: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
