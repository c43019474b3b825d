use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("negative exponent {0} is not allowed for polynomials")]
    NegativeExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radical expressions have different bases")]
    MixedBases,
    #[error("division is not exact")]
    InexactDivision,
    #[error("radical grade {0}/2 exceeds the supported range |s| <= 8")]
    GradeOverflow(i32),
    #[error("expression carries a square root of the base and has no rational form")]
    NotRational,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degenerate patch: {0}")]
    DegeneratePatch(String),
    #[error("second fundamental form determinant vanishes identically (flat surface)")]
    FlatSurface,
    #[error("tangent planes all pass through the origin; tangential coordinates are undefined")]
    ConeThroughOrigin,
    #[error("operation needs a symbolic patch, got an analytic one")]
    AnalyticPatch,
    #[error("invalid surface specification: {0}")]
    InvalidSpec(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("time budget of {0:.1} s exceeded")]
    BudgetExceeded(f64),
    #[error("no implicit equation of degree <= {0}")]
    NotFound(u32),
    #[error("interpolated equation failed exact verification")]
    SamplingDegenerate,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
