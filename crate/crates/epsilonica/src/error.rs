use thiserror::Error;

/// Errors produced by field arithmetic, analytic lifting, and the calculus
/// procedures built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("context mismatch: operands carry different arithmetic contexts")]
    ContextMismatch,

    #[error("scalar mode mismatch: exact and float values cannot mix")]
    ModeMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("depth must be at least 2, got {0}")]
    DepthTooSmall(u32),

    #[error("standard part undefined for infinite elements")]
    StandardPartUndefined,

    #[error("cannot decompose zero")]
    DecomposeZero,

    #[error("fractional power requires a positive leading coefficient")]
    FractionalPowerOfNegative,

    #[error("{0} is not exactly representable; use float mode")]
    NotExactlyRepresentable(String),

    #[error("pi is not an exact rational; use float mode")]
    PiRequiresFloatMode,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("{func} unliftable at infinite argument")]
    UnliftableAtInfiniteArgument { func: &'static str },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("expected a positive first argument")]
    NonPositiveMultiplicand,

    #[error("precondition violation: requires a < b and c > 0")]
    LemmaPrecondition,

    #[error("non-positive magnitude in proportion")]
    NonPositiveMagnitude,

    #[error("witness out of range for a machine integer")]
    WitnessOverflow,

    #[error("not differentiable at {0}")]
    NotDifferentiable(String),

    #[error("no bracketed critical point: derivative does not change sign")]
    NoBracketedCriticalPoint,

    #[error("probe must be infinitesimal, got {0}")]
    ProbeNotInfinitesimal(String),

    #[error("delta grid must be positive and strictly descending")]
    BadDeltaGrid,

    #[error("geometric comparison undefined at zero")]
    GeometricZero,

    #[error("orders incomparable: ratio infinite")]
    RatioInfinite,

    #[error("surrogate invalid: base non-positive (requires |x| < j)")]
    SurrogateBaseNonPositive,

    #[error("factor count j must lie in 2..=64, got {0}")]
    FactorCountOutOfRange(u64),

    #[error("exact-mode computation capped at {limit} for this operation; use float mode")]
    ExactSizeCap { limit: u64 },

    #[error("alpha and halfwidth must be positive")]
    NonPositiveKernelParameter,

    #[error("no decomposition: quantity tends to infinity")]
    NoDecomposition,

    #[error("sequence diverges to infinity")]
    SequenceDiverges,

    #[error("limit not computable by this method: {0}")]
    LimitNotComputable(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("expected a scalar value, got `{0}`")]
    NotAScalar(String),
}

pub type Result<T> = std::result::Result<T, Error>;
