use thiserror::Error;

/// Every failure the engine reports. Diagnostics carry offending polynomials
/// in the canonical text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("order of the zero polynomial is infinite")]
    InfiniteOrder,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),

    #[error("irrational locus: {0}")]
    IrrationalLocus(String),

    #[error("point {point} is not on the hypersurface {equation}")]
    PointOffHypersurface { point: String, equation: String },

    #[error("center is not coordinate-aligned: {0}")]
    NonAlignedCenter(String),

    #[error("center is not smooth: {0}")]
    SingularCenter(String),

    #[error("principal transform not divisible by {exceptional}^{control}: {generator}")]
    NotDivisible { generator: String, exceptional: String, control: u32 },

    #[error("no coordinate-aligned maximal contact for {0}")]
    NoMaximalContact(String),

    #[error("coefficient ideal for control {0} is not supported")]
    CoefficientIdealUnsupported(u32),

    #[error("non-reduced component: {0}")]
    NonReduced(String),

    #[error("unsupported localization: {0}")]
    UnsupportedLocalization(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
