use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Exact division left a remainder; carries the remainder's leading term.
    #[error("not divisible: remainder has leading term {leading}")]
    NotDivisible { leading: String },

    #[error("not a polynomial: denominator {denominator} remains")]
    NotPolynomial { denominator: String },

    #[error("zero linear form where a nonzero one is required")]
    ZeroLinearForm,

    #[error("degenerate pairing: <eta, xi> = 0 for eta = {eta}")]
    DegeneratePairing { eta: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),

    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),

    #[error("invalid GKM graph: {0}")]
    InvalidGraph(String),

    #[error("xi is not generic: <eta, xi> = 0 on edge ({from}, {to})")]
    NonGeneric { from: String, to: String },

    #[error("index-increasing hypothesis fails on edges {}", format_edges(.violations))]
    IndexNotIncreasing { violations: Vec<(String, String)> },

    #[error("theta on edge ({from}, {to}) is not a nonzero integer: {value}")]
    NonIntegerTheta { from: String, to: String, value: String },

    #[error("theta on edge ({from}, {to}) has a vanishing denominator")]
    ZeroThetaDenominator { from: String, to: String },

    #[error("theta methods disagree on edge ({from}, {to}): projection {projection}, modular {modular}")]
    ThetaMismatch {
        from: String,
        to: String,
        projection: i64,
        modular: i64,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_edges(edges: &[(String, String)]) -> String {
    edges
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// True for refusals where the input is well formed but a mathematical
    /// hypothesis (genericity, index increasing) does not hold.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NonGeneric { .. } | Error::IndexNotIncreasing { .. } | Error::DegeneratePairing { .. }
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotDivisible { .. } => "not_divisible",
            Error::NotPolynomial { .. } => "not_polynomial",
            Error::ZeroLinearForm => "zero_linear_form",
            Error::DegeneratePairing { .. } => "degenerate_pairing",
            Error::Parse(_) => "parse",
            Error::Schema(_) => "schema",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::NonGeneric { .. } => "non_generic",
            Error::IndexNotIncreasing { .. } => "index_not_increasing",
            Error::NonIntegerTheta { .. } => "non_integer_theta",
            Error::ZeroThetaDenominator { .. } => "zero_theta_denominator",
            Error::ThetaMismatch { .. } => "theta_mismatch",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}
