use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index {index} out of range (size {size}) at {context}")]
    IndexOutOfRange {
        index: usize,
        size: usize,
        context: String,
    },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("sandwich matrix is not regular: {0}")]
    IrregularSandwich(String),

    #[error("sandwich entry ({row},{col}) is zero but the spec has no adjoined zero")]
    ZeroEntryWithoutZeroFlag { row: usize, col: usize },

    #[error("action is not compatible: state {a}, elements {s}, {t}: a(st) != (as)t")]
    IncompatibleAction { a: usize, s: usize, t: usize },

    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("state set is not a subact")]
    NotASubact,

    #[error("congruences belong to different acts")]
    ActMismatch,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("semigroup is not a rectangular band")]
    NotARectangularBand,

    #[error("enumeration budget exceeded: {raw} raw tables > budget {budget}")]
    BudgetExceeded { raw: u128, budget: u128 },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed JSON{}: {message}", .path.as_ref().map(|p| format!(" in {p}")).unwrap_or_default())]
    Parse { path: Option<String>, message: String },

    #[error("closed form and brute force disagree: {0}")]
    DisagreementFound(String),
}
