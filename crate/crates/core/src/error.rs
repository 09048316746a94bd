use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("delete and contract sets overlap")]
    OverlappingSets,
    #[error("{0} elements exceeds the 32-element limit")]
    TooManyElements(usize),
    #[error("{op} requires at most {limit} elements, got {got}")]
    TooLarge {
        op: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("{{{0}}} is not a circuit")]
    NotACircuit(String),
    #[error("{{{0}}} is not a hyperplane")]
    NotAHyperplane(String),
    #[error("{{{0}}} is not a free basis")]
    NotAFreeBasis(String),
    #[error("cannot tighten the only basis")]
    LastBasis,
    #[error("basis family is not a matroid: {0}")]
    AxiomViolation(String),
    #[error("empty basis family")]
    NoBases,
    #[error("bases have unequal sizes")]
    UnequalBases,
    #[error("construction failed at set {{{set}}}: {reason}")]
    Construction { set: String, reason: String },
    #[error("group mismatch: expected {expected} labels")]
    GroupMismatch { expected: &'static str },
    #[error("loops are not allowed here (edge `{0}`)")]
    LoopPresent(String),
    #[error("edge `{0}` is not a loop")]
    NotALoop(String),
    #[error("{{{0}}} is not a cycle of the graph")]
    NotACycle(String),
    #[error("invalid group value: {0}")]
    InvalidGroupValue(String),
    #[error("bias set violates the theta condition: cycles {0}")]
    ThetaViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
