use alloc::string::String;

/// Engine errors. Each variant corresponds to a rejected input or an
/// operation whose precondition does not hold.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("overlapping segments between strands {0} and {1}")]
    OverlappingSegments(usize, usize),
    #[error("degenerate tangency at {0}")]
    Tangency(String),
    #[error("diagram is not simple ({0} ends)")]
    NotSimple(usize),
    #[error("end mismatch: expected {expected}, found {found}")]
    EndMismatch { expected: String, found: String },
    #[error("leg index {index} out of range for {ends} negative ends")]
    BadIndex { index: usize, ends: usize },
    #[error("too few ends ({0})")]
    TooFewEnds(usize),
    #[error("too many ends ({0})")]
    TooManyEnds(usize),
    #[error("point {point} is not action-negative for ({first}, {second})")]
    ActionViolation { point: String, first: String, second: String },
    #[error("unknown intersection point {point} of ({first}, {second})")]
    UnknownIntersection { point: String, first: String, second: String },
    #[error("incompatible surgeries: {0}")]
    IncompatibleSurgeries(String),
    #[error("secondary-end profiles do not match: {0}")]
    ProfileMismatch(String),
    #[error("word is not evaluable: {0}")]
    NotEvaluable(String),
    #[error("surgery marking is not a cycle in CF({0}, {1})")]
    MarkingNotCycle(String, String),
    #[error("map is not a chain map: {0}")]
    NotChainMap(String),
    #[error("squares do not commute: {0}")]
    NotCommuting(String),
    #[error("triangle is not exact: {0}")]
    NotExact(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("weight violates subadditivity or normalization: {0}")]
    BadWeight(String),
    #[error("missing delta for ({0}, {1})")]
    MissingDelta(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
