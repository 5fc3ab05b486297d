use thiserror::Error;

/// Errors raised by the order-theoretic constructions and the file front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle detected in cover relation through `{0}`")]
    CycleDetected(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("family or subset is not directed")]
    NotDirected,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("no interpolant found")]
    NoInterpolant,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a basis: {0}")]
    NotABasis(String),
    #[error("not a retract: {0}")]
    NotARetract(String),
    #[error("poset is not pointed")]
    NotPointed,
    #[error("poset lacks finite joins: {0}")]
    NoJoins(String),
    #[error("not a finite lattice: {0}")]
    NotALattice(String),
    #[error("carrier of size {size} exceeds the enumeration bound {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("tower stage {0} is beyond the supported range")]
    StageTooLarge(usize),
    #[error("incompatible tower: {0}")]
    IncompatibleTower(String),
    #[error("family does not approximate: {0}")]
    NotApproximating(String),
    #[error("abstract basis axiom fails: {0}")]
    InvalidBasis(String),
    #[error("Kuratowski induction clause fails: {0}")]
    ClauseViolation(String),
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
