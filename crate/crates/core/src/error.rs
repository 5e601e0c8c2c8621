use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate tuple: element {0} repeated")]
    DegenerateTuple(u32),
    #[error("element {element} outside ground set 1..={n}")]
    ElementOutOfRange { element: u32, n: usize },
    #[error("tuple has length {got}, expected {expected}")]
    TupleLength { got: usize, expected: usize },
    #[error("not a restricted growth string: {0}")]
    InvalidRgs(String),
    #[error("invalid pivot sequence: {0}")]
    InvalidPivots(String),
    #[error("facets F_{0} and F_{1} share a ridge but are not consecutive")]
    RidgeViolation(usize, usize),
    #[error("end facets share vertices {0:?}")]
    NotEndDisjoint(Vec<u32>),
    #[error("points not in general position: basis {0:?} has zero determinant")]
    NotGeneralPosition(Vec<u32>),
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<u32>),
    #[error("facets {0:?} and {1:?} are not connected in the dual graph")]
    Disconnected(Vec<u32>, Vec<u32>),
    #[error("shortcut is a direct pivot; instance infeasible by construction")]
    ShortcutWithoutInterior,
    #[error("clause contains a literal and its negation: {0:?}")]
    TautologicalClause(Vec<i32>),
    #[error("partial assignment: variable {0} unassigned")]
    PartialAssignment(usize),
    #[error("contradictory bounds at Δ({d},{n}): [{lo},{hi}] after {rule}")]
    ContradictoryBounds {
        d: usize,
        n: usize,
        lo: usize,
        hi: usize,
        rule: String,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("backend failure: {0}")]
    Backend(String),
    #[error("invalid parameters: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
