use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("order relation is not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("graph is missing loop at vertex {0}")]
    NotReflexive(usize),

    #[error("graph has arc ({0},{1}) without its reverse")]
    NotSymmetric(usize, usize),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("{family} monoid of degree {n} is beyond the supported bound {max}")]
    InfeasibleDegree {
        family: &'static str,
        n: usize,
        max: usize,
    },

    #[error("projection {0} out of range")]
    OutOfRange(usize),

    #[error("path is empty")]
    EmptyPath,

    #[error("vertices {0} and {1} are not friendly")]
    NotFriendly(usize, usize),

    #[error("projection {0} is not below {1}")]
    NotBelow(usize, usize),

    #[error("({e},{f}) is not {p}-linked")]
    NotLinked { p: usize, e: usize, f: usize },

    #[error("linked pair ({e},{f}) over {p}: degeneracy test disagrees with path reduction")]
    InconsistentClassification { p: usize, e: usize, f: usize },

    #[error("equality undecided in component {0}")]
    UndecidedEquality(usize),

    #[error("map is not a projection algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("boset mismatch: {0}")]
    Mismatch(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("chains belong to different algebras")]
    ForeignChain,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
