use thiserror::Error;

/// Errors produced while validating tables, constructing groups, or
/// running lattice analyses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(
        "table is not closed: entry at row {row}, column {col} is {value}, outside 0..{order}"
    )]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group of order {requested} exceeds the size budget of {budget}")]
    SizeBudgetExceeded { requested: usize, budget: usize },

    #[error("group of order {order} exceeds the lattice budget of {budget}")]
    LatticeBudgetExceeded { order: usize, budget: usize },

    #[error("action image of element {acting} is not an automorphism: breaks product {x}*{y}")]
    ActionNotAutomorphism { acting: usize, x: usize, y: usize },

    #[error("action is not a homomorphism: images of {a} and {b} do not compose to the image of their product")]
    ActionNotHomomorphism { a: usize, b: usize },

    #[error("no irreducible action of order {q} found in GL({r}, {p}); check the parameters")]
    NoIrreducibleAction { p: usize, q: usize, r: usize },

    #[error("subgroup is not normal in its parent")]
    NotNormal,

    #[error("group order {order} is not a prime power")]
    NotPrimePower { order: usize },

    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: usize, order: usize },

    #[error("group is not a Schmidt group (non-nilpotent with all proper subgroups nilpotent)")]
    NotSchmidt,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("computed structure contradicts a required invariant: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GroupError>;
