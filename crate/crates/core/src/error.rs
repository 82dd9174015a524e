use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a Latin square: {axis} {index} repeats element {value}")]
    NotLatinSquare { axis: &'static str, index: usize, value: usize },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },

    #[error("associativity fails for ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("subset over universe {found} used with a group of order {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("operation needs a nonempty point multiset")]
    EmptyPoints,

    #[error("operation needs a nonempty family")]
    EmptyFamily,

    #[error("the empty set has no finite cover by translates")]
    EmptyCoverTarget,

    #[error("sample of size {0} exceeds the 30-point shattering guard")]
    SampleTooLarge(usize),

    #[error("work budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("approximation certificate is not verified")]
    UnverifiedCertificate,

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
