use thiserror::Error;

/// Errors raised while validating or converting finite algebraic structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has {len} entries, expected {expected}")]
    BadShape { len: usize, expected: usize },
    #[error("entry {value} out of range for size {n}")]
    OutOfRange { value: usize, n: usize },
    #[error("not a permutation: value {value} repeated")]
    NotPermutation { value: usize },
    #[error("row or column of {element} is not a permutation")]
    NotLatin { element: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("identity is {found}, expected element 0")]
    IdentityNotZero { found: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("braid relation fails at ({0}, {1}, {2})")]
    BraidFails(usize, usize, usize),
    #[error("r is not bijective: ({0}, {1}) and ({2}, {3}) have the same image")]
    RNotBijective(usize, usize, usize, usize),
    #[error("solution is not involutive")]
    NotInvolutive,
    #[error("cycle set is degenerate")]
    Degenerate,
    #[error("row {row} is not a permutation")]
    RowNotPermutation { row: usize },
    #[error("axiom fails at ({0}, {1}, {2})")]
    AxiomFails(usize, usize, usize),
    #[error("additive and multiplicative identities differ")]
    IdentityMismatch,
    #[error("groups have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("additive group is not abelian")]
    NotAbelian,
    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("induced quotient map is not well defined")]
    QuotientNotWellDefined,
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
