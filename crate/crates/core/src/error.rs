use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be positive")]
    NonPositive,
    #[error("inductive oracle input {value} exceeds cap {cap}")]
    CapExceeded { value: u64, cap: u64 },
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("element {0} out of range")]
    NoSuchElement(usize),
    #[error("elements {lo} and {hi} are not comparable as lo <= hi")]
    NotComparable { lo: usize, hi: usize },
    #[error("poset is not graded")]
    NotGraded,
    #[error("poset has no minimum element")]
    NoMinimum,
    #[error("unsupported field size q = {0}")]
    UnsupportedField(u32),
    #[error("instance has {size} elements, exceeding the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("turning set {index} has no unique maximum")]
    SharpViolation { index: usize },
    #[error("{y} does not divide {n}")]
    NotADivisor { n: u64, y: u64 },
    #[error("({x}, {y}, {z}) is not an element of A_{n}")]
    NotInAsm {
        n: usize,
        x: usize,
        y: usize,
        z: usize,
    },
    #[error("partitions have different weights {0} and {1}")]
    WeightMismatch(u32, u32),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("map is not an order isomorphism carrying one family onto the other: {0}")]
    NotAnIsomorphism(String),
    #[error("grundy values differ at element {element}: {left} vs {right}")]
    GrundyMismatch {
        element: usize,
        left: u64,
        right: u64,
    },
    #[error("game graph has a cycle through position {0}")]
    CyclicGame(usize),
    #[error("option {option} of position {position} is out of range")]
    BadOption { position: usize, option: usize },
    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(std::time::Duration),
    #[error("parse error: {0}")]
    Parse(String),
}
