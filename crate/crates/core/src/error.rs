use thiserror::Error;

use crate::geom::ItemId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("item {id}: `{field}` exceeds its upper bound")]
    InvertedSpan { id: ItemId, field: &'static str },
    #[error("item {id}: weight must be positive and finite, got {weight}")]
    NonPositiveWeight { id: ItemId, weight: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VcspError {
    #[error("search space of {size} assignments exceeds the brute-force guard of {guard}")]
    TooLarge { size: u128, guard: u128 },
    #[error("tree decomposition is not valid for the instance's Gaifman graph")]
    InvalidDecomposition,
    #[error("variable {var} has an empty domain")]
    EmptyDomain { var: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("enumeration budget exceeded: {what} reached {count} (cap {cap})")]
    BudgetExceeded { what: &'static str, count: u128, cap: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("solver produced a dependent set in branch `{0}`")]
    NotIndependent(String),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("items[{index}].{field}: {msg}")]
    Field { index: usize, field: &'static str, msg: String },
    #[error("duplicate item id {id} at items[{index}]")]
    DuplicateId { id: ItemId, index: usize },
    #[error("unknown instance kind `{0}` (expected `rect` or `seg`)")]
    UnknownKind(String),
    #[error("invalid weight spec `{0}`")]
    WeightSpec(String),
}
