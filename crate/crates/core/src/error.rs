use num_bigint::BigInt;
use thiserror::Error;

use crate::signature::SignatureSequence;
use crate::trinomial::ValidationError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("monoid is not unmixed; null relation {relation:?}")]
    NotUnmixed { relation: Vec<BigInt> },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("operation needs a unit partition")]
    NotUnitPartition,
    #[error("data has dimension {dimension}; exactly one block of size two is required")]
    NotDimensionThree { dimension: usize },
    #[error("data is not reduced")]
    NotReduced,
    #[error("grading is not pointed: some nonzero nonnegative combination of degrees vanishes")]
    NotPointed,
    #[error("polynomial is not homogeneous ({})", match .index { Some(i) => format!("generator {i}"), None => "target".to_string() })]
    NotHomogeneous { index: Option<usize> },
    #[error("expected {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("budget exhausted after {} elements", .0.elements.len())]
    BudgetExhausted(Box<SignatureSequence>),
}
