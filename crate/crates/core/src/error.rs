use thiserror::Error;

use crate::exact::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(Field, Field),
    #[error("{field} has no primitive {n}-th root of unity")]
    NoSuchRoot { field: Field, n: u64 },
    #[error("{0} is not a prime (or is too large; moduli must be below 2^32)")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("algebra is not Novikov: {0}")]
    NotNovikov(String),
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("chain is not descending at term {0}; input is probably not Novikov")]
    NotDescending(usize),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("A^{{{r}}}_0 differs from A^[{r}]")]
    Corollary2Violation { r: usize },
    #[error("the 0-component is not right nilpotent")]
    ZeroComponentNotRightNilpotent,
    #[error("search cap {0} exceeded")]
    CapExceeded(usize),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map is not an algebra automorphism")]
    NotAnAutomorphism,
    #[error("eigenspaces span dimension {found} of {dim}; map is not diagonalizable over the base field")]
    NotDiagonalizable { dim: usize, found: usize },
    #[error("map does not have order dividing {0}")]
    OrderMismatch(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("algebra is not commutative and associative")]
    NotCommutativeAssociative,
    #[error("map is not a derivation")]
    NotADerivation,
    #[error("subalgebra is not right nilpotent")]
    NotRightNilpotent,
    #[error("grading violates condition ({0})")]
    ConditionsABViolated(char),
    #[error("parse error: {0}")]
    Parse(String),
}
