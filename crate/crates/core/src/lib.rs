//! Exact computation in finite-dimensional Novikov algebras.
//!
//! An algebra is given by structure constants over `Q` or a prime field.
//! The crate checks the Novikov identities, computes power chains and ideal
//! closures, works with gradings by finite abelian groups and finite groups
//! of automorphisms, and verifies structural statements on concrete
//! instances (see [`verify`]).

pub mod algebra;
pub mod error;
pub mod exact;
pub mod gdgen;
pub mod grading;
pub mod io;
pub mod linspace;
pub mod series;
pub mod symmetry;
pub mod verify;

pub use algebra::{
    check_derived_identities, check_novikov, Algebra, Element, Identity, IdentityReport,
};
pub use error::{Error, Result};
pub use exact::{Field, Scalar};
pub use grading::{FiniteAbelianGroup, Grading, GroupElement};
pub use linspace::{AlgebraMap, Matrix, Subspace};
pub use series::{ChainKind, ChainReport, Verdict};
pub use symmetry::AutomorphismGroup;
