//! Minimum length of binary linear codes with prescribed minimum distance
//! `d` and dual distance `d⊥`.
//!
//! The crate computes closed-form lower and upper bounds on `N(d, d⊥)`,
//! Delsarte-style linear-programming lower bounds (plain and with parity
//! case analysis) in exact rational arithmetic, decides existence of codes
//! by exhaustive search, and ships a catalog of optimal witness codes.
//! Brute-force checkers for resilience and the extended propagation
//! criterion cover the Boolean-function side of the problem.

pub mod boolean;
pub mod bounds;
pub mod catalog;
pub mod enumerative;
mod error;
pub mod gf2;
pub mod lp;
pub mod search;
pub mod table1;

pub use crate::boolean::TruthTable;
pub use crate::bounds::{bound_report, BoundReport, Method, MethodSet, TrueValue, TrueValueSource};
pub use crate::catalog::CatalogEntry;
pub use crate::enumerative::{ExactInt, ExactRational};
pub use crate::error::{Error, Result};
pub use crate::gf2::{BinaryMatrix, LinearCode, WeightDistribution};
pub use crate::lp::{LpInstance, Parity, ParityCase};
pub use crate::search::{
    exists_code, true_n, Budget, SearchOptions, SearchOutcome, TrueStatus, Verdict,
};
