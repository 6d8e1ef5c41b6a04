//! Calculator for the dg-stable category of graded Brauer-star algebras `A_{n,d}`.
//!
//! Two independent layers: [`star`] evaluates closed-form formulas on symbols, and
//! [`oracle`] recomputes the same quantities from graded representations over GF(p).
//! [`verify`] sweeps one against the other; [`kronecker`] mechanizes the
//! `k[x,y]/(x², y²)` counterexample.

pub mod error;
pub mod exec;
pub mod kronecker;
pub mod linalg;
pub mod oracle;
pub mod star;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{Matrix, PrimeField};
