//! Exact construction and verification of finite-dimensional quasi-Hopf algebras.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod groupcoh;
pub mod hochschild;
pub mod linalg;
pub mod quasihopf;
pub mod scalars;
pub mod semidirect;
pub mod suite;
pub mod weylcheck;

pub use error::{QhError, Result};
pub use scalars::CycScalar;
