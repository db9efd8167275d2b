//! Orbit diagnostics for power-bounded operators on sequence spaces and on
//! finite-dimensional spaces: certified sup norms, orbit packing profiles,
//! Cesàro means and mean-ergodic projections, the reversible / almost weakly
//! stable split of a matrix, and `c₀`-ladders extracted from non-compact
//! orbits.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
//!
//! The `parallel` feature (on by default) runs distance tables, subset
//! audits and power batteries on rayon; without it every [`Execution`]
//! falls back to a sequential loop.

pub mod ergodic;
pub mod error;
pub mod exec;
pub mod gallery;
pub mod jdlg;
pub mod linalg;
pub mod matrix_file;
pub mod operators;
pub mod orbits;
pub mod seqspace;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Execution;
pub use operators::{DiagonalOperator, DiagonalSymbol, MatrixOperator, Operator, OperatorWord};
pub use seqspace::{
    distance, lin_comb, sup_norm, Certified, FiniteVector, NormTag, SeqVector, SpaceTag, TailCertificate, Vector, C64,
};
