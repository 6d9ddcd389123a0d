//! Exact construction and verification of Yang–Baxter solutions built from
//! associative algebras with cyclic trace forms.

pub mod algebra;
pub mod arith;
pub mod baxterize;
pub mod bd;
pub mod checkers;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod solutions;
pub mod tensor;
pub mod triples;

pub use error::{Error, Result};
