//! Braid compilation for Fibonacci anyons.

pub mod algebra;
pub mod braid;
pub mod error;
pub mod io;
pub mod matrix;
pub mod search;
pub mod sk;
pub mod su2;
pub mod two_qubit;
pub mod verify;

pub use error::{Error, Result};
