//! Command-line front end for `dforms`: JSON tensor files, invariant
//! evaluation, identity verification, Pfaffians and fixture generation.
//!
//! Exit status is 0 on success, 1 when an asserted identity has a nonzero
//! residual and 2 for malformed input or violated bounds.

pub mod commands;
mod error;
pub mod report;
pub mod tensor;

pub use error::CliError;
pub use report::Report;
pub use tensor::{Tensor, TensorFile};
