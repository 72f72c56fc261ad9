//! Test graph families and exact oracles.
//!
//! The oracles are deliberately naive and share no code with the search
//! and coloring routines they are used to check.

mod generators;
mod oracle;

pub use generators::*;
pub use oracle::*;
