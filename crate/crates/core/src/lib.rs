//! Set-theoretic solutions of the Yang-Baxter equation, the pump-up
//! construction, lazy evaluation of pumped maps and the toy protocols built
//! on them.

pub mod catalog;
pub mod cli;
pub mod crypto;
pub mod enumerate;
pub mod error;
pub mod lazy_tree;
pub mod permutation;
pub mod pump;
pub mod solution;

pub use error::{Error, Result};
pub use permutation::{CycleType, PermStyle, Permutation};
pub use solution::{AnalysisReport, ClassResult, RetractLevel, Solution};
