//! Anti-spam filtering with mutual-information attribute selection, a
//! cost-threshold Naive Bayes classifier and a memory-based classifier,
//! evaluated with cost-sensitive measures under 10-fold cross-validation.

pub mod bayes;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod evaluate;
pub mod features;
pub mod memory_based;
pub mod report;

pub use error::{Error, Result};
