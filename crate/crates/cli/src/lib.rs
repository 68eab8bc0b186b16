//! Batch verifier for even derangement Cayley graphs and their tensor
//! powers: claim registry, execution, reporting, and raw exports.

pub mod claims;
pub mod config;
pub mod context;
pub mod export;
pub mod registry;
pub mod report;
pub mod runner;
