//! Signatures of spanning trees of the n-cube and their edge-slide graphs.

pub mod cli;
pub mod cube;
pub mod error;
pub mod exec;
pub mod section;
pub mod signature;
pub mod slide;
pub mod tree;

pub use error::{Error, Result};
