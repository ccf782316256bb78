pub mod classifier;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod function_field;
pub mod lattice;
pub mod oracle;
pub mod ordered_groups;
pub mod valuations;

pub use error::{Error, Result};
