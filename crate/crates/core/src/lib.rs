pub mod axes;
pub mod cli;
pub mod constraints;
pub mod dynamics;
pub mod error;
pub mod models;
pub mod numkernel;

pub use error::{Error, Result};
