pub mod amplifier;
pub mod array;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod radiator;
pub mod matching;
pub mod mom;
pub mod network;
pub mod tline;

pub use error::{Error, Result};
