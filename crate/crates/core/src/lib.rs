pub mod error;
pub mod numerics;
pub mod construction;
pub mod univariate;
pub mod ttr;
pub mod catalog;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
