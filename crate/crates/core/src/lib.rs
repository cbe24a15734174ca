#[macro_use]
mod macros;

pub mod divided;
pub mod error;
pub mod frobenius;
pub mod json;
pub mod linalg;
pub mod qcomb;
pub mod simpson;
pub mod ring;
pub mod twisted;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
