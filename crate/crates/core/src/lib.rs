pub mod corpus;
pub mod diagram;
pub mod dissect;
pub mod error;
pub mod resolve;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
