pub mod combinatorics;
pub mod error;
pub mod field;
pub mod grassmannian;
pub mod linalg;
pub mod special_position;
pub mod theorem_lab;
pub mod wire;

pub use error::{Error, Result};
