pub mod error;
pub mod existence;
pub mod field;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod nt;
pub mod numeric;

pub use error::{Error, Result};
