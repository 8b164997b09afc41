//! Exact lattice toolkit: integer and rational linear algebra, cyclotomic
//! fields, discriminant groups, and gluing of lattices with isometries.

pub mod arith;
pub mod certify;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gluing;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod roots;
pub mod salem;

pub use error::{Error, Result};
