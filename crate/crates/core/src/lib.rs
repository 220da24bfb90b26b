//! Counting product decompositions of complex Abelian surfaces from lattice
//! data.

pub mod arith;
pub mod discform;
pub mod counting;
pub mod error;
pub mod genus;
pub mod picard3;
pub mod qform;

pub use error::{Error, Result};
