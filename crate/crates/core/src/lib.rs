pub mod dsl;
pub mod error;
pub mod eval;
pub mod intervals;
pub mod lattice;
pub mod oracle;
pub mod presentation;
pub mod random;
pub mod rational;
pub mod toys;
pub mod transform;

pub use error::{Error, Result};
