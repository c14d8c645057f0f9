//! Finite groupoids, permutation groups and modular representations over
//! prime fields, with machinery to compute Green correspondents.

pub mod error;
pub mod catalog;
pub mod fp;
pub mod green;
pub mod groupoid;
pub mod modrep;
pub mod partial;
pub mod perm;

pub use error::{Error, Result};
