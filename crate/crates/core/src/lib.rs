//! Exact computations with difference L operators, q-characters and the
//! identities relating them.

pub mod bd;
pub mod casorati;
pub mod classical;
pub mod cli;
pub mod diffop;
pub mod error;
pub mod linalg;
pub mod qchar;
pub mod report;
pub mod ring;
pub mod screening;
pub mod tableaux;

pub use error::{Error, Result};
