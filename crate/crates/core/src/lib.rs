//! Homological algebra of symmetric 2-groups, modelled as two-term complexes of finitely
//! presented abelian groups.

pub mod complexes;
pub mod derived;
pub mod error;
pub mod pic2;
pub mod relkc;
pub mod resolve;
pub mod text;
pub mod zlin;

pub use error::{Error, Result};
