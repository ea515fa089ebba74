//! Exact finite models for simplicial sets, quasicategories and their
//! relatives: nerves, homotopy-coherent nerves, Dold–Kan, chain-complex
//! factorizations, fibrations of finite categories and Rezk nerves.

pub mod chain_model;
pub mod delta;
pub mod doldkan;
pub mod hcnerve;
pub mod error;
pub mod fibrations;
pub mod linalg;
pub mod nerve_cat;
pub mod quasicat;
pub mod segal;
pub mod sset;

pub use error::{Error, Result};
