//! Generalized hypergeometric functions through Meijer G weight representations.

pub mod bounds;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod gweight;
pub mod invfactorial;
pub mod extended;
pub mod norlund;
pub mod quadrature;
pub mod regularization;
pub mod representations;
pub mod rpdf;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
