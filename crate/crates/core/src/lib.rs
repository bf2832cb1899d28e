pub mod abgroup;
pub mod config;
pub mod bosonize;
pub mod braided;
pub mod cli;
pub mod deform;
pub mod double;
pub mod expr;
pub mod freealg;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod yd;

pub use scalar::{Field, Scalar, ScalarError};
