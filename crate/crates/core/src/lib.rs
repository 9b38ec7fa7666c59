pub mod code;
pub mod constructions;
pub mod error;
pub mod explore;
pub mod field;
pub mod matrix;
pub mod linearized;
pub mod representations;
pub mod semifield;
pub mod symmetric;
pub mod transforms;

pub use code::{Linearity, RankDistribution, RankMetricCode};
pub use error::{Error, Result};
pub use field::Field;
pub use linearized::SigmaPolynomial;
pub use matrix::{Matrix, SubspaceBasis};
