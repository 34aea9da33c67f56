pub mod cli;
pub mod connection;
pub mod error;
pub mod exterior;
pub mod g2;
pub mod instanton;
pub mod liealg;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use exterior::{KForm, Metric, SkewEndo};
pub use linalg::Mat;
pub use scalar::{Field, Rational, Scalar, ScalarKind};
