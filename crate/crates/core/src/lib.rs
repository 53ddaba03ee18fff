//! Loop-graph algebras, their KMS states and quantum symmetries.
//!
//! Numeric code is generic over [`scalar::Scalar`] (exact [`BigRational`], `f64`, `f32`);
//! the aliases below fix the common choices.

pub mod cqg;
pub mod error;
pub mod graph;
pub mod kms;
pub mod loops;
pub mod partitions;
pub mod scalar;

pub use error::{Error, Result};

use num_complex::{Complex, Complex64};
pub use num_rational::BigRational;

pub type ExactWeights = kms::KmsWeightVector<BigRational>;
pub type FloatWeights = kms::KmsWeightVector<f64>;
pub type ExactStateClass = partitions::StateClass<BigRational>;
pub type FloatStateClass = partitions::StateClass<f64>;
pub type ExactLoopElement = loops::LoopElement<Complex<BigRational>>;
pub type FloatLoopElement = loops::LoopElement<Complex64>;
pub type Matrix = cqg::CMatrix<f64>;
pub type Magic = cqg::MagicUnitary<f64>;
pub type Block = cqg::QBlock<f64>;
pub type Rep = cqg::QRep<f64>;
