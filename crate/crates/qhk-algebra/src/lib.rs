//! Exact scalar arithmetic and the sparse labeled-tensor algebra used by the
//! pointwise quaternionic-Hermitian model: Gaussian-rational scalars,
//! multivectors with alternating/symmetric slot groups, symplectic traces
//! and exact sparse linear algebra.

#![forbid(unsafe_code)]

pub mod error;
pub mod linalg;
pub mod onefield;
pub mod ops;
pub mod params;
pub mod scalar;
pub mod symplectic;
pub mod tensor;

pub use error::{AlgebraError, Result};
pub use onefield::OneFormField;
pub use params::{ModelParams, TangentIndex};
pub use scalar::Scalar;
pub use tensor::{LabeledTensor, SlotGroup, SlotLabel, Symmetry};
