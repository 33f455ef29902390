//! Exact numerical substrate: rational scalars, permutations, dense tensors
//! and matrices.

pub mod matrix;
pub mod permutation;
pub mod scalar;
pub mod tensor;

pub use matrix::RationalMatrix;
pub use permutation::Permutation;
pub use scalar::Scalar;
pub use tensor::DenseTensor;

/// Sign of a permutation as a scalar.
pub fn permutation_sign(p: &Permutation) -> Scalar {
    scalar::sign(p.sign())
}
