//! Exact scalars and the linear algebra of `V_{k,2ℓ}`.

mod forms;
mod gaussian;
mod scalar;

pub use forms::{
    basis_partner, double_factorial_odd, dual_basis, super_bilinear_form, ExtBasisIndex,
    MixedVector, SignedIndex, SymBasisIndex,
};
pub use gaussian::GaussianRational;
pub use scalar::{ExactField, Field, Scalar};
