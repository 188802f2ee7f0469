//! Edge-connection matrices, their rank, and the Gram-tensor construction
//! that bounds it.

mod enumerate;
mod matching;
mod matrix;
mod tensor;

pub use enumerate::enumerate_fragments;
pub use matching::{canonical_matching_sign, matching_sign, DirectedMatching};
pub use matrix::{connection_matrix, dglrs_constraint_sum, exact_rank, ConnectionMatrix};
pub use tensor::{fragment_tensor, fragment_tensor_sum, gram_pairing, FragmentTensor};
