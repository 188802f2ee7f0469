//! Edge-coloring models `h ∈ (S V_k ⊗ ⋀V_{2ℓ})*` and the built-in families.

mod builtin;
mod json;
mod model;

pub use builtin::{
    charpoly_model, circuit_neg_model, circuit_odd_model, circuit_pos_model, matchings_model,
    random_sparse_model, tensor_model,
};
pub use json::{builtin_model, model_from_json, model_to_json};
pub use model::{canonicalize_wedge, EdgeColoringModel, ExtFactor, LocalEvaluationRequest};
