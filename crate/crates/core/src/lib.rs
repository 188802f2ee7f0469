pub mod algebra;
pub mod connection;
pub mod error;
pub mod evaluator;
pub mod graph;
pub mod models;
pub mod oracles;
pub mod verify;

pub use algebra::{GaussianRational, Scalar};
pub use error::{Error, Result};

/// Exact models over the Gaussian rationals.
pub type ExactModel = models::EdgeColoringModel<GaussianRational>;
/// Floating-point models, for quick numerical experiments.
pub type FloatModel = models::EdgeColoringModel<num_complex::Complex<f64>>;
pub type ExactPolynomial = oracles::Polynomial<GaussianRational>;
pub type ExactTensor = connection::FragmentTensor<GaussianRational>;
pub type ExactConnectionMatrix = connection::ConnectionMatrix<GaussianRational>;
pub type ExactEvaluation = evaluator::EvaluationResult<GaussianRational>;
