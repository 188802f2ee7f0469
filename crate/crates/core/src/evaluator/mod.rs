//! Partition functions of edge-coloring models.

mod engine;
mod partition;

pub(crate) use engine::ColoringPlan;
pub use partition::{
    distinct_states, invariance_check, partition_function, s_h, s_h_of_subset, s_h_with_circles,
    EvaluationResult, Mode,
};
