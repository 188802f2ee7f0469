//! Half-edge multigraphs, fragments, Eulerian structure and gluing.

mod eulerian;
mod fragment;
mod glue;
mod multigraph;
pub mod text;

pub use eulerian::{
    enumerate_eulerian_subsets, eulerian_state, graph_eulerian_subsets, is_eulerian_subset,
    Decomposition, EulerianState,
};
pub use fragment::Fragment;
pub use glue::{glue, glue_traced, Glued, Origin};
pub use multigraph::{build_g_pi, EdgeId, EdgeSet, HalfEdge, MultiGraph, Side, VertexId};
