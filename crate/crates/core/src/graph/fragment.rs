use serde::{Deserialize, Serialize};

use super::multigraph::{EdgeId, HalfEdge, MultiGraph, Side, VertexId};
use crate::error::{Error, Result};

/// A graph with `t` degree-one vertices labelled `0..t` in list order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fragment {
    graph: MultiGraph,
    labeled: Vec<VertexId>,
}

impl Fragment {
    pub fn new(graph: MultiGraph, labeled: Vec<VertexId>) -> Result<Self> {
        let n = graph.n_vertices();
        let degrees = graph.degrees();
        let mut seen = vec![false; n];
        for &v in &labeled {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, bound: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidFragment(format!("vertex {v} labelled twice")));
            }
            if degrees[v] != 1 {
                return Err(Error::InvalidFragment(format!(
                    "labelled vertex {v} has degree {}, expected 1",
                    degrees[v]
                )));
            }
        }
        graph.check_edge_limit()?;
        Ok(Self { graph, labeled })
    }

    /// A graph viewed as a 0-fragment.
    pub fn from_graph(graph: MultiGraph) -> Self {
        Self {
            graph,
            labeled: Vec::new(),
        }
    }

    /// A single edge whose two ends are labels 0 and 1.
    pub fn open_edge() -> Self {
        Self::new(MultiGraph::from_edges(2, &[(0, 1)]).unwrap(), vec![0, 1]).unwrap()
    }

    /// One unlabelled vertex with `t` open ends.
    pub fn star(t: usize) -> Self {
        let mut g = MultiGraph::new(1);
        let mut labels = Vec::with_capacity(t);
        for _ in 0..t {
            let v = g.add_vertex();
            g.add_edge(0, v).unwrap();
            labels.push(v);
        }
        Self::new(g, labels).unwrap()
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }

    pub fn labeled(&self) -> &[VertexId] {
        &self.labeled
    }

    pub fn t(&self) -> usize {
        self.labeled.len()
    }

    /// `label_of[v]` is `Some(i)` iff `v` carries label `i`.
    pub fn label_map(&self) -> Vec<Option<usize>> {
        let mut m = vec![None; self.graph.n_vertices()];
        for (i, &v) in self.labeled.iter().enumerate() {
            m[v] = Some(i);
        }
        m
    }

    pub fn is_labeled(&self, v: VertexId) -> bool {
        self.labeled.contains(&v)
    }

    /// The open end at label `i`, as the half-edge sitting at the labelled vertex.
    pub fn open_end(&self, i: usize) -> HalfEdge {
        let v = self.labeled[i];
        let (e, side) = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .find_map(|(e, &(a, b))| {
                if a == v {
                    Some((e, Side::A))
                } else if b == v {
                    Some((e, Side::B))
                } else {
                    None
                }
            })
            .expect("labelled vertex has degree 1");
        HalfEdge::new(e, side)
    }

    pub fn open_end_edge(&self, i: usize) -> EdgeId {
        self.open_end(i).edge
    }

    /// Maximum degree over unlabelled vertices.
    pub fn max_internal_degree(&self) -> usize {
        let labels = self.label_map();
        self.graph
            .degrees()
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| labels[v].is_none())
            .map(|(_, d)| d)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_labels() {
        let path = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Fragment::new(path.clone(), vec![0, 2]).is_ok());
        assert!(Fragment::new(path.clone(), vec![1]).is_err());
        assert!(Fragment::new(path.clone(), vec![0, 0]).is_err());
        assert!(Fragment::new(path, vec![5]).is_err());
        // a loop endpoint has degree 2
        let lp = MultiGraph::bouquet(1);
        assert!(Fragment::new(lp, vec![0]).is_err());
    }

    #[test]
    fn open_ends() {
        let f = Fragment::star(3);
        assert_eq!(f.t(), 3);
        for i in 0..3 {
            let h = f.open_end(i);
            assert_eq!(f.graph().vertex_of(h), f.labeled()[i]);
        }
        assert_eq!(f.max_internal_degree(), 3);
        let oe = Fragment::open_edge();
        assert_eq!(oe.open_end_edge(0), oe.open_end_edge(1));
        assert_eq!(oe.max_internal_degree(), 0);
    }
}
