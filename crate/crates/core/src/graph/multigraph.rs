use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// One end of an edge. A loop at `v` has two distinct half-edges at `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub side: Side,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, side: Side) -> Self {
        Self { edge, side }
    }

    pub fn opposite(self) -> Self {
        Self {
            edge: self.edge,
            side: self.side.flip(),
        }
    }

    /// Dense index `2·edge + side`.
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(self.side == Side::B)
    }
}

/// A set of edge ids below 64.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const MAX_EDGES: usize = 64;

    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(m: usize) -> Self {
        assert!(m <= Self::MAX_EDGES);
        if m == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << m) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: EdgeId) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(e < 64);
        self.0 |= 1 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, m: usize) -> Self {
        Self(!self.0 & Self::full(m).0)
    }

    pub fn iter(self) -> impl Iterator<Item = EdgeId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = Self::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// A finite multigraph with loops, parallel edges and vertexless circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MultiGraph {
    n_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
    n_circles: usize,
}

impl MultiGraph {
    pub fn new(n_vertices: usize) -> Self {
        Self {
            n_vertices,
            edges: Vec::new(),
            n_circles: 0,
        }
    }

    pub fn from_edges(n_vertices: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new(n_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The vertexless circle ◯, repeated `n` times.
    pub fn circles(n: usize) -> Self {
        Self {
            n_vertices: 0,
            edges: Vec::new(),
            n_circles: n,
        }
    }

    /// The cycle `C_n` (a loop for `n = 1`, a double edge for `n = 2`).
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.edges.push((u, v));
            }
        }
        g
    }

    /// One vertex carrying `loops` loops; `figure_eight()` is `bouquet(2)`.
    pub fn bouquet(loops: usize) -> Self {
        Self {
            n_vertices: 1,
            edges: vec![(0, 0); loops],
            n_circles: 0,
        }
    }

    pub fn figure_eight() -> Self {
        Self::bouquet(2)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n_vertices += 1;
        self.n_vertices - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        for x in [u, v] {
            if x >= self.n_vertices {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    bound: self.n_vertices,
                });
            }
        }
        self.edges.push((u, v));
        Ok(self.edges.len() - 1)
    }

    pub fn add_circle(&mut self) {
        self.n_circles += 1;
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_circles(&self) -> usize {
        self.n_circles
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    pub fn vertex_of(&self, h: HalfEdge) -> VertexId {
        let (a, b) = self.edges[h.edge];
        match h.side {
            Side::A => a,
            Side::B => b,
        }
    }

    /// Half-edges at each vertex; a loop contributes both of its sides.
    pub fn incidence(&self) -> Vec<Vec<HalfEdge>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(HalfEdge::new(e, Side::A));
            inc[b].push(HalfEdge::new(e, Side::B));
        }
        inc
    }

    /// Degrees, counting loops twice.
    pub fn degrees(&self) -> Vec<usize> {
        self.degrees_in(EdgeSet::full(self.edges.len().min(64)))
    }

    pub fn degrees_in(&self, subset: EdgeSet) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for e in subset.iter() {
            let (a, b) = self.edges[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn is_eulerian(&self) -> bool {
        self.degrees().iter().all(|d| d % 2 == 0)
    }

    pub fn check_edge_limit(&self) -> Result<()> {
        if self.edges.len() > EdgeSet::MAX_EDGES {
            Err(Error::TooManyEdges(self.edges.len()))
        } else {
            Ok(())
        }
    }

    /// `G(A) = (V, A)`; circles are dropped.
    pub fn edge_subgraph(&self, subset: EdgeSet) -> MultiGraph {
        MultiGraph {
            n_vertices: self.n_vertices,
            edges: subset
                .iter()
                .filter(|&e| e < self.edges.len())
                .map(|e| self.edges[e])
                .collect(),
            n_circles: 0,
        }
    }

    /// Vertices of `other` are shifted past those of `self`; circles add.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let off = self.n_vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        MultiGraph {
            n_vertices: self.n_vertices + other.n_vertices,
            edges,
            n_circles: self.n_circles + other.n_circles,
        }
    }

    /// Adjacency matrix with `A(v,v)` twice the number of loops at `v`.
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n_vertices]; self.n_vertices];
        for &(u, v) in &self.edges {
            if u == v {
                a[u][u] += 2;
            } else {
                a[u][v] += 1;
                a[v][u] += 1;
            }
        }
        a
    }
}

/// The graph `G_π`: a cycle `C_{6c}` for every cycle of length `c` of the
/// permutation `perm` of `{0, …, k}`.
pub fn build_g_pi(k: usize, perm: &[usize]) -> Result<MultiGraph> {
    if perm.len() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidState(format!(
                "{perm:?} is not a permutation"
            )));
        }
    }
    let mut visited = vec![false; perm.len()];
    let mut g = MultiGraph::new(0);
    for start in 0..perm.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            x = perm[x];
            len += 1;
        }
        g = g.disjoint_union(&MultiGraph::cycle(6 * len));
    }
    Ok(g)
}
