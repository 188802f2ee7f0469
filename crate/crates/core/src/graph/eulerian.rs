//! Eulerian edge subsets, Eulerian orientations with compatible local
//! pairings, and the circuit/trail decomposition a pairing induces.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fragment::Fragment;
use super::multigraph::{EdgeSet, HalfEdge, MultiGraph, Side, VertexId};
use crate::error::{Error, Result};

/// All edge subsets in which every unlabelled vertex has even degree.
///
/// The subsets form the kernel of the GF(2) incidence matrix restricted to
/// unlabelled vertices; a kernel basis is found by elimination and the
/// kernel is listed by Gray code. Output is sorted by bitmask.
pub fn enumerate_eulerian_subsets(fragment: &Fragment) -> Result<Vec<EdgeSet>> {
    let g = fragment.graph();
    g.check_edge_limit()?;
    let m = g.n_edges();
    let labels = fragment.label_map();

    // rows: parity constraint per unlabelled vertex, as bitmasks over edges
    let mut rows: Vec<u64> = vec![0; g.n_vertices()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if a != b {
            rows[a] ^= 1 << e;
            rows[b] ^= 1 << e;
        }
    }
    let mut rows: Vec<u64> = rows
        .into_iter()
        .enumerate()
        .filter(|&(v, r)| labels[v].is_none() && r != 0)
        .map(|(_, r)| r)
        .collect();

    // reduced row echelon form
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);

    let is_pivot = {
        let mut v = vec![false; m];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let basis: Vec<u64> = (0..m)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut vec = 1u64 << free;
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r] >> free & 1 == 1 {
                    vec |= 1 << p;
                }
            }
            vec
        })
        .collect();

    let mut out = Vec::with_capacity(1 << basis.len());
    let mut cur = 0u64;
    out.push(EdgeSet::from_bits(cur));
    for i in 1u64..(1u64 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        out.push(EdgeSet::from_bits(cur));
    }
    out.sort();
    Ok(out)
}

/// Eulerian subsets of a plain graph (circles excluded).
pub fn graph_eulerian_subsets(g: &MultiGraph) -> Result<Vec<EdgeSet>> {
    enumerate_eulerian_subsets(&Fragment::from_graph(g.clone()))
}

pub fn is_eulerian_subset(fragment: &Fragment, subset: EdgeSet) -> Result<()> {
    let labels = fragment.label_map();
    let deg = fragment.graph().degrees_in(subset);
    match (0..deg.len()).find(|&v| labels[v].is_none() && deg[v] % 2 == 1) {
        Some(vertex) => Err(Error::NotEulerian { vertex }),
        None => Ok(()),
    }
}

/// An Eulerian subset with an Eulerian orientation and a compatible local
/// pairing at every unlabelled vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianState {
    subset: EdgeSet,
    /// `Some(true)` when the edge runs from its `A` end to its `B` end.
    orientation: Vec<Option<bool>>,
    /// Per vertex, `(incoming, outgoing)` pairs.
    pairing: Vec<Vec<(HalfEdge, HalfEdge)>>,
}

/// Circuits and labelled trails traced out by a local pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub circuits: usize,
    /// Directed trails as `(start label, end label)`, sorted.
    pub trails: Vec<(usize, usize)>,
}

impl EulerianState {
    pub fn from_parts(
        subset: EdgeSet,
        orientation: Vec<Option<bool>>,
        pairing: Vec<Vec<(HalfEdge, HalfEdge)>>,
    ) -> Self {
        Self {
            subset,
            orientation,
            pairing,
        }
    }

    pub fn subset(&self) -> EdgeSet {
        self.subset
    }

    pub fn orientation(&self) -> &[Option<bool>] {
        &self.orientation
    }

    pub fn pairing(&self) -> &[Vec<(HalfEdge, HalfEdge)>] {
        &self.pairing
    }

    pub fn pairing_at(&self, v: VertexId) -> &[(HalfEdge, HalfEdge)] {
        &self.pairing[v]
    }

    /// Whether the arc leaves the vertex at half-edge `h`. Panics for edges
    /// outside the subset.
    pub fn is_outgoing(&self, h: HalfEdge) -> bool {
        let forward = self.orientation[h.edge].expect("edge in subset");
        (h.side == Side::A) == forward
    }

    pub fn validate(&self, fragment: &Fragment) -> Result<()> {
        let g = fragment.graph();
        let bad = |msg: String| Err(Error::InvalidState(msg));
        if self.orientation.len() != g.n_edges() || self.pairing.len() != g.n_vertices() {
            return bad("state shape does not match the graph".into());
        }
        is_eulerian_subset(fragment, self.subset)?;
        for e in 0..g.n_edges() {
            if self.orientation[e].is_some() != self.subset.contains(e) {
                return bad(format!("edge {e} orientation inconsistent with subset"));
            }
        }
        let labels = fragment.label_map();
        let mut used = vec![false; 2 * g.n_edges()];
        for (v, pairs) in self.pairing.iter().enumerate() {
            if labels[v].is_some() && !pairs.is_empty() {
                return bad(format!("labelled vertex {v} carries a pairing"));
            }
            for &(hin, hout) in pairs {
                for h in [hin, hout] {
                    if h.edge >= g.n_edges() || !self.subset.contains(h.edge) || g.vertex_of(h) != v
                    {
                        return bad(format!("pair at {v} uses a foreign half-edge {h:?}"));
                    }
                    if std::mem::replace(&mut used[h.index()], true) {
                        return bad(format!("half-edge {h:?} paired twice"));
                    }
                }
                if self.is_outgoing(hin) || !self.is_outgoing(hout) {
                    return bad(format!("pair ({hin:?}, {hout:?}) at {v} is not (in, out)"));
                }
            }
        }
        for e in self.subset.iter() {
            for side in [Side::A, Side::B] {
                let h = HalfEdge::new(e, side);
                if labels[g.vertex_of(h)].is_none() && !used[h.index()] {
                    return bad(format!("half-edge {h:?} is unpaired"));
                }
            }
        }
        Ok(())
    }

    /// Follow the pairing. Assumes a valid state.
    pub fn decompose(&self, fragment: &Fragment) -> Decomposition {
        let g = fragment.graph();
        let labels = fragment.label_map();
        let mut next = vec![None; 2 * g.n_edges()];
        for pairs in &self.pairing {
            for &(hin, hout) in pairs {
                next[hin.index()] = Some(hout);
            }
        }
        let mut visited = EdgeSet::empty();
        let mut trails = Vec::new();
        for (i, _) in fragment.labeled().iter().enumerate() {
            let start = fragment.open_end(i);
            if !self.subset.contains(start.edge) || !self.is_outgoing(start) {
                continue;
            }
            let mut out = start;
            loop {
                visited.insert(out.edge);
                let hin = out.opposite();
                if let Some(j) = labels[g.vertex_of(hin)] {
                    trails.push((i, j));
                    break;
                }
                out = next[hin.index()].expect("valid pairing");
            }
        }
        let mut circuits = 0;
        for e in self.subset.iter() {
            if visited.contains(e) {
                continue;
            }
            circuits += 1;
            let side = if self.orientation[e] == Some(true) {
                Side::A
            } else {
                Side::B
            };
            let start = HalfEdge::new(e, side);
            let mut out = start;
            loop {
                visited.insert(out.edge);
                out = next[out.opposite().index()].expect("valid pairing");
                if out == start {
                    break;
                }
            }
        }
        trails.sort();
        Decomposition { circuits, trails }
    }

    /// Reverse every arc and pairing on the component (trail or circuit)
    /// through `edge`.
    pub fn reverse_component(&self, fragment: &Fragment, edge: usize) -> Self {
        let g = fragment.graph();
        let mut next = vec![None; 2 * g.n_edges()];
        let mut prev = vec![None; 2 * g.n_edges()];
        for pairs in &self.pairing {
            for &(hin, hout) in pairs {
                next[hin.index()] = Some(hout);
                prev[hout.index()] = Some(hin);
            }
        }
        let side = if self.orientation[edge] == Some(true) {
            Side::A
        } else {
            Side::B
        };
        let mut component = EdgeSet::empty();
        // forwards from the tail of `edge`
        let start = HalfEdge::new(edge, side);
        let mut out = start;
        loop {
            component.insert(out.edge);
            match next[out.opposite().index()] {
                Some(h) if h != start => out = h,
                _ => break,
            }
        }
        // backwards, for trails
        let mut out = start;
        while let Some(hin) = prev[out.index()] {
            let h = hin.opposite();
            if h == start {
                break;
            }
            component.insert(h.edge);
            out = h;
        }
        let mut state = self.clone();
        for e in component.iter() {
            state.orientation[e] = state.orientation[e].map(|f| !f);
        }
        for pairs in &mut state.pairing {
            for pair in pairs.iter_mut() {
                if component.contains(pair.0.edge) {
                    *pair = (pair.1, pair.0);
                }
            }
        }
        state
    }
}

/// Build an Eulerian orientation and a compatible pairing for `subset` by
/// peeling walks: trails between labelled vertices first, then circuits.
/// The seed drives every choice of start and continuation.
pub fn eulerian_state(fragment: &Fragment, subset: EdgeSet, seed: u64) -> Result<EulerianState> {
    let g = fragment.graph();
    if subset.iter().any(|e| e >= g.n_edges()) {
        return Err(Error::InvalidState("subset names a missing edge".into()));
    }
    is_eulerian_subset(fragment, subset)?;
    let labels = fragment.label_map();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut unused: Vec<Vec<HalfEdge>> = vec![Vec::new(); g.n_vertices()];
    for e in subset.iter() {
        for side in [Side::A, Side::B] {
            let h = HalfEdge::new(e, side);
            unused[g.vertex_of(h)].push(h);
        }
    }
    let mut orientation = vec![None; g.n_edges()];
    let mut pairing: Vec<Vec<(HalfEdge, HalfEdge)>> = vec![Vec::new(); g.n_vertices()];

    fn take(list: &mut Vec<HalfEdge>, h: HalfEdge) {
        let pos = list.iter().position(|&x| x == h).expect("half-edge unused");
        list.swap_remove(pos);
    }
    fn traverse(orientation: &mut [Option<bool>], out: HalfEdge) -> HalfEdge {
        orientation[out.edge] = Some(out.side == Side::A);
        out.opposite()
    }

    let mut starts: Vec<VertexId> = fragment.labeled().to_vec();
    starts.shuffle(&mut rng);
    for l in starts {
        let Some(&h0) = unused[l].first() else {
            continue;
        };
        take(&mut unused[l], h0);
        let mut out = h0;
        loop {
            let hin = traverse(&mut orientation, out);
            let v = g.vertex_of(hin);
            take(&mut unused[v], hin);
            if labels[v].is_some() {
                break;
            }
            let hout = *unused[v].choose(&mut rng).expect("parity leaves an exit");
            take(&mut unused[v], hout);
            pairing[v].push((hin, hout));
            out = hout;
        }
    }

    loop {
        let candidates: Vec<VertexId> = (0..g.n_vertices())
            .filter(|&v| !unused[v].is_empty())
            .collect();
        let Some(&v0) = candidates.choose(&mut rng) else {
            break;
        };
        let h0 = *unused[v0].choose(&mut rng).unwrap();
        take(&mut unused[v0], h0);
        let mut out = h0;
        loop {
            let hin = traverse(&mut orientation, out);
            let v = g.vertex_of(hin);
            take(&mut unused[v], hin);
            let options = unused[v].len();
            if v == v0 && (options == 0 || rng.gen_range(0..=options) == 0) {
                pairing[v].push((hin, h0));
                break;
            }
            let hout = *unused[v].choose(&mut rng).expect("parity leaves an exit");
            take(&mut unused[v], hout);
            pairing[v].push((hin, hout));
            out = hout;
        }
    }

    Ok(EulerianState {
        subset,
        orientation,
        pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(fragment: &Fragment) -> Vec<EdgeSet> {
        let m = fragment.graph().n_edges();
        (0u64..1 << m)
            .map(EdgeSet::from_bits)
            .filter(|&s| is_eulerian_subset(fragment, s).is_ok())
            .collect()
    }

    fn path2() -> Fragment {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        Fragment::new(g, vec![0, 2]).unwrap()
    }

    #[test]
    fn triangle_subsets() {
        let k3 = Fragment::from_graph(MultiGraph::complete(3));
        let s = enumerate_eulerian_subsets(&k3).unwrap();
        assert_eq!(s, vec![EdgeSet::empty(), EdgeSet::full(3)]);
        assert_eq!(s, brute_force(&k3));
    }

    #[test]
    fn loop_subsets() {
        let g = Fragment::from_graph(MultiGraph::bouquet(1));
        assert_eq!(
            enumerate_eulerian_subsets(&g).unwrap(),
            vec![EdgeSet::empty(), EdgeSet::full(1)]
        );
    }

    #[test]
    fn path_fragment_subsets() {
        let f = path2();
        assert_eq!(
            enumerate_eulerian_subsets(&f).unwrap(),
            vec![EdgeSet::empty(), EdgeSet::full(2)]
        );
    }

    #[test]
    fn subsets_match_brute_force_on_assorted_graphs() {
        let graphs = [
            MultiGraph::complete(4),
            MultiGraph::complete(5),
            MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 2), (0, 2), (1, 1)]).unwrap(),
            MultiGraph::cycle(5).disjoint_union(&MultiGraph::figure_eight()),
        ];
        for g in graphs {
            let f = Fragment::from_graph(g);
            assert_eq!(enumerate_eulerian_subsets(&f).unwrap(), brute_force(&f));
        }
        let star = Fragment::star(4);
        assert_eq!(
            enumerate_eulerian_subsets(&star).unwrap(),
            brute_force(&star)
        );
    }

    #[test]
    fn triangle_state_is_one_circuit() {
        let k3 = Fragment::from_graph(MultiGraph::complete(3));
        for seed in 0..8 {
            let st = eulerian_state(&k3, EdgeSet::full(3), seed).unwrap();
            st.validate(&k3).unwrap();
            assert_eq!(
                st.decompose(&k3),
                Decomposition {
                    circuits: 1,
                    trails: vec![]
                }
            );
        }
    }

    #[test]
    fn figure_eight_states_reach_both_circuit_counts() {
        let f8 = Fragment::from_graph(MultiGraph::figure_eight());
        let mut counts = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let st = eulerian_state(&f8, EdgeSet::full(2), seed).unwrap();
            st.validate(&f8).unwrap();
            counts.insert(st.decompose(&f8).circuits);
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn self_paired_figure_eight() {
        let f8 = Fragment::from_graph(MultiGraph::figure_eight());
        let a = |e| HalfEdge::new(e, Side::A);
        let b = |e| HalfEdge::new(e, Side::B);
        let st = EulerianState::from_parts(
            EdgeSet::full(2),
            vec![Some(true), Some(true)],
            vec![vec![(b(0), a(0)), (b(1), a(1))]],
        );
        st.validate(&f8).unwrap();
        assert_eq!(
            st.decompose(&f8),
            Decomposition {
                circuits: 2,
                trails: vec![]
            }
        );
    }

    #[test]
    fn empty_subset_state() {
        let k3 = Fragment::from_graph(MultiGraph::complete(3));
        let st = eulerian_state(&k3, EdgeSet::empty(), 0).unwrap();
        st.validate(&k3).unwrap();
        assert_eq!(st.decompose(&k3).circuits, 0);
    }

    #[test]
    fn open_edge_trail() {
        let f = Fragment::open_edge();
        let st =
            EulerianState::from_parts(EdgeSet::full(1), vec![Some(true)], vec![vec![], vec![]]);
        st.validate(&f).unwrap();
        assert_eq!(
            st.decompose(&f),
            Decomposition {
                circuits: 0,
                trails: vec![(0, 1)]
            }
        );
    }

    #[test]
    fn non_eulerian_subset_rejected() {
        let k3 = Fragment::from_graph(MultiGraph::complete(3));
        let one: EdgeSet = [0].into_iter().collect();
        assert!(matches!(
            eulerian_state(&k3, one, 0),
            Err(Error::NotEulerian { .. })
        ));
    }

    #[test]
    fn invalid_pairings_rejected() {
        let f8 = Fragment::from_graph(MultiGraph::figure_eight());
        let a = |e| HalfEdge::new(e, Side::A);
        let b = |e| HalfEdge::new(e, Side::B);
        // (out, in) instead of (in, out)
        let st = EulerianState::from_parts(
            EdgeSet::full(2),
            vec![Some(true), Some(true)],
            vec![vec![(a(0), b(0)), (b(1), a(1))]],
        );
        assert!(st.validate(&f8).is_err());
        // missing a pair
        let st = EulerianState::from_parts(
            EdgeSet::full(2),
            vec![Some(true), Some(true)],
            vec![vec![(b(0), a(0))]],
        );
        assert!(st.validate(&f8).is_err());
    }

    #[test]
    fn conservation_and_trail_matching_on_fragments() {
        let g = MultiGraph::from_edges(
            7,
            &[
                (0, 4),
                (1, 4),
                (4, 5),
                (4, 5),
                (5, 2),
                (5, 3),
                (5, 6),
                (6, 6),
                (4, 6),
            ],
        )
        .unwrap();
        let f = Fragment::new(g, vec![0, 1, 2, 3]).unwrap();
        for subset in enumerate_eulerian_subsets(&f).unwrap() {
            for seed in 0..5 {
                let st = eulerian_state(&f, subset, seed).unwrap();
                st.validate(&f).unwrap();
                let pairs: usize = st.pairing().iter().map(Vec::len).sum();
                let at_labels = f
                    .labeled()
                    .iter()
                    .filter(|&&v| {
                        f.graph()
                            .edges()
                            .iter()
                            .enumerate()
                            .any(|(e, &(a, b))| subset.contains(e) && (a == v || b == v))
                    })
                    .count();
                assert_eq!(2 * pairs + at_labels, 2 * subset.len());
                let d = st.decompose(&f);
                let mut ends: Vec<usize> = d.trails.iter().flat_map(|&(i, j)| [i, j]).collect();
                ends.sort();
                ends.dedup();
                assert_eq!(ends.len(), 2 * d.trails.len());
                assert_eq!(ends.len(), at_labels);
            }
        }
    }

    #[test]
    fn reversing_a_trail_flips_its_arc() {
        let f = path2();
        let st = eulerian_state(&f, EdgeSet::full(2), 3).unwrap();
        let d = st.decompose(&f);
        let rev = st.reverse_component(&f, 0);
        rev.validate(&f).unwrap();
        let (i, j) = d.trails[0];
        assert_eq!(rev.decompose(&f).trails, vec![(j, i)]);
    }
}
