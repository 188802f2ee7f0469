//! Graph and fragment generators for the verification suites.
//!
//! Random objects come from a `ChaCha8Rng` seeded by the caller. A random
//! multigraph draws `n` uniformly from `1..=max_vertices`, `m` from
//! `0..=max_edges`, then `m` ordered vertex pairs uniformly (loops allowed).

use std::collections::HashSet;

use rand::Rng;

use crate::graph::{Fragment, MultiGraph};
use crate::oracles::signed_permutations;

/// A labelling-independent key: the lexicographically least sorted edge
/// list over all vertex relabellings.
pub fn canonical_key(g: &MultiGraph) -> (usize, usize, Vec<(usize, usize)>) {
    let n = g.n_vertices();
    let best = signed_permutations(n)
        .into_iter()
        .map(|(p, _)| {
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a], p[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            edges.sort_unstable();
            edges
        })
        .min()
        .unwrap_or_default();
    (n, g.n_circles(), best)
}

/// One representative per isomorphism class of multigraphs with at most
/// `max_vertices` vertices and `max_edges` edges.
pub fn multigraphs(
    max_vertices: usize,
    max_edges: usize,
    loops: bool,
    parallel: bool,
) -> Vec<MultiGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u..n).map(move |v| (u, v)))
            .filter(|&(u, v)| loops || u != v)
            .collect();
        type Edge = (usize, usize);
        fn rec(
            start: usize,
            left: usize,
            parallel: bool,
            pairs: &[Edge],
            cur: &mut Vec<Edge>,
            out: &mut dyn FnMut(&[Edge]),
        ) {
            out(cur);
            if left == 0 {
                return;
            }
            for p in start..pairs.len() {
                cur.push(pairs[p]);
                rec(
                    if parallel { p } else { p + 1 },
                    left - 1,
                    parallel,
                    pairs,
                    cur,
                    out,
                );
                cur.pop();
            }
        }
        rec(
            0,
            max_edges,
            parallel,
            &pairs,
            &mut Vec::new(),
            &mut |edges| {
                let g = MultiGraph::from_edges(n, edges).expect("in range");
                if seen.insert(canonical_key(&g)) {
                    out.push(g);
                }
            },
        );
    }
    out
}

pub fn random_multigraph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> MultiGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    MultiGraph::from_edges(n, &edges).expect("in range")
}

/// A random `t`-fragment with at most `max_edges` edges, open ends
/// included. Each open end attaches to a random internal vertex, or with
/// probability 1/4 joins a later open end directly.
pub fn random_fragment<R: Rng>(
    rng: &mut R,
    t: usize,
    max_internal: usize,
    max_edges: usize,
) -> Fragment {
    let n = rng.gen_range(1..=max_internal.max(1));
    let mut g = MultiGraph::new(n + t);
    let mut done = vec![false; t];
    for i in 0..t {
        if done[i] {
            continue;
        }
        done[i] = true;
        let free: Vec<usize> = (i + 1..t).filter(|&j| !done[j]).collect();
        if !free.is_empty() && rng.gen_bool(0.25) {
            let j = free[rng.gen_range(0..free.len())];
            done[j] = true;
            g.add_edge(n + i, n + j).unwrap();
        } else {
            g.add_edge(rng.gen_range(0..n), n + i).unwrap();
        }
    }
    let extra = rng.gen_range(0..=max_edges.saturating_sub(g.n_edges()));
    for _ in 0..extra {
        g.add_edge(rng.gen_range(0..n), rng.gen_range(0..n))
            .unwrap();
    }
    Fragment::new(g, (n..n + t).collect()).expect("labels have degree one")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_graph_classes() {
        // graphs on 0..=4 vertices up to isomorphism: 1 + 1 + 2 + 4 + 11
        assert_eq!(multigraphs(4, 6, false, false).len(), 19);
    }

    #[test]
    fn isomorphic_graphs_share_a_key() {
        let a = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 2)]).unwrap();
        let b = MultiGraph::from_edges(3, &[(2, 1), (0, 0), (1, 0)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (1, 1)]).unwrap();
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }

    #[test]
    fn random_fragments_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let t = rng.gen_range(0..=3);
            let f = random_fragment(&mut rng, t, 3, 4);
            assert_eq!(f.t(), t);
            assert!(f.graph().n_edges() <= 4);
        }
    }
}
