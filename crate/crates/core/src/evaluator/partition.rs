use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::ColoringPlan;
use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::graph::{
    eulerian_state, graph_eulerian_subsets, EdgeSet, EulerianState, Fragment, MultiGraph,
};
use crate::models::EdgeColoringModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Ordinary,
    Skew,
    Mixed,
}

impl Mode {
    pub fn check<S: Scalar>(self, h: &EdgeColoringModel<S>) -> Result<()> {
        match self {
            Mode::Ordinary if h.two_ell() != 0 => Err(Error::ModeMismatch(format!(
                "ordinary mode needs a purely symmetric model, this one has 2ℓ = {}",
                h.two_ell()
            ))),
            Mode::Skew if h.k() != 0 => Err(Error::ModeMismatch(format!(
                "skew mode needs a purely exterior model, this one has k = {}",
                h.k()
            ))),
            _ => Ok(()),
        }
    }

    /// The value of a single circle.
    pub fn circle_value<S: Scalar>(self, h: &EdgeColoringModel<S>) -> S {
        let (k, two_ell) = (h.k() as i64, h.two_ell() as i64);
        S::from_i64(match self {
            Mode::Ordinary => k,
            Mode::Skew => -two_ell,
            Mode::Mixed => k - two_ell,
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ordinary => "ordinary",
            Mode::Skew => "skew",
            Mode::Mixed => "mixed",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Mode::Ordinary),
            "skew" => Ok(Mode::Skew),
            "mixed" => Ok(Mode::Mixed),
            other => Err(Error::ModeMismatch(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationResult<S> {
    pub value: S,
    pub subsets_visited: u64,
    /// Complete colourings reached after pruning.
    pub colorings_visited: u64,
}

fn sign<S: Scalar>(odd: bool, x: S) -> S {
    if odd {
        -x
    } else {
        x
    }
}

fn s_h_counted<S: Scalar>(
    fragment: &Fragment,
    h: &EdgeColoringModel<S>,
    state: &EulerianState,
) -> Result<(S, u64)> {
    let plan = ColoringPlan::new(fragment, state, h)?;
    let (sum, leaves) = plan.sum();
    let circuits = state.decompose(fragment).circuits;
    Ok((sign(circuits % 2 == 1, sum), leaves))
}

/// `s_h(G, F, ω, κ)` for the subset and state in `state`. Circles of `g`
/// are ignored.
pub fn s_h<S: Scalar>(
    g: &MultiGraph,
    subset: EdgeSet,
    h: &EdgeColoringModel<S>,
    state: &EulerianState,
) -> Result<S> {
    if state.subset() != subset {
        return Err(Error::InvalidState(
            "state belongs to a different subset".into(),
        ));
    }
    let fragment = Fragment::from_graph(g.clone());
    state.validate(&fragment)?;
    Ok(s_h_counted(&fragment, h, state)?.0)
}

/// `s_h(G, F)` through the seed-0 state.
pub fn s_h_of_subset<S: Scalar>(
    g: &MultiGraph,
    subset: EdgeSet,
    h: &EdgeColoringModel<S>,
) -> Result<S> {
    let fragment = Fragment::from_graph(g.clone());
    let state = eulerian_state(&fragment, subset, 0)?;
    Ok(s_h_counted(&fragment, h, &state)?.0)
}

/// `s_h` of a graph with circles, `circles_in_subset` of which belong to the
/// subset: those contribute `−2ℓ` each, the remaining circles `k` each.
pub fn s_h_with_circles<S: Scalar>(
    g: &MultiGraph,
    subset: EdgeSet,
    circles_in_subset: usize,
    h: &EdgeColoringModel<S>,
) -> Result<S> {
    if circles_in_subset > g.n_circles() {
        return Err(Error::IndexOutOfRange {
            index: circles_in_subset,
            bound: g.n_circles() + 1,
        });
    }
    let base = s_h_of_subset(g, subset, h)?;
    let inside = S::from_i64(-(h.two_ell() as i64)).pow(circles_in_subset);
    let outside = S::from_i64(h.k() as i64).pow(g.n_circles() - circles_in_subset);
    Ok(base * inside * outside)
}

pub fn partition_function<S: Scalar>(
    g: &MultiGraph,
    h: &EdgeColoringModel<S>,
    mode: Mode,
) -> Result<EvaluationResult<S>> {
    mode.check(h)?;
    g.check_edge_limit()?;
    let fragment = Fragment::from_graph(g.clone());
    let subsets = match mode {
        Mode::Ordinary => vec![EdgeSet::empty()],
        Mode::Skew if g.is_eulerian() => vec![EdgeSet::full(g.n_edges())],
        Mode::Skew => vec![],
        Mode::Mixed => graph_eulerian_subsets(g)?,
    };
    let parts: Vec<(S, u64)> = subsets
        .par_iter()
        .map(|&subset| {
            let state = eulerian_state(&fragment, subset, 0)?;
            s_h_counted(&fragment, h, &state)
        })
        .collect::<Result<_>>()?;
    let mut value = S::zero();
    let mut colorings_visited = 0;
    for (v, n) in parts {
        value += v;
        colorings_visited += n;
    }
    value *= mode.circle_value(h).pow(g.n_circles());
    Ok(EvaluationResult {
        value,
        subsets_visited: subsets.len() as u64,
        colorings_visited,
    })
}

/// Up to `count` pairwise distinct states for `subset`, from seeded walks
/// followed by random reversals of whole circuits.
pub fn distinct_states(
    fragment: &Fragment,
    subset: EdgeSet,
    count: usize,
    seed: u64,
) -> Result<Vec<EulerianState>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<EulerianState> = Vec::new();
    let edges: Vec<usize> = subset.iter().collect();
    for _ in 0..count.saturating_mul(40).max(1) {
        if out.len() >= count {
            break;
        }
        let mut state = eulerian_state(fragment, subset, rng.gen())?;
        if !edges.is_empty() {
            for _ in 0..rng.gen_range(0..3) {
                let e = edges[rng.gen_range(0..edges.len())];
                state = state.reverse_component(fragment, e);
            }
        }
        if !out.contains(&state) {
            out.push(state);
        }
    }
    Ok(out)
}

/// Whether `s_h(G, F)` agrees across up to `trials` distinct states.
pub fn invariance_check<S: Scalar>(
    g: &MultiGraph,
    subset: EdgeSet,
    h: &EdgeColoringModel<S>,
    trials: usize,
) -> Result<bool> {
    let fragment = Fragment::from_graph(g.clone());
    let states = distinct_states(&fragment, subset, trials, 0)?;
    let mut values = states
        .iter()
        .map(|st| s_h_counted(&fragment, h, st).map(|r| r.0));
    let Some(first) = values.next().transpose()? else {
        return Ok(true);
    };
    for v in values {
        if v? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;
    use crate::algebra::{ExtBasisIndex, SymBasisIndex};
    use crate::models::{
        charpoly_model, circuit_neg_model, circuit_pos_model, matchings_model, random_sparse_model,
    };

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn value(g: &MultiGraph, h: &EdgeColoringModel<Q>, mode: Mode) -> Q {
        partition_function(g, h, mode).unwrap().value
    }

    /// Every colouring of every subset, with the local pairing the caller
    /// supplies ignored: brute force over colourings of a plain list.
    fn brute_s_h(g: &MultiGraph, h: &EdgeColoringModel<Q>, state: &EulerianState) -> Q {
        use crate::models::{ExtFactor, LocalEvaluationRequest};
        let f = Fragment::from_graph(g.clone());
        let subset = state.subset();
        let m = g.n_edges();
        let radix: Vec<usize> = (0..m)
            .map(|e| {
                if subset.contains(e) {
                    h.two_ell()
                } else {
                    h.k()
                }
            })
            .collect();
        if radix.contains(&0) {
            return q(0);
        }
        let total: usize = radix.iter().product();
        let inc = g.incidence();
        let mut acc = q(0);
        for mut code in 0..total {
            let mut colors = vec![0; m];
            for e in 0..m {
                colors[e] = code % radix[e];
                code /= radix[e];
            }
            let mut prod = q(1);
            #[allow(clippy::needless_range_loop)]
            for v in 0..g.n_vertices() {
                let sym = inc[v]
                    .iter()
                    .filter(|x| !subset.contains(x.edge))
                    .map(|x| colors[x.edge])
                    .collect();
                let ext = state
                    .pairing_at(v)
                    .iter()
                    .flat_map(|&(a, b)| {
                        [ExtFactor::f(colors[a.edge]), ExtFactor::g(colors[b.edge])]
                    })
                    .collect();
                prod *= h
                    .evaluate_local(&LocalEvaluationRequest { sym, ext })
                    .unwrap();
            }
            acc += prod;
        }
        sign(state.decompose(&f).circuits % 2 == 1, acc)
    }

    #[test]
    fn circle_values() {
        let circle = MultiGraph::circles(1);
        let h = charpoly_model::<Q>(q(0), 2);
        assert_eq!(value(&circle, &h, Mode::Mixed), q(0));
        assert_eq!(
            value(
                &MultiGraph::circles(2),
                &matchings_model::<Q>(2),
                Mode::Ordinary
            ),
            q(4)
        );
        let neg = circuit_neg_model::<Q>(2).unwrap();
        assert_eq!(value(&circle, &neg, Mode::Skew), q(-4));
        assert_eq!(value(&circle, &neg, Mode::Mixed), q(-4));
    }

    #[test]
    fn triangle_matchings() {
        let k3 = MultiGraph::complete(3);
        assert_eq!(value(&k3, &matchings_model::<Q>(2), Mode::Ordinary), q(4));
    }

    #[test]
    fn figure_eight_circuit_model() {
        let fig8 = MultiGraph::figure_eight();
        assert_eq!(
            value(
                &fig8,
                &circuit_pos_model::<Q>(1, 4).unwrap(),
                Mode::Ordinary
            ),
            q(3)
        );
    }

    #[test]
    fn constant_one_model_on_triangle() {
        let mut h = EdgeColoringModel::<Q>::new(1, 0, None).unwrap();
        for d in 0..4 {
            h.set(
                SymBasisIndex::new(vec![d]),
                ExtBasisIndex::new(vec![]).unwrap(),
                q(1),
            )
            .unwrap();
        }
        assert_eq!(
            s_h_of_subset(&MultiGraph::complete(3), EdgeSet::empty(), &h).unwrap(),
            q(1)
        );
    }

    #[test]
    fn figure_eight_skew_vanishes() {
        let fig8 = MultiGraph::figure_eight();
        let h = circuit_neg_model::<Q>(1).unwrap();
        let f = Fragment::from_graph(fig8.clone());
        for st in distinct_states(&f, EdgeSet::full(2), 8, 3).unwrap() {
            assert_eq!(s_h(&fig8, EdgeSet::full(2), &h, &st).unwrap(), q(0));
            assert_eq!(brute_s_h(&fig8, &h, &st), q(0));
        }
    }

    #[test]
    fn non_eulerian_subset_is_rejected() {
        let k3 = MultiGraph::complete(3);
        let h = circuit_neg_model::<Q>(1).unwrap();
        let bad = EdgeSet::from_bits(0b011);
        assert!(matches!(
            s_h_of_subset(&k3, bad, &h),
            Err(Error::NotEulerian { .. })
        ));
        let st = eulerian_state(&Fragment::from_graph(k3.clone()), EdgeSet::full(3), 0).unwrap();
        assert!(s_h(&k3, bad, &h, &st).is_err());
    }

    #[test]
    fn mode_mismatch() {
        let g = MultiGraph::complete(3);
        let mixed = charpoly_model::<Q>(q(1), 2);
        assert!(matches!(
            partition_function(&g, &mixed, Mode::Ordinary),
            Err(Error::ModeMismatch(_))
        ));
        assert!(matches!(
            partition_function(&g, &mixed, Mode::Skew),
            Err(Error::ModeMismatch(_))
        ));
        assert_eq!("skew".parse::<Mode>().unwrap(), Mode::Skew);
        assert!("other".parse::<Mode>().is_err());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let h = matchings_model::<Q>(2);
        let g = MultiGraph::complete(4);
        assert!(matches!(
            partition_function(&g, &h, Mode::Ordinary),
            Err(Error::DegreeCapExceeded {
                degree: 3,
                cap: 2,
                ..
            })
        ));
    }

    #[test]
    fn pruned_engine_matches_plain_enumeration() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let graphs = [
            MultiGraph::complete(3),
            MultiGraph::figure_eight(),
            MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 0)]).unwrap(),
            MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap(),
        ];
        for g in graphs {
            let f = Fragment::from_graph(g.clone());
            for (k, two_ell) in [(1, 2), (2, 2), (0, 4)] {
                let h = random_sparse_model::<Q, _>(k, two_ell, g.max_degree(), 0.8, &mut rng);
                for subset in graph_eulerian_subsets(&g).unwrap() {
                    let st = eulerian_state(&f, subset, 1).unwrap();
                    assert_eq!(s_h(&g, subset, &h, &st).unwrap(), brute_s_h(&g, &h, &st));
                }
            }
        }
    }

    #[test]
    fn invariance_examples() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let fig8 = MultiGraph::figure_eight();
        let h = random_sparse_model::<Q, _>(1, 2, 4, 0.9, &mut rng);
        assert!(invariance_check(&fig8, EdgeSet::full(2), &h, 10).unwrap());
        let k3 = MultiGraph::complete(3);
        let h = random_sparse_model::<Q, _>(1, 4, 2, 0.9, &mut rng);
        assert!(invariance_check(&k3, EdgeSet::full(3), &h, 10).unwrap());
        assert!(invariance_check(&k3, EdgeSet::empty(), &h, 10).unwrap());
    }

    #[test]
    fn distinct_states_are_distinct_and_valid() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 0)]).unwrap();
        let f = Fragment::from_graph(g.clone());
        let states = distinct_states(&f, EdgeSet::full(5), 10, 0).unwrap();
        assert_eq!(states.len(), 10);
        for (i, a) in states.iter().enumerate() {
            a.validate(&f).unwrap();
            assert!(states[i + 1..].iter().all(|b| b != a));
        }
    }

    #[test]
    fn circles_inside_and_outside() {
        let mut g = MultiGraph::complete(3);
        g.add_circle();
        g.add_circle();
        let h = charpoly_model::<Q>(q(2), 2);
        let bare = s_h_of_subset(&MultiGraph::complete(3), EdgeSet::full(3), &h).unwrap();
        // one circle inside (−2), one outside (2)
        assert_eq!(
            s_h_with_circles(&g, EdgeSet::full(3), 1, &h).unwrap(),
            bare * q(-4)
        );
        assert!(s_h_with_circles(&g, EdgeSet::full(3), 3, &h).is_err());
    }
}
