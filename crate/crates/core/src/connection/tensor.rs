//! Fragment tensors in `V_{k,2ℓ}^{⊗t}` and their factorwise pairing.

use super::matching::{canonical_matching_sign, DirectedMatching};
use crate::algebra::{basis_partner, dual_basis, Scalar};
use crate::error::{Error, Result};
use crate::evaluator::ColoringPlan;
use crate::graph::{enumerate_eulerian_subsets, eulerian_state, EdgeSet, EulerianState, Fragment};
use crate::models::EdgeColoringModel;

/// A dense tensor over the basis `e_0..e_{k−1}, f_0..f_{2ℓ−1}` of each of
/// `t` slots; slot 0 is the most significant digit of the flat index.
#[derive(Debug, Clone, PartialEq)]
pub struct FragmentTensor<S> {
    k: usize,
    two_ell: usize,
    t: usize,
    entries: Vec<S>,
}

impl<S: Scalar> FragmentTensor<S> {
    pub fn zeros(k: usize, two_ell: usize, t: usize) -> Self {
        let dim = (k + two_ell).pow(t as u32);
        Self {
            k,
            two_ell,
            t,
            entries: vec![S::zero(); dim],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn two_ell(&self) -> usize {
        self.two_ell
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// The coefficient of `b_{c_0} ⊗ … ⊗ b_{c_{t−1}}`.
    pub fn get(&self, coords: &[usize]) -> S {
        self.entries[self.flat(coords)].clone()
    }

    fn flat(&self, coords: &[usize]) -> usize {
        let d = self.k + self.two_ell;
        coords.iter().fold(0, |acc, &c| acc * d + c)
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.k, self.two_ell, self.t)
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                expected: self.entries.len(),
                found: other.entries.len(),
            });
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b.clone();
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }
}

/// `t_h(F, H, ω, κ)`: for every colouring, the product of vertex factors
/// times `⊗_i c_i`, where `c_i` is `e_ψ` off the subset, `f_φ` when the
/// edge at label `i` comes in and `g_φ` when it goes out. The prefactor is
/// `i^{|S|/2} · sgn(M) · (−1)^{ĉ}`.
pub fn fragment_tensor<S: Scalar>(
    fragment: &Fragment,
    subset: EdgeSet,
    h: &EdgeColoringModel<S>,
    state: &EulerianState,
) -> Result<FragmentTensor<S>> {
    if state.subset() != subset {
        return Err(Error::InvalidState(
            "state belongs to a different subset".into(),
        ));
    }
    state.validate(fragment)?;
    let (k, two_ell, t) = (h.k(), h.two_ell(), fragment.t());
    let ell = h.ell();

    // per label: (edge, in subset, incoming at the label)
    let slots: Vec<(usize, bool, bool)> = (0..t)
        .map(|i| {
            let end = fragment.open_end(i);
            let inside = subset.contains(end.edge);
            (end.edge, inside, inside && !state.is_outgoing(end))
        })
        .collect();
    let s_size = slots.iter().filter(|s| s.1).count();

    let decomposition = state.decompose(fragment);
    let matching = DirectedMatching::new(decomposition.trails.clone())?;
    let mut prefactor = S::one().mul_i_pow((s_size / 2) as i64);
    if canonical_matching_sign(&matching) < 0 {
        prefactor = -prefactor;
    }
    if decomposition.circuits % 2 == 1 {
        prefactor = -prefactor;
    }

    let mut tensor = FragmentTensor::zeros(k, two_ell, t);
    let dim = k + two_ell;
    let plan = ColoringPlan::new(fragment, state, h)?;
    plan.for_each(|colors, product| {
        let mut index = 0;
        let mut negate = false;
        for &(edge, inside, incoming) in &slots {
            let c = colors[edge];
            let coord = if !inside {
                c
            } else if incoming {
                k + c
            } else {
                let d = dual_basis(c, ell).expect("colour in range");
                negate ^= d.negative;
                k + d.index
            };
            index = index * dim + coord;
        }
        let term = prefactor.clone() * product.clone();
        tensor.entries[index] += if negate { -term } else { term };
    });
    Ok(tensor)
}

/// `Σ_H t_h(F, H, ·)` over all Eulerian subsets, each with its seed-0 state.
pub fn fragment_tensor_sum<S: Scalar>(
    fragment: &Fragment,
    h: &EdgeColoringModel<S>,
) -> Result<FragmentTensor<S>> {
    let mut total = FragmentTensor::zeros(h.k(), h.two_ell(), fragment.t());
    for subset in enumerate_eulerian_subsets(fragment)? {
        let state = eulerian_state(fragment, subset, 0)?;
        total.add_assign(&fragment_tensor(fragment, subset, h, &state)?)?;
    }
    Ok(total)
}

/// `[T₁, T₂]`: the form `[·,·]` on `V_{k,2ℓ}` applied in every slot.
pub fn gram_pairing<S: Scalar>(a: &FragmentTensor<S>, b: &FragmentTensor<S>) -> Result<S> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.entries.len(),
            found: b.entries.len(),
        });
    }
    let (k, two_ell, t) = a.shape();
    let dim = k + two_ell;
    let ell = two_ell / 2;
    let partner: Vec<(usize, i64)> = (0..dim).map(|c| basis_partner(k, ell, c)).collect();
    let mut acc = S::zero();
    for (index, x) in a.entries.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let mut rest = index;
        let mut place = 1;
        let mut other = 0;
        let mut sign = 1;
        for _ in 0..t {
            let (d, s) = partner[rest % dim];
            other += d * place;
            sign *= s;
            rest /= dim;
            place *= dim;
        }
        let term = x.clone() * b.entries[other].clone();
        if sign < 0 {
            acc = acc - term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;
    use crate::evaluator::{partition_function, s_h_of_subset, s_h_with_circles, Mode};
    use crate::graph::{glue, glue_traced, MultiGraph};
    use crate::models::{charpoly_model, random_sparse_model};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn any_model(k: usize, two_ell: usize, seed: u64) -> EdgeColoringModel<Q> {
        random_sparse_model(k, two_ell, 4, 0.9, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn graph_tensor_is_the_scalar() {
        let g = MultiGraph::complete(3);
        let f = Fragment::from_graph(g.clone());
        let h = any_model(1, 2, 1);
        for subset in [EdgeSet::empty(), EdgeSet::full(3)] {
            let st = eulerian_state(&f, subset, 0).unwrap();
            let tensor = fragment_tensor(&f, subset, &h, &st).unwrap();
            assert_eq!(tensor.entries().len(), 1);
            assert_eq!(tensor.get(&[]), s_h_of_subset(&g, subset, &h).unwrap());
        }
    }

    #[test]
    fn open_edge_tensor() {
        // label 0 → label 1: the edge leaves label 0 (slot g) and enters label 1 (slot f)
        let f = Fragment::open_edge();
        let h = any_model(1, 2, 2);
        let st = eulerian_state(&f, EdgeSet::full(1), 0).unwrap();
        let forward = st.is_outgoing(f.open_end(0));
        let tensor = fragment_tensor(&f, EdgeSet::full(1), &h, &st).unwrap();
        // coordinates: e_0 = 0, f_0 = 1, f_1 = 2; g_0 = −f_1, g_1 = f_0
        let i = Q::i();
        let mut expected = FragmentTensor::<Q>::zeros(1, 2, 2);
        let sgn_m = if forward { q(1) } else { q(-1) };
        // Σ_c g_c ⊗ f_c (forward) or f_c ⊗ g_c (backward)
        let terms: [([usize; 2], i64); 2] = if forward {
            [([2, 1], -1), ([1, 2], 1)]
        } else {
            [([1, 2], -1), ([2, 1], 1)]
        };
        for (coords, s) in terms {
            let idx = expected.flat(&coords);
            expected.entries[idx] = i.clone() * sgn_m.clone() * q(s);
        }
        assert_eq!(tensor, expected);
    }

    #[test]
    fn empty_subset_tensor_is_symmetric_block() {
        let f = Fragment::star(2);
        let h = any_model(2, 2, 3);
        let st = eulerian_state(&f, EdgeSet::empty(), 0).unwrap();
        let tensor = fragment_tensor(&f, EdgeSet::empty(), &h, &st).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a >= 2 || b >= 2 {
                    assert_eq!(tensor.get(&[a, b]), q(0));
                }
            }
        }
        use crate::models::LocalEvaluationRequest;
        let v = h
            .evaluate_local(&LocalEvaluationRequest {
                sym: vec![0, 1],
                ext: vec![],
            })
            .unwrap();
        assert_eq!(tensor.get(&[0, 1]), v);
    }

    #[test]
    fn open_edge_gram_is_the_circle() {
        let f = Fragment::open_edge();
        let h = charpoly_model::<Q>(q(3), 2);
        let st = eulerian_state(&f, EdgeSet::full(1), 0).unwrap();
        let a = fragment_tensor(&f, EdgeSet::full(1), &h, &st).unwrap();
        // glued: one circle, in the subset: −2ℓ = −2
        assert_eq!(gram_pairing(&a, &a).unwrap(), q(-2));
        let sum = fragment_tensor_sum(&f, &h).unwrap();
        assert_eq!(gram_pairing(&sum, &sum).unwrap(), q(0));
    }

    #[test]
    fn path_flip_invariance() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (1, 4), (3, 4)]).unwrap();
        let f = Fragment::new(g, vec![0, 2]).unwrap();
        let h = any_model(1, 4, 4);
        for subset in enumerate_eulerian_subsets(&f).unwrap() {
            let st = eulerian_state(&f, subset, 0).unwrap();
            let base = fragment_tensor(&f, subset, &h, &st).unwrap();
            for e in subset.iter() {
                let flipped = st.reverse_component(&f, e);
                assert_eq!(fragment_tensor(&f, subset, &h, &flipped).unwrap(), base);
            }
        }
    }

    #[test]
    fn gram_identity_on_small_pairs() {
        let frags = [
            Fragment::open_edge(),
            Fragment::star(2),
            Fragment::new(
                MultiGraph::from_edges(4, &[(0, 1), (1, 2), (1, 2), (2, 3)]).unwrap(),
                vec![0, 3],
            )
            .unwrap(),
            Fragment::new(
                MultiGraph::from_edges(3, &[(0, 2), (2, 2), (2, 1)]).unwrap(),
                vec![1, 0],
            )
            .unwrap(),
        ];
        for (k, two_ell) in [(1, 2), (2, 2), (0, 2)] {
            let h = any_model(k, two_ell, 7 + k as u64);
            for a in &frags {
                for b in &frags {
                    let traced = glue_traced(a, b).unwrap();
                    for ha in enumerate_eulerian_subsets(a).unwrap() {
                        let ta =
                            fragment_tensor(a, ha, &h, &eulerian_state(a, ha, 1).unwrap()).unwrap();
                        for hb in enumerate_eulerian_subsets(b).unwrap() {
                            let tb = fragment_tensor(b, hb, &h, &eulerian_state(b, hb, 2).unwrap())
                                .unwrap();
                            let expected = match traced.glue_subsets(ha, hb) {
                                Some((subset, circles)) => {
                                    s_h_with_circles(&traced.graph, subset, circles, &h).unwrap()
                                }
                                None => q(0),
                            };
                            assert_eq!(gram_pairing(&ta, &tb).unwrap(), expected);
                        }
                    }
                    let sum = gram_pairing(
                        &fragment_tensor_sum(a, &h).unwrap(),
                        &fragment_tensor_sum(b, &h).unwrap(),
                    );
                    let p = partition_function(&glue(a, b).unwrap(), &h, Mode::Mixed)
                        .unwrap()
                        .value;
                    assert_eq!(sum.unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn shape_mismatch() {
        let a = FragmentTensor::<Q>::zeros(1, 2, 2);
        let b = FragmentTensor::<Q>::zeros(2, 2, 2);
        assert!(gram_pairing(&a, &b).is_err());
    }
}
