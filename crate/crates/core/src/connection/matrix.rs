//! Connection matrices `M(F₁, F₂) = f(F₁ * F₂)` and exact rank.

use std::fmt::Display;

use rayon::prelude::*;

use crate::algebra::{ExactField, Scalar};
use crate::error::{Error, Result};
use crate::evaluator::{partition_function, Mode};
use crate::graph::{build_g_pi, glue, Fragment, MultiGraph};
use crate::models::EdgeColoringModel;
use crate::oracles::signed_permutations;

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix<S> {
    pub t: usize,
    pub fragments: Vec<Fragment>,
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> ConnectionMatrix<S> {
    /// Build from any graph parameter; entries are computed in parallel.
    pub fn from_parameter<F>(fragments: Vec<Fragment>, f: F) -> Result<Self>
    where
        F: Fn(&MultiGraph) -> Result<S> + Sync,
    {
        let t = fragments.first().map_or(0, Fragment::t);
        if let Some(bad) = fragments.iter().find(|x| x.t() != t) {
            return Err(Error::LabelCountMismatch(t, bad.t()));
        }
        let n = fragments.len();
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let values: Vec<S> = cells
            .par_iter()
            .map(|&(i, j)| f(&glue(&fragments[i], &fragments[j])?))
            .collect::<Result<_>>()?;
        let mut entries = vec![vec![S::zero(); n]; n];
        for (&(i, j), v) in cells.iter().zip(values) {
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
        Ok(Self {
            t,
            fragments,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

impl<S: Scalar + Display> ConnectionMatrix<S> {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn connection_matrix<S: Scalar>(
    fragments: Vec<Fragment>,
    h: &EdgeColoringModel<S>,
    mode: Mode,
) -> Result<ConnectionMatrix<S>> {
    mode.check(h)?;
    ConnectionMatrix::from_parameter(fragments, |g| Ok(partition_function(g, h, mode)?.value))
}

/// Rank by fraction-free elimination with first-nonzero pivoting. Every
/// step multiplies rows by nonzero scalars, so the rank is exact over the
/// field.
pub fn exact_rank<S: ExactField>(matrix: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = matrix.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = S::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in rank + 1..rows {
            let factor = m[r][c].clone();
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[rank][c..]) {
                *x = (pivot.clone() * x.clone() - factor.clone() * y.clone()) / prev.clone();
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// `Σ_{π ∈ S_{k+1}} sgn(π) f(G_π)`.
pub fn dglrs_constraint_sum<S, F>(f: F, k: usize) -> Result<S>
where
    S: Scalar,
    F: Fn(&MultiGraph) -> Result<S>,
{
    let mut total = S::zero();
    for (perm, sign) in signed_permutations(k + 1) {
        let v = f(&build_g_pi(k, &perm)?)?;
        if sign < 0 {
            total = total - v;
        } else {
            total += v;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as Q;
    use crate::models::{charpoly_model, matchings_model};
    use crate::oracles::determinant;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(exact_rank::<Q>(&[]), 0);
        assert_eq!(exact_rank(&[vec![q(0), q(0)], vec![q(0), q(0)]]), 0);
        let diag = vec![
            vec![q(3), q(0), q(0)],
            vec![q(0), q(0), q(0)],
            vec![q(0), q(0), Q::i()],
        ];
        assert_eq!(exact_rank(&diag), 2);
        let dependent = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(exact_rank(&dependent), 2);
        let skipped = vec![
            vec![q(0), q(1), q(1)],
            vec![q(0), q(1), q(2)],
            vec![q(0), q(2), q(3)],
        ];
        assert_eq!(exact_rank(&skipped), 2);
        let complex = vec![vec![Q::i(), q(1)], vec![q(1), -Q::i()]];
        assert_eq!(exact_rank(&complex), 1);
    }

    #[test]
    fn graph_matrix() {
        let fragments = vec![
            Fragment::from_graph(MultiGraph::new(0)),
            Fragment::from_graph(MultiGraph::complete(3)),
        ];
        let m = connection_matrix(fragments, &matchings_model::<Q>(4), Mode::Ordinary).unwrap();
        assert_eq!(m.entries, vec![vec![q(1), q(4)], vec![q(4), q(16)]]);
        assert_eq!(exact_rank(&m.entries), 1);
        assert_eq!(m.to_csv(), "1,4\n4,16\n");
    }

    #[test]
    fn circle_entries() {
        let path = Fragment::new(
            MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap(),
            vec![0, 2],
        )
        .unwrap();
        let m = connection_matrix(
            vec![Fragment::open_edge(), path],
            &matchings_model::<Q>(2),
            Mode::Ordinary,
        )
        .unwrap();
        // circle: k = 2; loop at a vertex: colour 1 twice is excluded, so 1
        assert_eq!(m.entries[0][0], q(2));
        assert_eq!(m.entries[0][1], q(1));
        assert!(m.is_symmetric());
    }

    #[test]
    fn single_fragment() {
        let m = connection_matrix(
            vec![Fragment::star(1)],
            &charpoly_model::<Q>(q(2), 2),
            Mode::Mixed,
        )
        .unwrap();
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn t_mismatch() {
        let r = connection_matrix(
            vec![Fragment::star(1), Fragment::star(2)],
            &matchings_model::<Q>(2),
            Mode::Ordinary,
        );
        assert!(matches!(r, Err(Error::LabelCountMismatch(1, 2))));
    }

    #[test]
    fn dglrs_sums() {
        let det = |g: &MultiGraph| {
            Ok(Q::real(num_rational::BigRational::from_integer(
                determinant(&g.adjacency()),
            )))
        };
        assert_eq!(dglrs_constraint_sum(det, 1).unwrap(), q(16));
        assert_eq!(dglrs_constraint_sum(det, 2).unwrap(), q(-72));
        assert_eq!(dglrs_constraint_sum(|_| Ok(q(0)), 1).unwrap(), q(0));
    }
}
