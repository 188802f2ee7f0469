//! Brute-force ground truth, independent of the partition-function engine.

mod polynomial;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use polynomial::Polynomial;

use crate::algebra::{GaussianRational, Scalar};
use crate::connection::DirectedMatching;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, MultiGraph};

fn no_circles(g: &MultiGraph) -> Result<()> {
    if g.n_circles() > 0 {
        Err(Error::CircleNotAllowed)
    } else {
        Ok(())
    }
}

/// `det(tI − A)` by the Faddeev–LeVerrier recursion, with `A(v,v)` twice the
/// number of loops at `v`.
pub fn charpoly_oracle(g: &MultiGraph) -> Result<Polynomial<GaussianRational>> {
    no_circles(g)?;
    let n = g.n_vertices();
    let a: Vec<Vec<GaussianRational>> = g
        .adjacency()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| GaussianRational::from_integer(x))
                .collect()
        })
        .collect();
    let mut coeffs = vec![GaussianRational::zero(); n + 1];
    coeffs[n] = GaussianRational::one();
    let mut m = vec![vec![GaussianRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![GaussianRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: GaussianRational =
                    (0..n).map(|l| a[i][l].clone() * m[l][j].clone()).sum();
                if i == j {
                    acc += coeffs[n - k + 1].clone();
                }
                next[i][j] = acc;
            }
        }
        m = next;
        let trace: GaussianRational = (0..n)
            .flat_map(|i| (0..n).map(move |l| (i, l)))
            .map(|(i, l)| a[i][l].clone() * m[l][i].clone())
            .sum();
        coeffs[n - k] = -(trace / GaussianRational::from_integer(k as i64));
    }
    Ok(Polynomial::new(coeffs))
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            m.swap(p, c);
            negate = !negate;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                let v = &m[r][j] * &m[c][c] - &m[r][c] * &m[c][j];
                m[r][j] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    let det = if n == 0 {
        BigInt::one()
    } else {
        m[n - 1][n - 1].clone()
    };
    if negate {
        -det
    } else {
        det
    }
}

/// `p(G; t)` from the expansion over spanning subgraphs whose components
/// are single edges or cycles: `Σ_H (−1)^{#edges} (−2)^{#cycles} t^{n − |V[H]|}`.
/// Loops are cycles of length one and a parallel pair a cycle of length two.
pub fn sachs_oracle<S: Scalar>(g: &MultiGraph, t: &S) -> Result<S> {
    no_circles(g)?;
    g.check_edge_limit()?;
    let n = g.n_vertices();
    let m = g.n_edges();
    let mut total = S::zero();
    'subsets: for bits in 0u64..1 << m {
        let h = EdgeSet::from_bits(bits);
        let deg = g.degrees_in(h);
        if deg.iter().any(|&d| d > 2) {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in h.iter() {
            let (a, b) = g.edge(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        // per root: (vertices, edges, vertices of degree one)
        let mut comp = vec![(0usize, 0usize, 0usize); n];
        for v in (0..n).filter(|&v| deg[v] > 0) {
            let r = find(&mut parent, v);
            comp[r].0 += 1;
            comp[r].2 += usize::from(deg[v] == 1);
        }
        for e in h.iter() {
            let r = find(&mut parent, g.edge(e).0);
            comp[r].1 += 1;
        }
        let (mut single_edges, mut cycles, mut covered) = (0usize, 0usize, 0usize);
        for &(nv, ne, ones) in comp.iter().filter(|c| c.0 > 0) {
            covered += nv;
            match (nv, ne, ones) {
                (2, 1, 2) => single_edges += 1,
                (_, _, 0) => cycles += 1,
                _ => continue 'subsets,
            }
        }
        let sign = if single_edges % 2 == 0 {
            S::one()
        } else {
            -S::one()
        };
        total += sign * S::from_i64(-2).pow(cycles) * t.pow(n - covered);
    }
    Ok(total)
}

/// `J(G, x)`: over all transition systems (an unordered pairing of the
/// half-edges at every vertex), `x` to the number of circuits; every circle
/// contributes a factor `x`. Zero when `G` is not Eulerian.
pub fn circuit_partition_oracle(g: &MultiGraph) -> Result<Polynomial<GaussianRational>> {
    g.check_edge_limit()?;
    if !g.is_eulerian() {
        return Ok(Polynomial::zero());
    }
    let inc: Vec<Vec<usize>> = g
        .incidence()
        .iter()
        .map(|hs| hs.iter().map(|h| h.index()).collect())
        .collect();
    let mut partner = vec![usize::MAX; 2 * g.n_edges()];
    let mut counts: Vec<u64> = vec![0; g.n_edges() + 1];

    fn count_circuits(partner: &[usize]) -> usize {
        let mut seen = vec![false; partner.len()];
        let mut circuits = 0;
        for start in 0..partner.len() {
            if seen[start] {
                continue;
            }
            circuits += 1;
            let mut h = start;
            loop {
                seen[h] = true;
                // across the edge, then through the transition
                let other = h ^ 1;
                seen[other] = true;
                h = partner[other];
                if h == start {
                    break;
                }
            }
        }
        circuits
    }

    fn pair_up(rest: &mut Vec<usize>, partner: &mut [usize], f: &mut dyn FnMut(&mut [usize])) {
        let Some(a) = rest.pop() else {
            f(partner);
            return;
        };
        for i in 0..rest.len() {
            let b = rest.swap_remove(i);
            partner[a] = b;
            partner[b] = a;
            pair_up(rest, partner, f);
            rest.push(b);
            let last = rest.len() - 1;
            rest.swap(i, last);
        }
        rest.push(a);
    }

    fn vertices(v: usize, inc: &[Vec<usize>], partner: &mut [usize], counts: &mut [u64]) {
        if v == inc.len() {
            counts[count_circuits(partner)] += 1;
            return;
        }
        let mut rest = inc[v].clone();
        pair_up(&mut rest, partner, &mut |p: &mut [usize]| {
            vertices(v + 1, inc, p, counts)
        });
    }

    vertices(0, &inc, &mut partner, &mut counts);
    let base = Polynomial::new(
        counts
            .iter()
            .map(|&c| GaussianRational::from_integer(c as i64))
            .collect(),
    );
    Ok(base.mul(&Polynomial::monomial(
        GaussianRational::one(),
        g.n_circles(),
    )))
}

/// Number of edge subsets, the empty one included, in which no two edges
/// share an end. Loops never qualify.
pub fn matching_count_oracle(g: &MultiGraph) -> Result<u64> {
    g.check_edge_limit()?;
    let m = g.n_edges();
    let count = (0u64..1 << m)
        .filter(|&bits| {
            g.degrees_in(EdgeSet::from_bits(bits))
                .iter()
                .all(|&d| d <= 1)
        })
        .count();
    Ok(count as u64)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut even_cycles = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            even_cycles += 1;
        }
    }
    if even_cycles % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The sign of the first permutation of the common ground set, in
/// lexicographic order, that maps the arcs of `n` onto the arcs of `m`.
pub fn permutation_sign_oracle(m: &DirectedMatching, n: &DirectedMatching) -> Result<i64> {
    let ground = m.ground_set();
    if ground != n.ground_set() {
        return Err(Error::GroundSetMismatch);
    }
    let pos = |x: usize| ground.binary_search(&x).unwrap();
    let mut target: Vec<(usize, usize)> = m.arcs().iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    target.sort_unstable();
    let source: Vec<(usize, usize)> = n.arcs().iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    let mut perm: Vec<usize> = (0..ground.len()).collect();
    loop {
        let mut image: Vec<(usize, usize)> =
            source.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        image.sort_unstable();
        if image == target {
            return Ok(permutation_sign(&perm));
        }
        if !next_permutation(&mut perm) {
            return Err(Error::InvalidMatching(
                "no permutation maps one matching to the other".into(),
            ));
        }
    }
}

/// Advance to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![(p.clone(), 1)];
    while next_permutation(&mut p) {
        out.push((p.clone(), permutation_sign(&p)));
    }
    out
}
