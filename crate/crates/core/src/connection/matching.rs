//! Directed perfect matchings and their relative signs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of arcs in which every element of the ground set occurs once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedMatching {
    arcs: Vec<(usize, usize)>,
}

impl DirectedMatching {
    pub fn new(arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen: Vec<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMatching(format!(
                "{arcs:?} repeats an element"
            )));
        }
        Ok(Self { arcs })
    }

    /// Arcs `(s₁, s₂), (s₃, s₄), …` on the sorted ground set.
    pub fn canonical(ground: &[usize]) -> Result<Self> {
        let mut g = ground.to_vec();
        g.sort_unstable();
        if !g.len().is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!("odd ground set {g:?}")));
        }
        Self::new(g.chunks(2).map(|c| (c[0], c[1])).collect())
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn ground_set(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
        g.sort_unstable();
        g
    }

    /// Every directed perfect matching on `ground`, in a fixed order.
    pub fn all_on(ground: &[usize]) -> Vec<Self> {
        fn rec(rest: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<DirectedMatching>) {
            let Some((&a, tail)) = rest.split_first() else {
                out.push(DirectedMatching { arcs: cur.clone() });
                return;
            };
            for j in 0..tail.len() {
                let b = tail[j];
                let others: Vec<usize> = tail
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &x)| x)
                    .collect();
                for arc in [(a, b), (b, a)] {
                    cur.push(arc);
                    rec(&others, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(ground, &mut Vec::new(), &mut out);
        out
    }
}

/// `(−1)^{c(M∪N) + o(M∪N)}`: `c` counts the alternating cycles of the union
/// and `o` the parity of arcs that must be flipped to orient every cycle
/// consistently. Equals the sign of any permutation sending `n` to `m`.
pub fn matching_sign(m: &DirectedMatching, n: &DirectedMatching) -> Result<i64> {
    let ground = m.ground_set();
    if ground != n.ground_set() {
        return Err(Error::GroundSetMismatch);
    }
    let pos = |x: usize| ground.binary_search(&x).unwrap();
    // partner and arc direction per side: (other end, leaves this point)
    let mut via = [
        vec![(0, false); ground.len()],
        vec![(0, false); ground.len()],
    ];
    for (side, matching) in [m, n].into_iter().enumerate() {
        for &(a, b) in matching.arcs() {
            via[side][pos(a)] = (pos(b), true);
            via[side][pos(b)] = (pos(a), false);
        }
    }
    let mut visited = vec![false; ground.len()];
    let mut cycles = 0;
    let mut against = 0;
    for start in 0..ground.len() {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        let mut side = 0;
        loop {
            visited[x] = true;
            let (y, forward) = via[side][x];
            if !forward {
                against += 1;
            }
            x = y;
            side = 1 - side;
            if x == start && side == 0 {
                break;
            }
        }
    }
    Ok(if (cycles + against) % 2 == 0 { 1 } else { -1 })
}

/// The sign of `m` against the canonical matching on its ground set.
pub fn canonical_matching_sign(m: &DirectedMatching) -> i64 {
    let canonical = DirectedMatching::canonical(&m.ground_set()).expect("perfect matching");
    matching_sign(m, &canonical).expect("same ground set")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(arcs: &[(usize, usize)]) -> DirectedMatching {
        DirectedMatching::new(arcs.to_vec()).unwrap()
    }

    #[test]
    fn small_signs() {
        assert_eq!(matching_sign(&dm(&[(1, 2)]), &dm(&[(1, 2)])).unwrap(), 1);
        assert_eq!(matching_sign(&dm(&[(1, 2)]), &dm(&[(2, 1)])).unwrap(), -1);
        assert_eq!(
            matching_sign(&dm(&[(1, 2), (3, 4)]), &dm(&[(1, 4), (3, 2)])).unwrap(),
            -1
        );
    }

    #[test]
    fn canonical_signs() {
        assert_eq!(canonical_matching_sign(&dm(&[(1, 2)])), 1);
        assert_eq!(canonical_matching_sign(&dm(&[(2, 1)])), -1);
        // (1 3)(2 4) ↦ (1 2)(3 4) by swapping 2 and 3
        assert_eq!(canonical_matching_sign(&dm(&[(1, 3), (2, 4)])), -1);
        assert_eq!(canonical_matching_sign(&dm(&[])), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DirectedMatching::new(vec![(1, 2), (2, 3)]).is_err());
        assert!(DirectedMatching::new(vec![(1, 1)]).is_err());
        assert!(matches!(
            matching_sign(&dm(&[(1, 2)]), &dm(&[(1, 3)])),
            Err(Error::GroundSetMismatch)
        ));
        assert!(DirectedMatching::canonical(&[1, 2, 3]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // (2m−1)!! · 2^m matchings on 2m points
        for (m, count) in [(1, 2), (2, 12), (3, 120)] {
            let ground: Vec<usize> = (0..2 * m).collect();
            let all = DirectedMatching::all_on(&ground);
            assert_eq!(all.len(), count);
            assert!(all.iter().all(|x| x.ground_set() == ground));
        }
    }
}
