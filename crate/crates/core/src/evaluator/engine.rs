//! Depth-first enumeration of edge colorings with per-vertex pruning.
//!
//! Edges of the subset take exterior colours `0..2ℓ`, the others symmetric
//! colours `0..k`. Edges are ordered so that vertices complete early; when a
//! vertex's last edge is coloured its factor is evaluated and a zero factor
//! cuts the branch.

use crate::algebra::{dual_basis, Scalar};
use crate::error::Result;
use crate::graph::{EdgeId, EulerianState, Fragment, HalfEdge};
use crate::models::EdgeColoringModel;

struct VertexTemplate {
    sym: Vec<EdgeId>,
    /// `(edge, dual)` in wedge order.
    ext: Vec<(EdgeId, bool)>,
}

pub(crate) struct ColoringPlan<'a, S> {
    h: &'a EdgeColoringModel<S>,
    order: Vec<EdgeId>,
    domain: Vec<usize>,
    /// Vertices whose factor becomes known once `order[pos]` is coloured.
    checkpoints: Vec<Vec<VertexTemplate>>,
    /// Product over isolated unlabelled vertices.
    constant: S,
    n_edges: usize,
    /// `g_c = ±f_d` as `(d, negative)`.
    duals: Vec<(u32, bool)>,
}

impl<'a, S: Scalar> ColoringPlan<'a, S> {
    pub(crate) fn new(
        fragment: &Fragment,
        state: &EulerianState,
        h: &'a EdgeColoringModel<S>,
    ) -> Result<Self> {
        let g = fragment.graph();
        let labels = fragment.label_map();
        let subset = state.subset();
        let inc = g.incidence();
        let degrees = g.degrees();
        for v in 0..g.n_vertices() {
            if labels[v].is_none() {
                h.check_degree(v, degrees[v])?;
            }
        }

        // vertex order: repeatedly take the unlabelled vertex with most
        // neighbours already placed
        let n = g.n_vertices();
        let mut placed = vec![false; n];
        let mut rank = vec![usize::MAX; n];
        for next_rank in 0..n {
            let score = |v: usize| {
                inc[v]
                    .iter()
                    .filter(|h| placed[g.vertex_of(h.opposite())])
                    .count()
            };
            let v = (0..n)
                .filter(|&v| !placed[v] && labels[v].is_none())
                .max_by_key(|&v| (score(v), std::cmp::Reverse(v)));
            let Some(v) = v else { break };
            placed[v] = true;
            rank[v] = next_rank;
        }
        let key = |e: EdgeId| {
            let (a, b) = g.edge(e);
            // labelled ends impose no constraint
            let ra = if labels[a].is_some() { 0 } else { rank[a] };
            let rb = if labels[b].is_some() { 0 } else { rank[b] };
            (ra.max(rb), ra.min(rb), e)
        };
        let mut order: Vec<EdgeId> = (0..g.n_edges()).collect();
        order.sort_by_key(|&e| key(e));
        let mut position = vec![0; g.n_edges()];
        for (p, &e) in order.iter().enumerate() {
            position[e] = p;
        }
        let domain = order
            .iter()
            .map(|&e| {
                if subset.contains(e) {
                    h.two_ell()
                } else {
                    h.k()
                }
            })
            .collect();

        let mut checkpoints: Vec<Vec<VertexTemplate>> =
            (0..order.len()).map(|_| Vec::new()).collect();
        let mut isolated = Vec::new();
        for v in 0..n {
            if labels[v].is_some() {
                continue;
            }
            let sym: Vec<EdgeId> = inc[v]
                .iter()
                .filter(|h| !subset.contains(h.edge))
                .map(|h| h.edge)
                .collect();
            let ext: Vec<(EdgeId, bool)> = state
                .pairing_at(v)
                .iter()
                .flat_map(|&(a, b): &(HalfEdge, HalfEdge)| [(a.edge, false), (b.edge, true)])
                .collect();
            let template = VertexTemplate { sym, ext };
            match inc[v].iter().map(|h| position[h.edge]).max() {
                Some(p) => checkpoints[p].push(template),
                None => isolated.push(template),
            }
        }
        let ell = h.ell();
        let duals = (0..h.two_ell())
            .map(|c| {
                let d = dual_basis(c, ell).expect("colour in range");
                (d.index as u32, d.negative)
            })
            .collect();
        let mut plan = Self {
            h,
            order,
            domain,
            checkpoints,
            constant: S::one(),
            n_edges: g.n_edges(),
            duals,
        };
        let colors = vec![0; plan.n_edges];
        let mut scratch = Vec::new();
        let mut constant = S::one();
        for t in &isolated {
            constant *= plan.factor(t, &colors, &mut scratch);
        }
        plan.constant = constant;
        Ok(plan)
    }

    fn factor(&self, t: &VertexTemplate, colors: &[usize], buf: &mut Vec<u32>) -> S {
        buf.clear();
        buf.resize(self.h.k(), 0);
        for &e in &t.sym {
            buf[colors[e]] += 1;
        }
        let mut negate = false;
        for &(e, dual) in &t.ext {
            let c = colors[e];
            if dual {
                let (d, neg) = self.duals[c];
                negate ^= neg;
                buf.push(d);
            } else {
                buf.push(c as u32);
            }
        }
        self.h.eval_buffer(buf, negate)
    }

    /// Call `visit(colors, product)` for every colouring whose product is
    /// nonzero. Returns the number of complete colourings reached.
    pub(crate) fn for_each(&self, mut visit: impl FnMut(&[usize], &S)) -> u64 {
        if self.constant.is_zero() {
            return 0;
        }
        let mut colors = vec![0; self.n_edges];
        let mut scratch = Vec::new();
        let mut leaves = 0;
        self.dfs(
            0,
            self.constant.clone(),
            &mut colors,
            &mut scratch,
            &mut leaves,
            &mut visit,
        );
        leaves
    }

    fn dfs(
        &self,
        pos: usize,
        prod: S,
        colors: &mut [usize],
        scratch: &mut Vec<u32>,
        leaves: &mut u64,
        visit: &mut impl FnMut(&[usize], &S),
    ) {
        if pos == self.order.len() {
            *leaves += 1;
            visit(colors, &prod);
            return;
        }
        let e = self.order[pos];
        'colour: for c in 0..self.domain[pos] {
            colors[e] = c;
            let mut p = prod.clone();
            for t in &self.checkpoints[pos] {
                let f = self.factor(t, colors, scratch);
                if f.is_zero() {
                    continue 'colour;
                }
                p *= f;
            }
            self.dfs(pos + 1, p, colors, scratch, leaves, visit);
        }
    }

    /// The plain sum of products.
    pub(crate) fn sum(&self) -> (S, u64) {
        let mut acc = S::zero();
        let leaves = self.for_each(|_, p| acc += p.clone());
        (acc, leaves)
    }
}
