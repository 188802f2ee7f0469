//! Gluing two `t`-fragments along equal labels.

use super::fragment::Fragment;
use super::multigraph::{EdgeId, EdgeSet, MultiGraph};
use crate::error::{Error, Result};

/// Which input fragment an edge piece came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    Left,
    Right,
}

/// `F₁ * F₂` together with the provenance of every resulting edge.
#[derive(Debug, Clone)]
pub struct Glued {
    pub graph: MultiGraph,
    /// Pieces fused into each edge of `graph`.
    pub edge_pieces: Vec<Vec<(Origin, EdgeId)>>,
    /// Pieces fused into each circle of `graph`.
    pub circle_pieces: Vec<Vec<(Origin, EdgeId)>>,
}

impl Glued {
    /// The subset `H₁ * H₂` of the glued graph, as an edge set plus the number
    /// of circles it contains. `None` when the two subsets disagree on some
    /// fused edge, which happens exactly when `S(H₁) ≠ S(H₂)`.
    pub fn glue_subsets(&self, left: EdgeSet, right: EdgeSet) -> Option<(EdgeSet, usize)> {
        let member = |pieces: &[(Origin, EdgeId)]| -> Option<bool> {
            let mut it = pieces.iter().map(|&(o, e)| match o {
                Origin::Left => left.contains(e),
                Origin::Right => right.contains(e),
            });
            let first = it.next()?;
            it.all(|x| x == first).then_some(first)
        };
        let mut edges = EdgeSet::empty();
        for (e, pieces) in self.edge_pieces.iter().enumerate() {
            if member(pieces)? {
                edges.insert(e);
            }
        }
        let mut circles = 0;
        for pieces in &self.circle_pieces {
            if member(pieces)? {
                circles += 1;
            }
        }
        Some((edges, circles))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Real(usize),
    Label(usize),
}

pub fn glue(left: &Fragment, right: &Fragment) -> Result<MultiGraph> {
    glue_traced(left, right).map(|g| g.graph)
}

pub fn glue_traced(left: &Fragment, right: &Fragment) -> Result<Glued> {
    if left.t() != right.t() {
        return Err(Error::LabelCountMismatch(left.t(), right.t()));
    }
    let t = left.t();

    // renumber unlabelled vertices: left first, then right
    let mut n_real = 0;
    let mut remap = |f: &Fragment| -> Vec<End> {
        let labels = f.label_map();
        (0..f.graph().n_vertices())
            .map(|v| match labels[v] {
                Some(i) => End::Label(i),
                None => {
                    n_real += 1;
                    End::Real(n_real - 1)
                }
            })
            .collect()
    };
    let ends_left = remap(left);
    let ends_right = remap(right);

    struct Piece {
        origin: (Origin, EdgeId),
        ends: [End; 2],
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for (origin, f, ends) in [
        (Origin::Left, left, &ends_left),
        (Origin::Right, right, &ends_right),
    ] {
        for (e, &(a, b)) in f.graph().edges().iter().enumerate() {
            pieces.push(Piece {
                origin: (origin, e),
                ends: [ends[a], ends[b]],
            });
        }
    }
    // at each label, the piece from each side
    let mut at_label: Vec<[usize; 2]> = vec![[usize::MAX; 2]; t];
    for (p, piece) in pieces.iter().enumerate() {
        let slot = usize::from(piece.origin.0 == Origin::Right);
        for end in piece.ends {
            if let End::Label(i) = end {
                at_label[i][slot] = p;
            }
        }
    }

    // Walk from `p`, entering through `ends[enter]`, across label vertices.
    // Returns visited pieces and the real vertex reached (if any).
    let walk = |mut p: usize,
                mut enter: usize,
                used: &mut Vec<bool>|
     -> (Vec<(Origin, EdgeId)>, Option<usize>) {
        let start = p;
        let mut trace = Vec::new();
        loop {
            used[p] = true;
            trace.push(pieces[p].origin);
            let exit = pieces[p].ends[1 - enter];
            match exit {
                End::Real(v) => return (trace, Some(v)),
                End::Label(i) => {
                    let slot = usize::from(pieces[p].origin.0 == Origin::Right);
                    let q = at_label[i][1 - slot];
                    if q == start {
                        return (trace, None);
                    }
                    enter = if pieces[q].ends[0] == End::Label(i) {
                        0
                    } else {
                        1
                    };
                    p = q;
                }
            }
        }
    };

    let mut used = vec![false; pieces.len()];
    let mut graph = MultiGraph::new(n_real);
    let mut edge_pieces = Vec::new();
    for p in 0..pieces.len() {
        if used[p] {
            continue;
        }
        let enter = match pieces[p].ends {
            [End::Real(_), _] => 0,
            [_, End::Real(_)] => 1,
            _ => continue,
        };
        let End::Real(u) = pieces[p].ends[enter] else {
            unreachable!()
        };
        let (trace, Some(v)) = walk(p, enter, &mut used) else {
            unreachable!("a chain leaving a real vertex ends at one")
        };
        graph.add_edge(u, v)?;
        edge_pieces.push(trace);
    }
    let mut circle_pieces = Vec::new();
    for p in 0..pieces.len() {
        if used[p] {
            continue;
        }
        let (trace, end) = walk(p, 0, &mut used);
        debug_assert!(end.is_none());
        graph.add_circle();
        circle_pieces.push(trace);
    }
    for _ in 0..left.graph().n_circles() + right.graph().n_circles() {
        graph.add_circle();
        circle_pieces.push(Vec::new());
    }
    Ok(Glued {
        graph,
        edge_pieces,
        circle_pieces,
    })
}
