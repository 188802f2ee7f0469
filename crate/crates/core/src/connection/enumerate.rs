use crate::error::Result;
use crate::graph::{Fragment, MultiGraph};

/// All `t`-fragments with at most `max_internal` unlabelled vertices and at
/// most `max_edges` edges, open ends included. Isomorphic copies are not
/// removed. Order is deterministic.
pub fn enumerate_fragments(
    t: usize,
    max_internal: usize,
    max_edges: usize,
) -> Result<Vec<Fragment>> {
    let mut out = Vec::new();
    for n in 0..=max_internal {
        let mut attachments = Vec::new();
        attach(0, t, n, &mut vec![None; t], &mut attachments);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        for ends in attachments {
            let mut g = MultiGraph::new(n + t);
            for (i, end) in ends.iter().enumerate() {
                match *end {
                    End::Internal(u) => {
                        g.add_edge(u, n + i)?;
                    }
                    End::Label(j) if j > i => {
                        g.add_edge(n + i, n + j)?;
                    }
                    End::Label(_) => {}
                }
            }
            let Some(budget) = max_edges.checked_sub(g.n_edges()) else {
                continue;
            };
            let labels: Vec<usize> = (n..n + t).collect();
            for size in 0..=budget {
                for_each_multiset(pairs.len(), size, &mut |chosen| {
                    let mut h = g.clone();
                    for &p in chosen {
                        let (u, v) = pairs[p];
                        h.add_edge(u, v).expect("in range");
                    }
                    out.push(Fragment::new(h, labels.clone()).expect("labels have degree one"));
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum End {
    Internal(usize),
    Label(usize),
}

fn attach(i: usize, t: usize, n: usize, cur: &mut Vec<Option<End>>, out: &mut Vec<Vec<End>>) {
    if i == t {
        out.push(cur.iter().map(|e| e.expect("assigned")).collect());
        return;
    }
    if cur[i].is_some() {
        attach(i + 1, t, n, cur, out);
        return;
    }
    for u in 0..n {
        cur[i] = Some(End::Internal(u));
        attach(i + 1, t, n, cur, out);
    }
    for j in i + 1..t {
        if cur[j].is_none() {
            cur[i] = Some(End::Label(j));
            cur[j] = Some(End::Label(i));
            attach(i + 1, t, n, cur, out);
            cur[j] = None;
        }
    }
    cur[i] = None;
}

/// Non-decreasing index sequences of length `size` over `0..n`.
fn for_each_multiset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for p in start..n {
            cur.push(p);
            rec(p, n, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(0, n, size, &mut Vec::new(), f);
}
