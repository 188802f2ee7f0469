//! Line-oriented text format for graphs and fragments.
//!
//! ```text
//! # a 2-fragment: a path through one internal vertex
//! vertices 3
//! edge 0 1
//! edge 1 2
//! label 0
//! label 2
//! ```
//!
//! `circle` adds a vertexless circle (plain graphs only); a file may open
//! with `circle` lines, read as `vertices 0`. A file may hold several
//! graphs; each `vertices` line starts a new one.

use std::fmt::Write as _;

use super::fragment::Fragment;
use super::multigraph::MultiGraph;
use crate::error::{Error, Result};

struct Pending {
    line: usize,
    graph: MultiGraph,
    labels: Vec<(usize, usize)>,
    circle_line: Option<usize>,
}

impl Pending {
    fn finish(self) -> Result<Fragment> {
        if let (Some(line), Some(_)) = (self.circle_line, self.labels.first()) {
            return Err(Error::Parse {
                line,
                msg: "fragments may not declare circles".into(),
            });
        }
        let degrees = self.graph.degrees();
        let mut seen = vec![false; self.graph.n_vertices()];
        for &(line, v) in &self.labels {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} labelled twice"),
                });
            }
            if degrees[v] != 1 {
                return Err(Error::Parse {
                    line,
                    msg: format!("labelled vertex {v} has degree {}, expected 1", degrees[v]),
                });
            }
        }
        let labels = self.labels.iter().map(|&(_, v)| v).collect();
        Fragment::new(self.graph, labels).map_err(|e| Error::Parse {
            line: self.line,
            msg: e.to_string(),
        })
    }
}

/// Parse every graph in `text`, as fragments (`t = 0` when unlabelled).
pub fn parse_fragments(text: &str) -> Result<Vec<Fragment>> {
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let keyword = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        let err = |msg: String| Error::Parse { line, msg };
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a vertex id, found {s:?}")))
        };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "`{keyword}` takes {n} argument(s), found {}",
                    args.len()
                )))
            }
        };
        if keyword == "vertices" {
            arity(1)?;
            if let Some(p) = cur.take() {
                out.push(p.finish()?);
            }
            cur = Some(Pending {
                line,
                graph: MultiGraph::new(int(args[0])?),
                labels: Vec::new(),
                circle_line: None,
            });
            continue;
        }
        if cur.is_none() && keyword == "circle" && out.is_empty() {
            cur = Some(Pending {
                line,
                graph: MultiGraph::new(0),
                labels: Vec::new(),
                circle_line: None,
            });
        }
        let p = cur
            .as_mut()
            .ok_or_else(|| err(format!("`{keyword}` before any `vertices` line")))?;
        match keyword {
            "edge" => {
                arity(2)?;
                let (u, v) = (int(args[0])?, int(args[1])?);
                p.graph.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
            "circle" => {
                arity(0)?;
                p.graph.add_circle();
                p.circle_line.get_or_insert(line);
            }
            "label" => {
                arity(1)?;
                let v = int(args[0])?;
                if v >= p.graph.n_vertices() {
                    return Err(err(format!("vertex {v} out of range")));
                }
                p.labels.push((line, v));
            }
            other => return Err(err(format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(p) = cur {
        out.push(p.finish()?);
    }
    Ok(out)
}

/// Parse exactly one unlabelled graph.
pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let mut all = parse_fragments(text)?;
    match all.len() {
        1 => {
            let f = all.pop().unwrap();
            if f.t() != 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: "expected a graph, found a fragment".into(),
                });
            }
            Ok(f.into_graph())
        }
        n => Err(Error::Parse {
            line: 0,
            msg: format!("expected one graph, found {n}"),
        }),
    }
}

pub fn write_fragment(f: &Fragment) -> String {
    let g = f.graph();
    let mut s = format!("vertices {}\n", g.n_vertices());
    for &(u, v) in g.edges() {
        writeln!(s, "edge {u} {v}").unwrap();
    }
    for _ in 0..g.n_circles() {
        s.push_str("circle\n");
    }
    for v in f.labeled() {
        writeln!(s, "label {v}").unwrap();
    }
    s
}

pub fn write_graph(g: &MultiGraph) -> String {
    write_fragment(&Fragment::from_graph(g.clone()))
}
