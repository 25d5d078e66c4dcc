//! Edge-list text format shared by graphs and hypergraphs.
//!
//! First meaningful line is a header `r n m` (`r = 2` for graphs), followed
//! by `m` lines of `r` space-separated vertex ids. Lines starting with `#`
//! are comments. Serialization always emits the canonical (sorted) form with
//! LF line endings, so `parse` followed by `serialize` canonicalizes.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Graph(Graph),
    Hypergraph(Hypergraph),
}

impl Structure {
    pub fn n(&self) -> usize {
        match self {
            Structure::Graph(g) => g.n(),
            Structure::Hypergraph(h) => h.n(),
        }
    }
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid integer {tok:?}"),
            })
        })
        .collect()
}

/// Parses the edge-list format into a graph (r = 2) or hypergraph (r >= 3).
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let fields = parse_fields(header, hline)?;
    let [r, n, m] = fields[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header must be `r n m`, got {header:?}"),
        });
    };

    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines.next().ok_or(Error::Parse {
            line: hline,
            msg: format!("expected {m} edge lines"),
        })?;
        let e = parse_fields(line, lineno)?;
        if e.len() != r {
            return Err(Error::WrongArity { edge: e, r });
        }
        edges.push(e);
    }
    if let Some((lineno, line)) = lines.next() {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("unexpected trailing line {line:?}"),
        });
    }

    match r {
        2 => {
            let pairs = edges.into_iter().map(|e| (e[0], e[1]));
            Ok(Structure::Graph(Graph::new(n, pairs)?))
        }
        _ => Ok(Structure::Hypergraph(Hypergraph::new(r, n, edges)?)),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    match parse_structure(text)? {
        Structure::Graph(g) => Ok(g),
        Structure::Hypergraph(h) => Err(Error::Parse {
            line: 1,
            msg: format!("expected a graph (r = 2), got r = {}", h.r()),
        }),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    match parse_structure(text)? {
        Structure::Hypergraph(h) => Ok(h),
        Structure::Graph(_) => Err(Error::Parse {
            line: 1,
            msg: "expected a hypergraph (r >= 3), got a graph".into(),
        }),
    }
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("2 {} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.n(), h.edge_count());
    for e in h.edges() {
        let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_structure(s: &Structure) -> String {
    match s {
        Structure::Graph(g) => serialize_graph(g),
        Structure::Hypergraph(h) => serialize_hypergraph(h),
    }
}
