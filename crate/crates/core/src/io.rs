//! Text formats: edge lists, DOT, interval files and the JSON documents
//! shared by the command-line tool.
//!
//! Edge list: a line `n m`, then `m` lines `u v`; `#` starts a comment.
//! Interval file: one `l r` line per vertex.

use serde::{Deserialize, Serialize};

use crate::colorings::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::IntervalRepresentation;
use crate::treedepth::TreedepthDecomposition;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_pair<T: std::str::FromStr>(line_no: usize, line: &str) -> Result<(T, T)> {
    let mut it = line.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(parse_err(line_no, "expected two fields"));
    };
    let a = a
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad number `{a}`")))?;
    let b = b
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad number `{b}`")))?;
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return Err(parse_err(1, "missing `n m` header"));
    };
    let (n, m): (usize, usize) = parse_pair(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for (line_no, line) in lines {
        edges.push(parse_pair::<usize>(line_no, line)?);
        last = line_no;
    }
    if edges.len() != m {
        return Err(parse_err(
            last,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn parse_intervals(text: &str) -> Result<IntervalRepresentation> {
    let intervals = content_lines(text)
        .map(|(line_no, line)| parse_pair::<i64>(line_no, line))
        .collect::<Result<Vec<_>>>()?;
    IntervalRepresentation::new(intervals)
}

pub fn write_intervals(rep: &IntervalRepresentation) -> String {
    rep.intervals()
        .iter()
        .map(|(l, r)| format!("{l} {r}\n"))
        .collect()
}

/// Undirected DOT graph; with a coloring each node carries a `color`
/// attribute holding its color number.
pub fn to_dot(g: &Graph, coloring: Option<&Coloring>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match coloring {
            Some(c) => s.push_str(&format!("  {v} [color={}];\n", c.color(v))),
            None => s.push_str(&format!("  {v};\n")),
        }
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

/// Reads the DOT subset written by [`to_dot`]: numeric node ids, one
/// statement per line. The vertex count is one more than the largest id.
pub fn parse_dot(text: &str) -> Result<(Graph, Option<Coloring>)> {
    let mut n = 0usize;
    let mut edges = Vec::new();
    let mut colors: Vec<(usize, u32)> = Vec::new();
    let num = |line: usize, tok: &str| -> Result<usize> {
        tok.trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad node id `{}`", tok.trim())))
    };
    for (line_no, line) in content_lines(text) {
        let stmt = line.trim_end_matches(';').trim();
        if stmt.starts_with("graph") || stmt == "}" || stmt.starts_with("strict") {
            continue;
        }
        if let Some((a, b)) = stmt.split_once("--") {
            let (u, v) = (num(line_no, a)?, num(line_no, b)?);
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        } else {
            let (id, attrs) = stmt.split_once('[').map_or((stmt, ""), |(a, b)| (a, b));
            let v = num(line_no, id)?;
            n = n.max(v + 1);
            if let Some(rest) = attrs.split("color=").nth(1) {
                let val: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
                let c = val
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad color attribute"))?;
                colors.push((v, c));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let coloring = if colors.is_empty() {
        None
    } else {
        let mut cs = vec![0u32; n];
        for (v, c) in colors {
            cs[v] = c;
        }
        Some(Coloring::new(cs)?)
    };
    Ok((g, coloring))
}

/// `{"n": .., "colors": [..]}`; `offset` is set when the colors were
/// shifted from a palette starting below 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringDoc {
    pub n: usize,
    pub colors: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<u32>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            n: c.n(),
            colors: c.as_slice().to_vec(),
            offset: None,
        }
    }

    pub fn to_coloring(&self) -> Result<Coloring> {
        if self.colors.len() != self.n {
            return Err(Error::InvalidColoring(format!(
                "n = {} but {} colors given",
                self.n,
                self.colors.len()
            )));
        }
        Coloring::new(self.colors.clone())
    }
}

/// `{"n": .., "parent": [..]}` with `-1` marking roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub n: usize,
    pub parent: Vec<i64>,
}

impl DecompositionDoc {
    pub fn from_decomposition(t: &TreedepthDecomposition) -> Self {
        DecompositionDoc {
            n: t.n(),
            parent: t
                .parents()
                .iter()
                .map(|p| p.map_or(-1, |p| p as i64))
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<TreedepthDecomposition> {
        if self.parent.len() != self.n {
            return Err(Error::InvalidDecomposition(format!(
                "n = {} but {} parents given",
                self.n,
                self.parent.len()
            )));
        }
        let parent = self
            .parent
            .iter()
            .map(|&p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(Error::InvalidDecomposition(format!(
                    "parent {p} is not a vertex or -1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        TreedepthDecomposition::new(parent)
    }
}

/// Graph with an optional coloring and free-form metadata, used to pipe
/// instances between subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl Bundle {
    pub fn new(g: &Graph, c: Option<&Coloring>) -> Self {
        Bundle {
            n: g.n(),
            edges: g.edges().collect(),
            coloring: c.map(|c| c.as_slice().to_vec()),
            metadata: None,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.iter().copied())
    }

    pub fn coloring(&self) -> Result<Option<Coloring>> {
        self.coloring
            .as_ref()
            .map(|cs| {
                if cs.len() != self.n {
                    return Err(Error::InvalidColoring(format!(
                        "n = {} but {} colors given",
                        self.n,
                        cs.len()
                    )));
                }
                Coloring::new(cs.clone())
            })
            .transpose()
    }
}
