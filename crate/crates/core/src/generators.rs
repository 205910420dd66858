//! Extremal families with explicit linear colorings, seeded random
//! instances, and the subdivision transform.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colorings::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval::IntervalRepresentation;

/// Largest `levels` accepted for complete binary trees.
pub const MAX_BTREE_LEVELS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Metadata {
    pub family: String,
    pub params: BTreeMap<String, u64>,
    /// One role label per vertex.
    pub roles: Vec<String>,
}

/// A generated graph with its coloring and per-vertex role labels.
#[derive(Debug, Clone)]
pub struct LabeledFamilyInstance {
    pub graph: Graph,
    pub coloring: Coloring,
    pub metadata: Metadata,
}

fn params<const N: usize>(kv: [(&str, u64); N]) -> BTreeMap<String, u64> {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Clique `v_1..v_i` where `v_j` is an apex of its own copy `H_j` of
/// `R_p`, `p = (i - 1) / 2`. Clique vertices come first, then the copies in
/// order, each in a contiguous block laid out the same way.
///
/// `v_j` gets color `j`; color `c` of `H_j`'s own coloring becomes
/// `1 + (j - 1 - c) mod i`, so `H_j` reuses the colors of
/// `v_{j-1}, .., v_{j-p}` (cyclically).
pub fn gen_recursive_clique(i: usize) -> Result<LabeledFamilyInstance> {
    if i == 0 {
        return Err(Error::Precondition("recursive clique needs i >= 1".into()));
    }
    let (n, edges, colors, roles) = recursive_clique(i);
    Ok(LabeledFamilyInstance {
        graph: Graph::from_edges(n, edges)?,
        coloring: Coloring::new(colors)?,
        metadata: Metadata {
            family: "rclique".into(),
            params: params([("i", i as u64)]),
            roles,
        },
    })
}

type Parts = (usize, Vec<(usize, usize)>, Vec<u32>, Vec<String>);

fn recursive_clique(i: usize) -> Parts {
    if i == 0 {
        return (0, Vec::new(), Vec::new(), Vec::new());
    }
    let (sub_n, sub_edges, sub_colors, sub_roles) = recursive_clique((i - 1) / 2);
    let mut edges = Vec::new();
    let mut colors: Vec<u32> = (1..=i as u32).collect();
    let mut roles: Vec<String> = (1..=i).map(|j| format!("v{j}")).collect();
    for u in 0..i {
        for w in u + 1..i {
            edges.push((u, w));
        }
    }
    for j in 1..=i {
        let base = colors.len();
        edges.extend(sub_edges.iter().map(|&(a, b)| (a + base, b + base)));
        edges.extend((0..sub_n).map(|x| (j - 1, base + x)));
        colors.extend(
            sub_colors
                .iter()
                .map(|&c| 1 + (j as i64 - 1 - c as i64).rem_euclid(i as i64) as u32),
        );
        roles.extend(sub_roles.iter().map(|r| format!("H{j}.{r}")));
    }
    (colors.len(), edges, colors, roles)
}

/// Complete binary tree with `levels` levels; vertex `v` has children
/// `2v + 1` and `2v + 2`.
pub fn gen_complete_binary_tree(levels: usize) -> Result<Graph> {
    if levels == 0 || levels > MAX_BTREE_LEVELS {
        return Err(Error::TooLarge(format!(
            "levels must be in 1..={MAX_BTREE_LEVELS}"
        )));
    }
    let n = (1usize << levels) - 1;
    Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v)))
}

/// Color of one vertex of the pattern tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum Cell {
    /// Global color in `1..=b`.
    Global(u32),
    /// The `q`-th local vertex, `0 <= q < p`.
    Local(u32),
}

/// Partial coloring of `B_a` by at most `b` global colors plus local
/// vertices, where every leaf-to-leaf path, leaf-to-root path and path free
/// of local vertices has a global center.
#[derive(Debug, Clone, Serialize)]
pub struct Pattern {
    pub a: usize,
    pub b: usize,
    /// Number of global subtrees.
    pub ell: usize,
    /// Number of local vertices.
    pub p: usize,
    /// Color sets of the global subtrees, in placement order.
    pub subsets: Vec<Vec<u32>>,
    /// Per vertex of `B_a` in BFS order.
    pub cells: Vec<Cell>,
}

/// Builds the pattern for `B_a`: `b` is the least integer with
/// `2^a < 3^b`; subsets of `[b]` are taken by size (largest first, then by
/// bitmask) and each one claims the next `2^(|C| - 1)` leaves in order,
/// coloring the subtree above them level by level, smallest color at the
/// bottom. Uncovered vertices are local, numbered in BFS order.
pub fn psi_pattern(a: usize) -> Result<Pattern> {
    if a == 0 || a > MAX_BTREE_LEVELS {
        return Err(Error::TooLarge(format!(
            "a must be in 1..={MAX_BTREE_LEVELS}"
        )));
    }
    let mut b = 0u32;
    while 3u64.pow(b) <= 1u64 << a {
        b += 1;
    }
    let mut masks: Vec<u64> = (1..1u64 << b).collect();
    masks.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    let n = (1usize << a) - 1;
    let mut cells: Vec<Option<Cell>> = vec![None; n];
    let mut subsets = Vec::new();
    let mut covered = 0usize;
    for &mask in &masks {
        if covered == 1 << (a - 1) {
            break;
        }
        let colors = crate::ranking::mask_colors(mask);
        let h = colors.len();
        for (k, &c) in colors.iter().enumerate() {
            // row k above the leaves
            let row_start = (1usize << (a - 1 - k)) - 1;
            let lo = covered >> k;
            let hi = (covered + (1 << (h - 1))) >> k;
            for pos in lo..hi {
                cells[row_start + pos] = Some(Cell::Global(c));
            }
        }
        covered += 1 << (h - 1);
        subsets.push(colors);
    }
    debug_assert_eq!(covered, 1 << (a - 1));
    let mut p = 0u32;
    let cells: Vec<Cell> = cells
        .into_iter()
        .map(|c| {
            c.unwrap_or_else(|| {
                p += 1;
                Cell::Local(p - 1)
            })
        })
        .collect();
    Ok(Pattern {
        a,
        b: b as usize,
        ell: subsets.len(),
        p: p as usize,
        subsets,
        cells,
    })
}

/// Linear coloring of `B_{ad}` cut into `d` stripes of `a` levels, counted
/// from the leaves. Every `B_a` copy in stripe `i` follows the pattern with
/// global colors `(i - 1) b + 1 ..= i b`; local vertices use colors
/// `db + 1 ..= db + p` in odd stripes and `db + p + 1 ..= db + 2p` in even
/// ones. Uses `d b + 2 p` colors.
pub fn striped_btree_coloring(a: usize, d: usize) -> Result<LabeledFamilyInstance> {
    if d == 0 || a.saturating_mul(d) > MAX_BTREE_LEVELS {
        return Err(Error::TooLarge(format!(
            "need d >= 1 and a * d <= {MAX_BTREE_LEVELS}"
        )));
    }
    let pat = psi_pattern(a)?;
    let levels = a * d;
    let graph = gen_complete_binary_tree(levels)?;
    let (b, p) = (pat.b as u32, pat.p as u32);
    let mut colors = Vec::with_capacity(graph.n());
    let mut roles = Vec::with_capacity(graph.n());
    for v in 0..graph.n() {
        let depth = (usize::BITS - 1 - (v + 1).leading_zeros()) as usize;
        let level = levels - depth;
        let stripe = (level - 1) / a + 1;
        let depth_in_copy = stripe * a - level;
        let pos = (v + 1 - (1 << depth)) % (1 << depth_in_copy);
        let cell = pat.cells[(1 << depth_in_copy) - 1 + pos];
        let (color, kind) = match cell {
            Cell::Global(g) => ((stripe as u32 - 1) * b + g, "global"),
            Cell::Local(q) if stripe % 2 == 1 => (d as u32 * b + q + 1, "local"),
            Cell::Local(q) => (d as u32 * b + p + q + 1, "local"),
        };
        colors.push(color);
        roles.push(format!("stripe{stripe}.{kind}"));
    }
    Ok(LabeledFamilyInstance {
        graph,
        coloring: Coloring::new(colors)?,
        metadata: Metadata {
            family: "btree".into(),
            params: params([
                ("a", a as u64),
                ("d", d as u64),
                ("b", b as u64),
                ("p", p as u64),
            ]),
            roles,
        },
    })
}

/// Replaces every edge by a path of length two through a new vertex; new
/// vertices follow the originals in edge order and all get color
/// `max color + 1`.
pub fn subdivide_with_new_color(g: &Graph, c: &Coloring) -> Result<LabeledFamilyInstance> {
    if c.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    let n = g.n();
    let fresh = c.max_color() + 1;
    let mut edges = Vec::with_capacity(2 * g.m());
    let mut colors = c.as_slice().to_vec();
    let mut roles = vec!["original".to_string(); n];
    for (k, (u, v)) in g.edges().enumerate() {
        edges.push((u, n + k));
        edges.push((v, n + k));
        colors.push(fresh);
        roles.push("subdivision".into());
    }
    Ok(LabeledFamilyInstance {
        graph: Graph::from_edges(n + g.m(), edges)?,
        coloring: Coloring::new(colors)?,
        metadata: Metadata {
            family: "subdivision".into(),
            params: params([("fresh_color", fresh as u64)]),
            roles,
        },
    })
}

/// Tree where each vertex `v >= 1` picks a uniform parent among `0..v`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Precondition("random tree needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edges(
        n,
        (1..n).map(|v| (rng.gen_range(0..v), v)).collect::<Vec<_>>(),
    )
}

/// Intervals with left ends uniform in `0..span` and lengths uniform in
/// `0..=max(1, span / 4)`.
pub fn random_interval(n: usize, span: u32, seed: u64) -> Result<(Graph, IntervalRepresentation)> {
    if n == 0 || span == 0 {
        return Err(Error::Precondition(
            "random intervals need n >= 1 and span >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = (span / 4).max(1) as i64;
    let rep = IntervalRepresentation::new(
        (0..n)
            .map(|_| {
                let l = rng.gen_range(0..span as i64);
                (l, l + rng.gen_range(0..=max_len))
            })
            .collect(),
    )?;
    Ok((rep.to_graph(), rep))
}
