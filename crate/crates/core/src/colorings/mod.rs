//! Colorings, centered/linear verification and exact coloring numbers.

mod linear;
mod oracle;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSet};

pub use linear::{find_noncentered_path, verify_linear, PathSearch};
pub use oracle::{chi_cen_exact, chi_lin_exact};

/// Total map from vertices to positive colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::InvalidColoring(format!(
                "vertex {v} has color 0; colors start at 1"
            )));
        }
        Ok(Coloring { colors })
    }

    pub fn for_graph(g: &Graph, colors: Vec<u32>) -> Result<Self> {
        if colors.len() != g.n() {
            return Err(Error::InvalidColoring(format!(
                "coloring covers {} vertices, graph has {}",
                colors.len(),
                g.n()
            )));
        }
        Coloring::new(colors)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct colors used.
    pub fn size(&self) -> usize {
        let mut seen = vec![false; self.max_color() as usize + 1];
        self.colors
            .iter()
            .filter(|&&c| !std::mem::replace(&mut seen[c as usize], true))
            .count()
    }

    /// Restriction to the vertices listed in `remap` (new id -> old id).
    pub fn restrict(&self, remap: &[usize]) -> Coloring {
        Coloring {
            colors: remap.iter().map(|&v| self.colors[v]).collect(),
        }
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.colors
    }
}

/// Evidence that a coloring is not centered (a connected vertex set with no
/// uniquely occurring color) or not linear (a path with no center).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "lowercase")]
pub enum Witness {
    Subgraph(Vec<usize>),
    Path(Vec<usize>),
}

impl Witness {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Witness::Subgraph(v) | Witness::Path(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violated(Witness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Ok => None,
            Verdict::Violated(w) => Some(w),
        }
    }
}

fn check_total(g: &Graph, c: &Coloring) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Repeatedly removes a center from every remaining component. Returns the
/// parent of each vertex in the resulting forest, or the vertex set of the
/// first component found without a center. Among several centers the one
/// with the smallest `key` goes first.
pub(crate) fn peel_centers<K, F>(
    g: &Graph,
    colors: &[u32],
    within: &VertexSet,
    key: F,
) -> std::result::Result<Vec<Option<usize>>, Vec<usize>>
where
    K: Ord,
    F: Fn(usize) -> K,
{
    let palette = colors.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut parent = vec![None; g.n()];
    let mut counts = vec![0u32; palette];
    let mut stack: Vec<(VertexSet, Option<usize>)> = g
        .components_within(within)
        .into_iter()
        .rev()
        .map(|c| (c, None))
        .collect();
    while let Some((comp, above)) = stack.pop() {
        for v in comp.iter() {
            counts[colors[v] as usize] += 1;
        }
        let center = comp
            .iter()
            .filter(|&v| counts[colors[v] as usize] == 1)
            .min_by_key(|&v| key(v));
        for v in comp.iter() {
            counts[colors[v] as usize] = 0;
        }
        let Some(center) = center else {
            return Err(comp.to_vec());
        };
        parent[center] = above;
        let mut rest = comp;
        rest.remove(center);
        for sub in g.components_within(&rest).into_iter().rev() {
            stack.push((sub, Some(center)));
        }
    }
    Ok(parent)
}

/// Checks that every connected subgraph has a center by peeling centers off
/// component by component; a component with no center is the witness.
pub fn verify_centered(g: &Graph, c: &Coloring) -> Result<Verdict> {
    check_total(g, c)?;
    let colors = c.as_slice();
    Ok(
        match peel_centers(g, colors, &VertexSet::full(g.n()), |v| (colors[v], v)) {
            Ok(_) => Verdict::Ok,
            Err(comp) => Verdict::Violated(Witness::Subgraph(comp)),
        },
    )
}

/// A path is a non-centered certificate iff every color on it occurs at
/// least twice.
pub fn check_certificate(p: &Path, c: &Coloring) -> bool {
    certificate_holds(p.vertices(), c.as_slice())
}

pub(crate) fn certificate_holds(vertices: &[usize], colors: &[u32]) -> bool {
    let mut seen: Vec<(u32, u32)> = Vec::new();
    for &v in vertices {
        match seen.iter_mut().find(|(c, _)| *c == colors[v]) {
            Some(entry) => entry.1 += 1,
            None => seen.push((colors[v], 1)),
        }
    }
    !seen.is_empty() && seen.iter().all(|&(_, k)| k >= 2)
}
