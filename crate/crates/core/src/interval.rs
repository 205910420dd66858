//! Interval graphs: ordered maximal cliques, prevailing paths and subgraphs,
//! and the recoloring of a linear coloring into a centered one of size at
//! most `k^2`.
//!
//! Clique indices are 0-based throughout.

use std::cmp::Reverse;

use serde::Serialize;

use crate::colorings::{certificate_holds, peel_centers, Coloring, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexSet};
use crate::treedepth::{canonical_coloring, TreedepthDecomposition};

/// Closed integer intervals, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<(i64, i64)>,
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        if let Some(v) = intervals.iter().position(|&(l, r)| l > r) {
            return Err(Error::Precondition(format!(
                "interval {v} has left end after right end"
            )));
        }
        Ok(IntervalRepresentation { intervals })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, v: usize) -> (i64, i64) {
        self.intervals[v]
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    /// Intersection graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by_key(|&v| (self.intervals[v].0, v));
        let mut edges = Vec::new();
        for (i, &u) in by_left.iter().enumerate() {
            for &v in &by_left[i + 1..] {
                if self.intervals[v].0 > self.intervals[u].1 {
                    break;
                }
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).expect("intervals give a simple graph")
    }
}

/// Maximal cliques `C_0, .., C_{m-1}` ordered so that the cliques containing
/// any vertex are consecutive, with first and last clique index per vertex.
/// Vertices outside the represented set have `first = last = usize::MAX`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOrdering {
    pub cliques: Vec<VertexSet>,
    pub first: Vec<usize>,
    pub last: Vec<usize>,
}

impl CliqueOrdering {
    pub fn m(&self) -> usize {
        self.cliques.len()
    }
}

/// Orders the maximal cliques of the whole representation.
pub fn clique_ordering(rep: &IntervalRepresentation) -> CliqueOrdering {
    clique_ordering_within(rep, &VertexSet::full(rep.n()))
}

/// Orders the maximal cliques of the sub-representation on `within`.
///
/// The active set at each distinct left endpoint is a candidate; it is a
/// maximal clique unless it is contained in the next candidate, which
/// happens exactly when none of its intervals ends before the next left
/// endpoint.
pub fn clique_ordering_within(rep: &IntervalRepresentation, within: &VertexSet) -> CliqueOrdering {
    let n = rep.n();
    let mut lefts: Vec<i64> = within.iter().map(|v| rep.intervals[v].0).collect();
    lefts.sort_unstable();
    lefts.dedup();
    let mut cliques = Vec::new();
    for (k, &x) in lefts.iter().enumerate() {
        let active: Vec<usize> = within
            .iter()
            .filter(|&v| {
                let (l, r) = rep.intervals[v];
                l <= x && x <= r
            })
            .collect();
        let dominated = lefts
            .get(k + 1)
            .is_some_and(|&next| active.iter().all(|&v| rep.intervals[v].1 >= next));
        if !dominated {
            cliques.push(VertexSet::from_vertices(n, active).expect("vertices in range"));
        }
    }
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    for (i, c) in cliques.iter().enumerate() {
        for v in c.iter() {
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    CliqueOrdering {
        cliques,
        first,
        last,
    }
}

/// A component of `G - Q` together with the index on the prevailing path of
/// a vertex adjacent to all of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub vertices: Vec<usize>,
    pub apex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrevailingStructure {
    pub path: Vec<usize>,
    pub subgraph: VertexSet,
    /// Indices into `cliques` of the selected cliques `C_{F(v_j)}`.
    pub selected: Vec<usize>,
    pub gaps: Vec<Gap>,
}

/// Prevailing path and subgraph of a connected interval graph: starting at
/// the first clique, repeatedly pick the vertex of the current clique that
/// is forgotten last (smallest id on ties) and jump to its last clique.
pub fn prevailing(g: &Graph, ord: &CliqueOrdering) -> Result<PrevailingStructure> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    prevailing_within(g, ord, &VertexSet::full(g.n()))
}

fn argmax_last(ord: &CliqueOrdering, clique: &VertexSet) -> usize {
    clique
        .iter()
        .max_by_key(|&u| (ord.last[u], Reverse(u)))
        .expect("cliques are nonempty")
}

fn prevailing_within(
    g: &Graph,
    ord: &CliqueOrdering,
    within: &VertexSet,
) -> Result<PrevailingStructure> {
    let n = g.n();
    let m = ord.m();
    let mut path = Vec::new();
    let mut selected = Vec::new();
    let mut q = VertexSet::new(n);
    if m == 0 {
        return Ok(PrevailingStructure {
            path,
            subgraph: q,
            selected,
            gaps: Vec::new(),
        });
    }
    if m == 1 {
        path.push(argmax_last(ord, &ord.cliques[0]));
        selected.push(0);
        q.union_with(&ord.cliques[0]);
    }
    let mut i = 0;
    while i + 1 < m {
        let v = argmax_last(ord, &ord.cliques[i]);
        let next = ord.last[v];
        if next == i {
            // no progress: absorb the clique and stop
            q.union_with(&ord.cliques[i]);
            break;
        }
        path.push(v);
        selected.push(next);
        q.union_with(&ord.cliques[next]);
        i = next;
    }
    let mut gaps = Vec::new();
    let mut lo = 0;
    for (j, &hi) in selected.iter().enumerate() {
        let mut span = VertexSet::new(n);
        for c in &ord.cliques[lo..hi] {
            span.union_with(c);
        }
        let span = span.difference(&q);
        for comp in g.components_within(&span) {
            debug_assert!(comp.is_subset(within));
            gaps.push(Gap {
                vertices: comp.to_vec(),
                apex: j,
            });
        }
        lo = hi + 1;
    }
    Ok(PrevailingStructure {
        path,
        subgraph: q,
        selected,
        gaps,
    })
}

/// Spanning path of the prevailing subgraph: `v_1, M_1, v_2, M_2, ..`, where
/// `M_j` holds the non-path vertices first seen in `C_{F(v_j)}`, ordered by
/// last clique and then id.
pub fn hamiltonian_path(ps: &PrevailingStructure, g: &Graph, ord: &CliqueOrdering) -> Result<Path> {
    Path::new(g, hamiltonian_order(ps, ord))
}

fn hamiltonian_order(ps: &PrevailingStructure, ord: &CliqueOrdering) -> Vec<usize> {
    let n = ps.subgraph.universe();
    let mut placed = VertexSet::new(n);
    for &v in &ps.path {
        placed.insert(v);
    }
    let mut order = Vec::with_capacity(ps.subgraph.len());
    for (j, &v) in ps.path.iter().enumerate() {
        order.push(v);
        let mut block: Vec<usize> = ps.selected.get(j).map_or(Vec::new(), |&c| {
            ord.cliques[c]
                .iter()
                .filter(|&u| !placed.contains(u))
                .collect()
        });
        block.sort_by_key(|&u| (ord.last[u], u));
        for &u in &block {
            placed.insert(u);
        }
        order.extend(block);
    }
    order
}

/// Result of recoloring a linear coloring of an interval graph.
#[derive(Debug, Clone)]
pub struct IntervalDecomposition {
    pub decomposition: TreedepthDecomposition,
    pub coloring: Coloring,
    /// Size of the input coloring.
    pub k: usize,
    pub depth: usize,
    /// `k * k`.
    pub bound: usize,
    /// Some gap component could not be hung below a chain of its
    /// neighbours, and the clique-separator recursion was used instead.
    pub fallback_used: bool,
}

/// Turns a linear coloring `psi` of the interval graph `g` (given with its
/// representation `rep`) into a treedepth decomposition, decomposing each
/// prevailing subgraph by its centers and recursing into the gaps.
///
/// Each gap is attached below the deepest of its neighbours when those
/// neighbours form a chain in the decomposition built so far. When they do
/// not, the component is split at its middle selected clique instead, which
/// is always valid but carries no depth guarantee.
pub fn centered_from_linear(
    g: &Graph,
    rep: &IntervalRepresentation,
    psi: &Coloring,
) -> Result<IntervalDecomposition> {
    if rep.n() != g.n() || *g != rep.to_graph() {
        return Err(Error::Precondition(
            "graph is not the intersection graph of the intervals".into(),
        ));
    }
    if psi.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            psi.n(),
            g.n()
        )));
    }
    let mut solver = Recolor {
        g,
        rep,
        colors: psi.as_slice(),
        parent: vec![None; g.n()],
        fallback_used: false,
    };
    for comp in g.connected_components() {
        solver.solve(&comp)?;
    }
    let t = TreedepthDecomposition::new(solver.parent)?;
    let coloring = canonical_coloring(g, &t)?;
    let k = psi.size();
    Ok(IntervalDecomposition {
        depth: t.depth(),
        decomposition: t,
        coloring,
        k,
        bound: k * k,
        fallback_used: solver.fallback_used,
    })
}

struct Recolor<'a> {
    g: &'a Graph,
    rep: &'a IntervalRepresentation,
    colors: &'a [u32],
    parent: Vec<Option<usize>>,
    fallback_used: bool,
}

impl Recolor<'_> {
    fn depth_of(&self, mut v: usize) -> usize {
        let mut d = 1;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Deepest vertex of `set` if the set is a chain of ancestors.
    fn chain_bottom(&self, set: &[usize]) -> Option<usize> {
        let mut by_depth: Vec<(usize, usize)> =
            set.iter().map(|&v| (self.depth_of(v), v)).collect();
        by_depth.sort_unstable();
        by_depth
            .windows(2)
            .all(|w| self.is_ancestor(w[0].1, w[1].1))
            .then(|| by_depth.last().map(|&(_, v)| v))?
    }

    /// Decomposes the connected set `w`, leaving its roots with no parent.
    fn solve(&mut self, w: &VertexSet) -> Result<()> {
        if w.len() == 1 {
            return Ok(());
        }
        let ord = clique_ordering_within(self.rep, w);
        let ps = prevailing_within(self.g, &ord, w)?;
        let colors = self.colors;
        let q_parent = peel_centers(self.g, colors, &ps.subgraph, |v| (Reverse(colors[v]), v))
            .map_err(|bad| self.not_linear(&ps, &ord, bad))?;
        for v in ps.subgraph.iter() {
            self.parent[v] = q_parent[v];
        }
        let mut pending = Vec::new();
        for gap in &ps.gaps {
            let x = VertexSet::from_vertices(self.g.n(), gap.vertices.iter().copied())?;
            let nbrs = self.g.neighborhood(&x)?.to_vec();
            match self.chain_bottom(&nbrs) {
                Some(bottom) => pending.push((x, bottom)),
                None => return self.split(w, &ord, &ps),
            }
        }
        for (x, bottom) in pending {
            self.solve(&x)?;
            for v in x.iter() {
                if self.parent[v].is_none() {
                    self.parent[v] = Some(bottom);
                }
            }
        }
        Ok(())
    }

    /// Chains the middle selected clique and recurses on what is left.
    fn split(
        &mut self,
        w: &VertexSet,
        ord: &CliqueOrdering,
        ps: &PrevailingStructure,
    ) -> Result<()> {
        self.fallback_used = true;
        for v in w.iter() {
            self.parent[v] = None;
        }
        let sep = &ord.cliques[ps.selected[ps.selected.len() / 2]];
        let chain = sep.to_vec();
        for pair in chain.windows(2) {
            self.parent[pair[1]] = Some(pair[0]);
        }
        let bottom = *chain.last().expect("cliques are nonempty");
        for comp in self.g.components_within(&w.difference(sep)) {
            self.solve(&comp)?;
            for v in comp.iter() {
                if self.parent[v].is_none() {
                    self.parent[v] = Some(bottom);
                }
            }
        }
        Ok(())
    }

    /// A connected subset of `Q` without a center. Its vertices, taken in
    /// the spanning-path order of `Q`, normally form a path with no center.
    fn not_linear(&self, ps: &PrevailingStructure, ord: &CliqueOrdering, bad: Vec<usize>) -> Error {
        let keep =
            VertexSet::from_vertices(self.g.n(), bad.iter().copied()).expect("vertices in range");
        let order: Vec<usize> = hamiltonian_order(ps, ord)
            .into_iter()
            .filter(|&v| keep.contains(v))
            .collect();
        if Path::new(self.g, order.clone()).is_ok() && certificate_holds(&order, self.colors) {
            Error::NotLinear(Witness::Path(order))
        } else {
            Error::NotLinear(Witness::Subgraph(bad))
        }
    }
}
