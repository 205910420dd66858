//! Treedepth decompositions: validity, canonical conversions to and from
//! centered colorings, exact treedepth, DFS decompositions and apex
//! restructuring.

use std::cmp::Reverse;
use std::collections::HashMap;

use crate::budget::{Budget, Meter};
use crate::colorings::{peel_centers, Coloring, Witness};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Rooted forest over the vertex set, stored as parent links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: Vec<Option<usize>>,
    depth: usize,
    level: Vec<usize>,
}

impl TreedepthDecomposition {
    /// Rejects parent links that are out of range or contain a cycle.
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some(&p) = parent.iter().flatten().find(|&&p| p >= n) {
            return Err(Error::VertexOutOfRange { vertex: p, n });
        }
        // distance from the root, 1-based; 0 = not yet known
        let mut dist = vec![0usize; n];
        let mut on_trail = vec![false; n];
        let mut trail = Vec::new();
        for start in 0..n {
            let mut v = start;
            let mut d = loop {
                if dist[v] != 0 {
                    break dist[v];
                }
                if on_trail[v] {
                    return Err(Error::InvalidDecomposition(format!(
                        "parent links cycle through {v}"
                    )));
                }
                on_trail[v] = true;
                trail.push(v);
                match parent[v] {
                    Some(p) => v = p,
                    None => break 0,
                }
            };
            while let Some(u) = trail.pop() {
                on_trail[u] = false;
                d += 1;
                dist[u] = d;
            }
        }
        let depth = dist.iter().copied().max().unwrap_or(0);
        Ok(TreedepthDecomposition {
            parent,
            depth,
            level: dist,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Number of vertices on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// 1-based distance of `v` from the root of its tree.
    pub fn height_from_root(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| self.parent[v].is_none())
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        if self.level[a] > self.level[v] {
            return false;
        }
        while self.level[v] > self.level[a] {
            v = self.parent[v].expect("non-root has parent");
        }
        a == v
    }

    /// Whether one of `u`, `v` is an ancestor of the other (a vertex counts
    /// as its own ancestor).
    pub fn related(&self, u: usize, v: usize) -> bool {
        self.is_ancestor(u, v) || self.is_ancestor(v, u)
    }

    /// Chain decomposition following `order` (first vertex is the root).
    pub fn chain(n: usize, order: &[usize]) -> Result<Self> {
        let mut parent = vec![None; n];
        for w in order.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        TreedepthDecomposition::new(parent)
    }
}

/// Returns the first graph edge whose endpoints are unrelated, if any.
pub fn check_valid(g: &Graph, t: &TreedepthDecomposition) -> Result<Option<(usize, usize)>> {
    if t.n() != g.n() {
        return Err(Error::InvalidDecomposition(format!(
            "decomposition spans {} vertices, graph has {}",
            t.n(),
            g.n()
        )));
    }
    Ok(g.edges().find(|&(u, v)| !t.related(u, v)))
}

fn require_valid(g: &Graph, t: &TreedepthDecomposition) -> Result<()> {
    match check_valid(g, t)? {
        None => Ok(()),
        Some((u, v)) => Err(Error::InvalidDecomposition(format!(
            "edge ({u}, {v}) joins unrelated vertices"
        ))),
    }
}

/// Colors each vertex by its level counted from the bottom: roots get
/// `depth`, the deepest level gets 1.
pub fn canonical_coloring(g: &Graph, t: &TreedepthDecomposition) -> Result<Coloring> {
    require_valid(g, t)?;
    Coloring::new(
        (0..t.n())
            .map(|v| (t.depth() + 1 - t.height_from_root(v)) as u32)
            .collect(),
    )
}

/// Builds a decomposition by repeatedly rooting each component at a center.
/// Among several centers the largest color goes first, then the smallest id.
pub fn canonical_decomposition(g: &Graph, c: &Coloring) -> Result<TreedepthDecomposition> {
    if c.n() != g.n() {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} vertices, graph has {}",
            c.n(),
            g.n()
        )));
    }
    let colors = c.as_slice();
    let parent = peel_centers(g, colors, &VertexSet::full(g.n()), |v| {
        (Reverse(colors[v]), v)
    })
    .map_err(|w| Error::NotCentered(Witness::Subgraph(w)))?;
    TreedepthDecomposition::new(parent)
}

/// Depth-first search forest, starting from `start` and then from the
/// smallest unvisited vertex of every other component.
pub fn dfs_decomposition(g: &Graph, start: usize) -> Result<TreedepthDecomposition> {
    let n = g.n();
    if n > 0 && start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let starts = std::iter::once(start).chain(0..n).take_while(|_| n > 0);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some((v, idx)) = stack.last_mut() {
            let v = *v;
            match g.neighbors(v).get(*idx) {
                None => {
                    stack.pop();
                }
                Some(&w) => {
                    *idx += 1;
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        stack.push((w, 0));
                    }
                }
            }
        }
    }
    TreedepthDecomposition::new(parent)
}

/// Re-derives `t` so that every vertex of `s` becomes an ancestor of every
/// vertex of `comp`, without increasing depth and keeping the ancestor
/// relation among pairs inside `comp` and among pairs outside `comp`.
///
/// Takes the canonical coloring of `t` and peels centers again, removing
/// centers outside `comp` before those inside, then larger colors first.
pub fn apex_restructure(
    g: &Graph,
    t: &TreedepthDecomposition,
    s: &VertexSet,
    comp: &VertexSet,
) -> Result<TreedepthDecomposition> {
    require_valid(g, t)?;
    if s.is_empty() || comp.is_empty() {
        return Err(Error::Precondition("S and C must be nonempty".into()));
    }
    if !s.is_disjoint(comp) {
        return Err(Error::Precondition("S and C overlap".into()));
    }
    if g.components_within(s).len() != 1 {
        return Err(Error::Precondition("G[S] is not connected".into()));
    }
    // C may be any union of components of G - S
    if !g.neighborhood(comp)?.is_subset(s) {
        return Err(Error::Precondition("C has neighbors outside S".into()));
    }
    for a in s.iter() {
        if !g.is_apex(a, comp)? {
            return Err(Error::Precondition(format!(
                "vertex {a} of S is not an apex of C"
            )));
        }
    }
    let phi = canonical_coloring(g, t)?;
    let colors = phi.as_slice();
    let parent = peel_centers(g, colors, &VertexSet::full(g.n()), |v| {
        (comp.contains(v), Reverse(colors[v]), v)
    })
    .map_err(|w| Error::NotCentered(Witness::Subgraph(w)))?;
    TreedepthDecomposition::new(parent)
}

/// Exact treedepth by branching over the root of each connected vertex set,
/// with memoization on vertex sets and pruning by lower bounds.
///
/// Limited to graphs with at most 128 vertices.
pub fn treedepth_exact(g: &Graph, budget: &Budget) -> Result<(usize, TreedepthDecomposition)> {
    let n = g.n();
    if n > 128 {
        return Err(Error::TooLarge(format!(
            "exact treedepth supports at most 128 vertices, got {n}"
        )));
    }
    let mut solver = ExactSolver::new(g, budget.meter());
    let mut parent = vec![None; n];
    let mut depth = 0;
    for comp in solver.components(solver.full()) {
        let d = solver
            .solve(comp, comp.count_ones())?
            .expect("a connected set always fits within its own size");
        depth = depth.max(d as usize);
        solver.rebuild(comp, None, &mut parent);
    }
    Ok((depth, TreedepthDecomposition::new(parent)?))
}

type Mask = u128;

#[derive(Debug, Clone, Copy, Default)]
struct Entry {
    lower: u32,
    exact: Option<(u32, usize)>,
}

struct ExactSolver<'a> {
    g: &'a Graph,
    nbr: Vec<Mask>,
    memo: HashMap<Mask, Entry>,
    meter: Meter,
}

#[inline]
fn bit(v: usize) -> Mask {
    1 << v
}

fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// ceil(log2(k + 1)): colors needed on a path with k vertices.
fn path_bound(k: u32) -> u32 {
    u32::BITS - k.leading_zeros()
}

impl<'a> ExactSolver<'a> {
    fn new(g: &'a Graph, meter: Meter) -> Self {
        let nbr = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
            .collect();
        ExactSolver {
            g,
            nbr,
            memo: HashMap::new(),
            meter,
        }
    }

    fn full(&self) -> Mask {
        if self.g.n() == 128 {
            Mask::MAX
        } else {
            bit(self.g.n()) - 1
        }
    }

    fn components(&self, s: Mask) -> Vec<Mask> {
        let mut rest = s;
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = bit(rest.trailing_zeros() as usize);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in members(frontier) {
                    next |= self.nbr[v];
                }
                next &= s & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// Farthest vertex from `from` inside `s` and its distance in edges.
    fn farthest(&self, s: Mask, from: usize) -> (usize, u32) {
        let mut seen = bit(from);
        let mut frontier = bit(from);
        let mut last = from;
        let mut dist = 0;
        loop {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.nbr[v];
            }
            next &= s & !seen;
            if next == 0 {
                return (last, dist);
            }
            seen |= next;
            frontier = next;
            last = next.trailing_zeros() as usize;
            dist += 1;
        }
    }

    fn degeneracy(&self, s: Mask) -> u32 {
        let mut rest = s;
        let mut best = 0;
        while rest != 0 {
            let v = members(rest)
                .min_by_key(|&v| (self.nbr[v] & rest).count_ones())
                .unwrap();
            best = best.max((self.nbr[v] & rest).count_ones());
            rest &= !bit(v);
        }
        best
    }

    fn lower_bound(&self, s: Mask) -> u32 {
        let (x, _) = self.farthest(s, s.trailing_zeros() as usize);
        let (_, d) = self.farthest(s, x);
        path_bound(d + 1).max(self.degeneracy(s) + 1)
    }

    fn is_clique(&self, s: Mask) -> bool {
        members(s).all(|v| self.nbr[v] & s == s & !bit(v))
    }

    /// Treedepth of the connected set `s` if it is at most `limit`.
    fn solve(&mut self, s: Mask, limit: u32) -> Result<Option<u32>> {
        self.meter.tick()?;
        let size = s.count_ones();
        if size <= 2 || self.is_clique(s) {
            return Ok((size <= limit).then_some(size));
        }
        let entry = self.memo.get(&s).copied().unwrap_or_default();
        if let Some((d, _)) = entry.exact {
            return Ok((d <= limit).then_some(d));
        }
        let lower = entry.lower.max(self.lower_bound(s));
        if lower > limit {
            self.memo.insert(s, Entry { lower, exact: None });
            return Ok(None);
        }
        // A leaf is never a better root than its neighbor once |s| >= 3.
        let mut roots: Vec<usize> = members(s)
            .filter(|&v| (self.nbr[v] & s).count_ones() >= 2)
            .collect();
        roots.sort_by_key(|&v| (Reverse((self.nbr[v] & s).count_ones()), v));

        let mut best: Option<(u32, usize)> = None;
        let mut cap = limit;
        for v in roots {
            let mut comps = self.components(s & !bit(v));
            comps.sort_by_key(|c| Reverse(c.count_ones()));
            let mut worst = 0;
            let mut fits = true;
            for comp in comps {
                match self.solve(comp, cap - 1)? {
                    Some(d) => worst = worst.max(d),
                    None => {
                        fits = false;
                        break;
                    }
                }
            }
            if fits {
                let d = worst + 1;
                best = Some((d, v));
                if d <= lower {
                    break;
                }
                cap = d - 1;
            }
        }
        match best {
            Some((d, v)) => {
                self.memo.insert(
                    s,
                    Entry {
                        lower: d,
                        exact: Some((d, v)),
                    },
                );
                Ok(Some(d))
            }
            None => {
                self.memo.insert(
                    s,
                    Entry {
                        lower: limit + 1,
                        exact: None,
                    },
                );
                Ok(None)
            }
        }
    }

    fn rebuild(&self, s: Mask, above: Option<usize>, parent: &mut [Option<usize>]) {
        if s.count_ones() <= 2 || self.is_clique(s) {
            let mut prev = above;
            for v in members(s) {
                parent[v] = prev;
                prev = Some(v);
            }
            return;
        }
        let (_, root) = self.memo[&s].exact.expect("solved set has an exact entry");
        parent[root] = above;
        for comp in self.components(s & !bit(root)) {
            self.rebuild(comp, Some(root), parent);
        }
    }
}
