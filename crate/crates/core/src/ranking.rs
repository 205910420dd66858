//! Optimal vertex ranking of trees by bottom-up rank-list merging, plus the
//! color-set potentials that compare it against linear colorings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colorings::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Strictly increasing list of ranks visible from above a subtree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct RankList(Vec<u32>);

impl RankList {
    pub fn new(mut ranks: Vec<u32>) -> Self {
        ranks.sort_unstable();
        ranks.dedup();
        RankList(ranks)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, r: u32) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }
}

/// Rank of a vertex from its children's rank lists, and its own list.
///
/// `x` is the largest rank on at least two child lists (0 if none); the
/// vertex takes the smallest rank above `x` that no child list contains, and
/// keeps every child rank above its own.
pub fn merge_rank_lists(children: &[RankList]) -> (u32, RankList) {
    let (rank, list, _) = merge_with_critical(children);
    (rank, list)
}

fn merge_with_critical(children: &[RankList]) -> (u32, RankList, u32) {
    let mut all: Vec<u32> = children.iter().flat_map(|l| l.0.iter().copied()).collect();
    all.sort_unstable();
    let critical = all
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .max()
        .unwrap_or(0);
    all.dedup();
    let mut rank = critical + 1;
    while all.binary_search(&rank).is_ok() {
        rank += 1;
    }
    let mut list = vec![rank];
    list.extend(all.into_iter().filter(|&q| q > rank));
    (rank, RankList(list), critical)
}

/// A tree with a chosen root: parents and a top-down vertex order.
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Vertices in BFS order from the root.
    pub order: Vec<usize>,
}

impl RootedTree {
    /// Roots `tree` at `root`, or at its smallest-id leaf when `None`.
    pub fn new(tree: &Graph, root: Option<usize>) -> Result<Self> {
        if !tree.is_tree() {
            return Err(Error::NotATree);
        }
        let n = tree.n();
        let root = match root {
            Some(r) if r >= n => return Err(Error::VertexOutOfRange { vertex: r, n }),
            Some(r) => r,
            None => (0..n)
                .find(|&v| tree.degree(v) <= 1)
                .expect("trees have leaves"),
        };
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in tree.neighbors(v) {
                if Some(w) != parent[v] {
                    parent[w] = Some(v);
                    children[v].push(w);
                    order.push(w);
                }
            }
            i += 1;
        }
        Ok(RootedTree {
            root,
            parent,
            children,
            order,
        })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }
}

/// Per-vertex ranks with the rank list of every rooted subtree.
#[derive(Debug, Clone, Serialize)]
pub struct Ranking {
    pub root: usize,
    pub rank: Vec<u32>,
    pub lists: Vec<RankList>,
}

impl Ranking {
    /// Number of ranks used, i.e. the largest rank.
    pub fn size(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.rank.clone()).expect("ranks are positive")
    }
}

/// One bottom-up merge, recorded for tracing.
#[derive(Debug, Clone, Serialize)]
pub struct MergeStep {
    pub vertex: usize,
    pub children: Vec<RankList>,
    pub critical: u32,
    pub rank: u32,
    pub list: RankList,
}

/// Ranks every vertex of `tree`, leaves first. The largest rank equals the
/// treedepth of the tree.
pub fn schaffer_rank(tree: &Graph, root: Option<usize>) -> Result<Ranking> {
    Ok(schaffer_rank_traced(tree, root)?.0)
}

pub fn schaffer_rank_traced(
    tree: &Graph,
    root: Option<usize>,
) -> Result<(Ranking, Vec<MergeStep>)> {
    let rooted = RootedTree::new(tree, root)?;
    let n = rooted.n();
    let mut rank = vec![0u32; n];
    let mut lists = vec![RankList::default(); n];
    let mut steps = Vec::with_capacity(n);
    for &v in rooted.order.iter().rev() {
        let kids: Vec<RankList> = rooted.children[v]
            .iter()
            .map(|&u| lists[u].clone())
            .collect();
        let (r, list, critical) = merge_with_critical(&kids);
        rank[v] = r;
        lists[v] = list.clone();
        steps.push(MergeStep {
            vertex: v,
            children: kids,
            critical,
            rank: r,
            list,
        });
    }
    Ok((
        Ranking {
            root: rooted.root,
            rank,
            lists,
        },
        steps,
    ))
}

/// Potential of a rank list: the sum of `2^r` over its ranks.
pub fn zeta(list: &RankList) -> u128 {
    list.0.iter().map(|&r| 1u128 << r).sum()
}

/// For every vertex, a family of color sets over a palette of at most 64
/// colors, each set stored as a bitmask (bit `c - 1` for color `c`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSetFamily {
    sets: Vec<BTreeSet<u64>>,
}

impl ColorSetFamily {
    pub fn of(&self, v: usize) -> &BTreeSet<u64> {
        &self.sets[v]
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    /// Family of `v` as sorted color lists.
    pub fn as_color_lists(&self, v: usize) -> Vec<Vec<u32>> {
        self.sets[v].iter().map(|&m| mask_colors(m)).collect()
    }
}

pub fn mask_colors(mut m: u64) -> Vec<u32> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}

/// Color-set families built bottom-up: a leaf gets `{{psi(v)}}`; an inner
/// vertex maps every set of its children's union through
/// `X -> X - {c}` when `c` is in `X` and `X - {c}` is in the union, else
/// `X -> X + {c}` (with `c = psi(v)`), and adds `{c}`.
pub fn compatible_sets(tree: &Graph, root: usize, psi: &Coloring) -> Result<ColorSetFamily> {
    let rooted = RootedTree::new(tree, Some(root))?;
    if psi.n() != tree.n() {
        return Err(Error::InvalidColoring(
            "coloring does not cover the tree".into(),
        ));
    }
    if psi.max_color() > 64 {
        return Err(Error::TooLarge(
            "color-set families support at most 64 colors".into(),
        ));
    }
    let mut sets = vec![BTreeSet::new(); tree.n()];
    for &v in rooted.order.iter().rev() {
        let c = 1u64 << (psi.color(v) - 1);
        let merged: BTreeSet<u64> = rooted.children[v]
            .iter()
            .flat_map(|&u| sets[u].iter().copied())
            .collect();
        let mut own: BTreeSet<u64> = merged
            .iter()
            .map(|&x| {
                if x & c != 0 && merged.contains(&(x & !c)) {
                    x & !c
                } else {
                    x | c
                }
            })
            .collect();
        own.insert(c);
        sets[v] = own;
    }
    Ok(ColorSetFamily { sets })
}

/// Per-vertex potential: the sum of `(delta - 1)^|X|` over the family.
pub fn rho(family: &ColorSetFamily, delta: usize) -> Result<Vec<u128>> {
    if delta < 3 {
        return Err(Error::Precondition(format!(
            "maximum degree must be at least 3, got {delta}"
        )));
    }
    let base = (delta - 1) as u128;
    Ok(family
        .sets
        .iter()
        .map(|s| s.iter().map(|x| base.pow(x.count_ones())).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rl(v: &[u32]) -> RankList {
        RankList::new(v.to_vec())
    }

    #[test]
    fn merge_examples() {
        assert_eq!(merge_rank_lists(&[]), (1, rl(&[1])));
        assert_eq!(merge_rank_lists(&[rl(&[1]), rl(&[1])]), (2, rl(&[2])));
        assert_eq!(merge_rank_lists(&[rl(&[1, 2])]), (3, rl(&[3])));
        // rank slots in below a higher surviving rank
        assert_eq!(merge_rank_lists(&[rl(&[1, 4]), rl(&[1])]), (2, rl(&[2, 4])));
    }

    #[test]
    fn rank_examples() {
        let r = schaffer_rank(&Graph::empty(1), None).unwrap();
        assert_eq!(r.rank, vec![1]);

        let r = schaffer_rank(&Graph::path(7), Some(0)).unwrap();
        assert_eq!(r.size(), 3);
        assert_eq!(r.lists[0], rl(&[1, 2, 3]));

        let r = schaffer_rank(&Graph::star(4), Some(0)).unwrap();
        assert_eq!(r.rank, vec![2, 1, 1, 1, 1]);

        assert_eq!(
            schaffer_rank(&Graph::cycle(4), None).unwrap_err(),
            Error::NotATree
        );
        assert_eq!(
            schaffer_rank(&Graph::empty(2), None).unwrap_err(),
            Error::NotATree
        );
    }

    #[test]
    fn default_root_is_smallest_leaf() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        assert_eq!(schaffer_rank(&g, None).unwrap().root, 1);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(&rl(&[1])), 2);
        assert_eq!(zeta(&rl(&[1, 2, 3])), 14);
        assert_eq!(zeta(&rl(&[3])), 8);
    }

    #[test]
    fn compatible_set_examples() {
        let leaf = Graph::empty(1);
        let f = compatible_sets(&leaf, 0, &Coloring::new(vec![3]).unwrap()).unwrap();
        assert_eq!(f.as_color_lists(0), vec![vec![3]]);

        let p2 = Graph::path(2);
        let f = compatible_sets(&p2, 0, &Coloring::new(vec![2, 1]).unwrap()).unwrap();
        let mut got = f.as_color_lists(0);
        got.sort();
        assert_eq!(got, vec![vec![1, 2], vec![2]]);

        let f = compatible_sets(&p2, 0, &Coloring::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(f.as_color_lists(0), vec![vec![1]]);
    }

    #[test]
    fn rho_examples() {
        let leaf = compatible_sets(&Graph::empty(1), 0, &Coloring::new(vec![1]).unwrap()).unwrap();
        assert_eq!(rho(&leaf, 3).unwrap(), vec![2]);
        assert_eq!(rho(&leaf, 4).unwrap(), vec![3]);
        let p2 = compatible_sets(&Graph::path(2), 0, &Coloring::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(rho(&p2, 3).unwrap()[0], 4 + 2);
        assert!(rho(&leaf, 2).is_err());
    }
}
