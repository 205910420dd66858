//! Exhaustive search for non-centered paths.
//!
//! Deciding whether a coloring is linear is co-NP-complete, so this is a
//! depth-first enumeration of simple paths with an explicit budget. Two
//! pruning regimes apply:
//!
//! * forests have one path per vertex pair, so the walk from every start
//!   vertex is already `O(n)` and the whole check is `O(n^2)`;
//! * other graphs with at most 128 vertices memoize `(endpoint, vertex set)`
//!   states. The color multiset of a path is a function of its vertex set,
//!   so a state that was expanded once can never lead anywhere new.

use std::collections::HashSet;

use super::{check_total, Coloring, Verdict, Witness};
use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::Graph;

const MEMO_LIMIT: usize = 128;

/// Outcome of a non-centered path search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSearch {
    pub path: Option<Vec<usize>>,
    pub nodes: u64,
    pub forest_route: bool,
}

pub(crate) struct PathWalker<'a> {
    g: &'a Graph,
    colors: &'a [u32],
    counts: Vec<u32>,
    uniques: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    mask: u128,
    memo: Option<HashSet<(u32, u128)>>,
}

impl<'a> PathWalker<'a> {
    pub(crate) fn new(g: &'a Graph, colors: &'a [u32], use_memo: bool) -> Self {
        let palette = colors.iter().copied().max().unwrap_or(0) as usize + 1;
        PathWalker {
            g,
            colors,
            counts: vec![0; palette],
            uniques: 0,
            on_path: vec![false; g.n()],
            path: Vec::new(),
            mask: 0,
            memo: (use_memo && g.n() <= MEMO_LIMIT).then(HashSet::new),
        }
    }

    fn push(&mut self, v: usize) {
        let c = self.colors[v] as usize;
        self.counts[c] += 1;
        match self.counts[c] {
            1 => self.uniques += 1,
            2 => self.uniques -= 1,
            _ => {}
        }
        self.on_path[v] = true;
        self.path.push(v);
        if self.memo.is_some() {
            self.mask |= 1u128 << v;
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("pop on empty path");
        let c = self.colors[v] as usize;
        self.counts[c] -= 1;
        match self.counts[c] {
            0 => self.uniques -= 1,
            1 => self.uniques += 1,
            _ => {}
        }
        self.on_path[v] = false;
        if self.memo.is_some() {
            self.mask &= !(1u128 << v);
        }
    }

    fn clear(&mut self) {
        while !self.path.is_empty() {
            self.pop();
        }
    }

    /// Explores every simple path starting at `start` inside `allowed`,
    /// returning the first one with no center.
    pub(crate) fn search_from<F>(
        &mut self,
        start: usize,
        allowed: F,
        meter: &mut Meter,
    ) -> Result<Option<Vec<usize>>>
    where
        F: Fn(usize) -> bool,
    {
        let mut cursor: Vec<usize> = vec![0];
        self.push(start);
        if let Some(memo) = self.memo.as_mut() {
            memo.insert((start as u32, self.mask));
        }
        while let Some(idx) = cursor.last_mut() {
            let top = *self.path.last().unwrap();
            let nbrs = self.g.neighbors(top);
            if *idx >= nbrs.len() {
                cursor.pop();
                self.pop();
                continue;
            }
            let w = nbrs[*idx];
            *idx += 1;
            if self.on_path[w] || !allowed(w) {
                continue;
            }
            if let Err(e) = meter.tick() {
                self.clear();
                return Err(e);
            }
            self.push(w);
            if self.uniques == 0 {
                let found = self.path.clone();
                self.clear();
                return Ok(Some(found));
            }
            if let Some(memo) = self.memo.as_mut() {
                if !memo.insert((w as u32, self.mask)) {
                    self.pop();
                    continue;
                }
            }
            cursor.push(0);
        }
        Ok(None)
    }
}

/// Searches for a simple path on which every color occurs at least twice.
/// Start vertices are tried in ascending order and neighbors in adjacency
/// order, so the returned path is deterministic.
pub fn find_noncentered_path(g: &Graph, c: &Coloring, budget: &Budget) -> Result<PathSearch> {
    check_total(g, c)?;
    let forest = g.is_forest();
    let mut meter = budget.meter();
    let mut walker = PathWalker::new(g, c.as_slice(), !forest);
    for s in 0..g.n() {
        if let Some(path) = walker.search_from(s, |_| true, &mut meter)? {
            return Ok(PathSearch {
                path: Some(path),
                nodes: meter.used(),
                forest_route: forest,
            });
        }
    }
    Ok(PathSearch {
        path: None,
        nodes: meter.used(),
        forest_route: forest,
    })
}

/// Linear iff no simple path (induced or not) lacks a center. Running out
/// of budget is reported as [`crate::Error::BudgetExceeded`], never as `Ok`.
pub fn verify_linear(g: &Graph, c: &Coloring, budget: &Budget) -> Result<Verdict> {
    Ok(match find_noncentered_path(g, c, budget)?.path {
        None => Verdict::Ok,
        Some(p) => Verdict::Violated(Witness::Path(p)),
    })
}
