//! Exact coloring numbers by exhaustive search. Only meant for small graphs.

use super::linear::PathWalker;
use super::Coloring;
use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::graph::Graph;
use crate::treedepth::{canonical_coloring, treedepth_exact};

/// Minimum size of a linear coloring, with a coloring attaining it.
///
/// Enumerates colorings in canonical form (the first vertex of each color
/// class introduces the next unused color id), so no two candidates differ
/// only by a permutation of colors. Partial colorings are cut as soon as
/// they are improper or a fully colored path ending at the newest vertex has
/// no center.
pub fn chi_lin_exact(g: &Graph, budget: &Budget) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())?));
    }
    let mut meter = budget.meter();
    for k in 1..=n as u32 {
        let mut colors = vec![0u32; n];
        if extend(g, &mut colors, 0, 0, k, &mut meter)? {
            return Ok((k as usize, Coloring::new(colors)?));
        }
    }
    unreachable!("all-distinct coloring is always linear")
}

fn extend(
    g: &Graph,
    colors: &mut Vec<u32>,
    v: usize,
    used: u32,
    k: u32,
    meter: &mut Meter,
) -> Result<bool> {
    meter.tick()?;
    if v == g.n() {
        let mut walker = PathWalker::new(g, colors, true);
        for s in 0..g.n() {
            if walker.search_from(s, |_| true, meter)?.is_some() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for c in 1..=(used + 1).min(k) {
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        let snapshot = colors.clone();
        let blocked = {
            let mut walker = PathWalker::new(g, &snapshot, true);
            walker
                .search_from(v, |w| snapshot[w] != 0, meter)?
                .is_some()
        };
        if !blocked && extend(g, colors, v + 1, used.max(c), k, meter)? {
            return Ok(true);
        }
        colors[v] = 0;
    }
    Ok(false)
}

/// Minimum size of a centered coloring: the canonical coloring of an
/// optimal treedepth decomposition.
pub fn chi_cen_exact(g: &Graph, budget: &Budget) -> Result<(usize, Coloring)> {
    let (depth, t) = treedepth_exact(g, budget)?;
    let c = canonical_coloring(g, &t)?;
    debug_assert_eq!(c.size(), depth);
    Ok((depth, c))
}
