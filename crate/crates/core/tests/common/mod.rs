//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the algorithms under test.
#![allow(dead_code)]

use std::collections::HashMap;

use lincolor::Graph;
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn mask_components(g: &Graph, mask: u32) -> Vec<u32> {
    let mut left = mask;
    let mut out = Vec::new();
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let mut comp = 1u32 << s;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if mask >> w & 1 == 1 && comp >> w & 1 == 0 {
                    comp |= 1 << w;
                    stack.push(w);
                }
            }
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// td(G) = max over components, td(connected H) = 1 + min_v td(H - v).
pub fn brute_treedepth(g: &Graph) -> usize {
    assert!(g.n() <= 20);
    fn td(g: &Graph, mask: u32, memo: &mut HashMap<u32, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&d) = memo.get(&mask) {
            return d;
        }
        let comps = mask_components(g, mask);
        let d = if comps.len() > 1 {
            comps.into_iter().map(|c| td(g, c, memo)).max().unwrap()
        } else {
            (0..g.n())
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| 1 + td(g, mask & !(1 << v), memo))
                .min()
                .unwrap()
        };
        memo.insert(mask, d);
        d
    }
    td(
        g,
        (1u64 << g.n()).wrapping_sub(1) as u32,
        &mut HashMap::new(),
    )
}

/// Every simple path, as a vertex sequence, in both directions.
pub fn all_paths(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(p.clone());
        let last = *p.last().unwrap();
        for &w in g.neighbors(last) {
            if !p.contains(&w) {
                p.push(w);
                extend(g, p, out);
                p.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

pub fn has_center(vertices: &[usize], colors: &[u32]) -> bool {
    vertices
        .iter()
        .any(|&v| vertices.iter().filter(|&&u| colors[u] == colors[v]).count() == 1)
}

pub fn brute_linear(g: &Graph, colors: &[u32]) -> bool {
    all_paths(g).iter().all(|p| has_center(p, colors))
}

/// Checks every connected vertex subset for a center.
pub fn brute_centered(g: &Graph, colors: &[u32]) -> bool {
    assert!(g.n() <= 16);
    (1u32..1 << g.n()).all(|mask| {
        mask_components(g, mask).len() != 1 || {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            has_center(&vs, colors)
        }
    })
}

/// Smallest k admitting a linear coloring, by trying every coloring.
pub fn brute_chi_lin(g: &Graph) -> usize {
    let n = g.n();
    let paths = all_paths(g);
    (1..=n)
        .find(|&k| {
            let mut colors = vec![1u32; n];
            loop {
                if paths.iter().all(|p| has_center(p, &colors)) {
                    return true;
                }
                let mut i = 0;
                while i < n && colors[i] == k as u32 {
                    colors[i] = 1;
                    i += 1;
                }
                if i == n {
                    return false;
                }
                colors[i] += 1;
            }
        })
        .unwrap_or(0)
}
