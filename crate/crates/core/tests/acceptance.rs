//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the report reads top to bottom.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use lincolor::colorings::{
    chi_cen_exact, chi_lin_exact, find_noncentered_path, verify_centered, verify_linear,
};
use lincolor::generators::{
    gen_complete_binary_tree, gen_recursive_clique, random_interval, random_tree,
    striped_btree_coloring, subdivide_with_new_color,
};
use lincolor::interval::{centered_from_linear, clique_ordering, hamiltonian_path, prevailing};
use lincolor::ranking::{compatible_sets, rho, schaffer_rank, zeta, RootedTree};
use lincolor::sat::{
    build_gadget, decide_equivalence, path_to_assignment, preprocess, CnfFormula, Status,
};
use lincolor::treedepth::{canonical_coloring, check_valid, dfs_decomposition, treedepth_exact};
use lincolor::{Budget, Coloring, Graph, IntervalRepresentation, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Maker = (&'static str, fn(&mut ChaCha8Rng) -> Graph);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "oracle consistency on all connected graphs up to 7 vertices",
            oracle_consistency,
        ),
        (
            "linear iff centered on paths, stars, cycles, cliques, bicliques",
            linear_iff_centered,
        ),
        ("recursive clique family", recursive_cliques),
        ("binary trees and striped colorings", binary_trees),
        ("tree ranking optimality and potentials", tree_ranking),
        ("interval pipeline", interval_pipeline),
        ("satisfiability reduction", reduction),
        ("subdivided gadgets", subdivision),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- graphs

fn pair_bit(i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    1 << (j * (j - 1) / 2 + i)
}

fn decode(n: usize, code: u32) -> Graph {
    let edges = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| code & pair_bit(i, j) != 0);
    Graph::from_edges(n, edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest edge code over relabelings that list vertices by nondecreasing
/// degree.
fn canonical(n: usize, code: u32, perms: &[Vec<usize>]) -> u32 {
    let deg: Vec<u32> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && code & pair_bit(u, v) != 0)
                .count() as u32
        })
        .collect();
    perms
        .iter()
        .filter(|p| p.windows(2).all(|w| deg[w[0]] <= deg[w[1]]))
        .map(|p| {
            let mut c = 0;
            for j in 0..n {
                for i in 0..j {
                    if code & pair_bit(p[i], p[j]) != 0 {
                        c |= pair_bit(i, j);
                    }
                }
            }
            c
        })
        .max()
        .unwrap()
}

/// Connected graphs up to isomorphism, grown by attaching a new vertex to a
/// nonempty set of old ones.
fn connected_graphs(max_n: usize) -> Vec<Vec<u32>> {
    let mut levels = vec![vec![], vec![0u32]];
    for n in 2..=max_n {
        let perms = permutations(n);
        let mut next = BTreeSet::new();
        for &code in &levels[n - 1] {
            for s in 1u32..1 << (n - 1) {
                let mut c = code;
                for i in 0..n - 1 {
                    if s >> i & 1 == 1 {
                        c |= pair_bit(i, n - 1);
                    }
                }
                next.insert(canonical(n, c, &perms));
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels
}

fn oracle_consistency() -> Outcome {
    let levels = connected_graphs(7);
    let counts: Vec<usize> = levels[1..].iter().map(Vec::len).collect();
    ensure!(
        counts == [1, 1, 2, 6, 21, 112, 853],
        "isomorphism class counts {counts:?}"
    );
    let b = Budget::default();
    let mut total = 0;
    for (n, codes) in levels.iter().enumerate() {
        for &code in codes {
            let g = decode(n, code);
            ensure!(g.is_connected(), "enumerated a disconnected graph");
            let (lin, lc) = chi_lin_exact(&g, &b).map_err(|e| e.to_string())?;
            let (cen, cc) = chi_cen_exact(&g, &b).map_err(|e| e.to_string())?;
            let (td, dec) = treedepth_exact(&g, &b).map_err(|e| e.to_string())?;
            let edges: Vec<_> = g.edges().collect();
            ensure!(
                lin <= cen && cen == td,
                "{edges:?}: lin {lin}, cen {cen}, td {td}"
            );
            ensure!(td <= 1 << lin, "{edges:?}: td {td} > 2^{lin}");
            ensure!(
                td == brute_treedepth(&g),
                "{edges:?}: td {td} disagrees with brute force"
            );
            ensure!(
                dec.depth() == td && check_valid(&g, &dec).unwrap().is_none(),
                "{edges:?}: bad decomposition"
            );
            ensure!(
                lc.size() == lin && brute_linear(&g, lc.as_slice()),
                "{edges:?}: bad linear witness"
            );
            ensure!(
                cc.size() == cen && brute_centered(&g, cc.as_slice()),
                "{edges:?}: bad centered witness"
            );
            if n <= 6 {
                ensure!(
                    lin == brute_chi_lin(&g),
                    "{edges:?}: chi_lin {lin} disagrees with brute force"
                );
            }
            total += 1;
        }
    }
    Ok(format!("{total} graphs, class counts {counts:?}"))
}

fn linear_iff_centered() -> Outcome {
    let families: [Maker; 5] = [
        ("path", |r| Graph::path(r.gen_range(1..=10))),
        ("star", |r| Graph::star(r.gen_range(0..=9))),
        ("cycle", |r| Graph::cycle(r.gen_range(3..=10))),
        ("complete", |r| Graph::complete(r.gen_range(1..=10))),
        ("biclique", |r| {
            let a = r.gen_range(1..=9);
            Graph::complete_bipartite(a, r.gen_range(1..=10 - a))
        }),
    ];
    let b = Budget::default();
    let mut summary = Vec::new();
    for (fi, (name, make)) in families.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(fi as u64);
        let mut accepted = 0;
        for _ in 0..200 {
            let g = make(&mut rng);
            let k = rng.gen_range(1..=g.n() as u32);
            let colors: Vec<u32> = (0..g.n()).map(|_| rng.gen_range(1..=k)).collect();
            let c = Coloring::new(colors.clone()).unwrap();
            let lin = verify_linear(&g, &c, &b)
                .map_err(|e| e.to_string())?
                .is_ok();
            let cen = verify_centered(&g, &c).map_err(|e| e.to_string())?.is_ok();
            ensure!(
                lin == cen,
                "{name} n = {} colors {colors:?}: linear {lin}, centered {cen}",
                g.n()
            );
            if g.n() <= 7 {
                ensure!(
                    lin == brute_linear(&g, &colors),
                    "{name} {colors:?}: linear verdict wrong"
                );
                ensure!(
                    cen == brute_centered(&g, &colors),
                    "{name} {colors:?}: centered verdict wrong"
                );
            }
            accepted += lin as usize;
        }
        summary.push(format!("{name} {accepted}/200"));
    }
    Ok(format!("0 discrepancies; accepted {}", summary.join(", ")))
}

fn recursive_cliques() -> Outcome {
    let b = Budget::default();
    let mut td = vec![0usize];
    for i in 1..=6 {
        let inst = gen_recursive_clique(i).map_err(|e| e.to_string())?;
        let g = &inst.graph;
        ensure!(
            inst.coloring.size() == i,
            "R_{i}: {} colors",
            inst.coloring.size()
        );
        ensure!(
            verify_linear(g, &inst.coloring, &b).unwrap().is_ok(),
            "R_{i}: generated coloring is not linear"
        );
        if i <= 4 {
            ensure!(
                brute_linear(g, inst.coloring.as_slice()),
                "R_{i}: brute force finds an uncentered path"
            );
        }
        let (t, _) = treedepth_exact(g, &b).map_err(|e| e.to_string())?;
        ensure!(
            t == brute_treedepth(g),
            "R_{i}: exact td {t} disagrees with brute force"
        );
        td.push(t);
    }
    let want = [0, 1, 2, 4, 5, 7, 8];
    ensure!(td == want, "treedepths {td:?}, expected {want:?}");
    for i in 3..=6 {
        let p = (i - 1) / 2;
        ensure!(
            td[i] == i + td[p],
            "td(R_{i}) = {} but i + td(R_{p}) = {}",
            td[i],
            i + td[p]
        );
    }
    let r3 = gen_recursive_clique(3).unwrap().graph;
    let (lin, _) = chi_lin_exact(&r3, &b).map_err(|e| e.to_string())?;
    ensure!(lin == 3 && brute_chi_lin(&r3) == 3, "chi_lin(R_3) = {lin}");
    Ok(format!("td(R_1..R_6) = {:?}, chi_lin(R_3) = 3", &td[1..]))
}

fn binary_trees() -> Outcome {
    let b = Budget::default();
    for levels in 1..=6 {
        let t = gen_complete_binary_tree(levels).map_err(|e| e.to_string())?;
        ensure!(
            t.n() == (1 << levels) - 1 && t.is_tree(),
            "B_{levels} has the wrong shape"
        );
        let (td, _) = treedepth_exact(&t, &b).map_err(|e| e.to_string())?;
        ensure!(td == levels, "td(B_{levels}) = {td}");
        if levels <= 4 {
            ensure!(
                brute_treedepth(&t) == levels,
                "brute force td(B_{levels}) differs"
            );
        }
    }
    let mut sizes = Vec::new();
    for d in [2, 4] {
        let inst = striped_btree_coloring(3, d).map_err(|e| e.to_string())?;
        ensure!(
            inst.graph == gen_complete_binary_tree(3 * d).unwrap(),
            "d = {d}: graph is not B_{}",
            3 * d
        );
        ensure!(
            inst.coloring.size() == 2 * d + 4,
            "d = {d}: {} colors",
            inst.coloring.size()
        );
        let search =
            find_noncentered_path(&inst.graph, &inst.coloring, &b).map_err(|e| e.to_string())?;
        ensure!(search.forest_route, "d = {d}: tree verifier not used");
        ensure!(
            search.path.is_none(),
            "d = {d}: uncentered path {:?}",
            search.path
        );
        if d == 2 {
            ensure!(
                brute_linear(&inst.graph, inst.coloring.as_slice()),
                "d = 2: brute force finds an uncentered path"
            );
        }
        sizes.push(format!("B_{} with {} colors", 3 * d, 2 * d + 4));
    }
    Ok(format!("td(B_1..B_6) = 1..6; {}", sizes.join(", ")))
}

fn tree_ranking() -> Outcome {
    let b = Budget::default();
    for seed in 0..500u64 {
        let n = 1 + seed as usize % 16;
        let t = random_tree(n, seed).unwrap();
        let size = schaffer_rank(&t, None).map_err(|e| e.to_string())?.size();
        let (td, _) = treedepth_exact(&t, &b).map_err(|e| e.to_string())?;
        ensure!(size == td, "seed {seed}: ranking uses {size}, td {td}");
        if n <= 12 {
            ensure!(
                td == brute_treedepth(&t),
                "seed {seed}: exact td disagrees with brute force"
            );
        }
    }
    let mut cubic = 0;
    let mut seed = 0u64;
    while cubic < 200 {
        seed += 1;
        let t = random_tree(4 + seed as usize % 9, 1_000_000 + seed).unwrap();
        if t.max_degree() != 3 {
            continue;
        }
        cubic += 1;
        let r = schaffer_rank(&t, None).unwrap();
        let rooted = RootedTree::new(&t, Some(r.root)).unwrap();
        let (lin, psi) = chi_lin_exact(&t, &b).map_err(|e| e.to_string())?;
        ensure!(
            brute_linear(&t, psi.as_slice()),
            "seed {seed}: oracle coloring is not linear"
        );
        ensure!(
            r.size() as f64 <= 3f64.log2() * lin as f64 + 1e-9,
            "seed {seed}: size {} vs chi_lin {lin}",
            r.size()
        );
        let fam = compatible_sets(&t, r.root, &psi).unwrap();
        let rho = rho(&fam, 3).unwrap();
        for v in 0..t.n() {
            let kids = &rooted.children[v];
            if !kids.is_empty() {
                let sum = 2 + kids.iter().map(|&u| zeta(&r.lists[u])).sum::<u128>();
                let disjoint = kids.iter().enumerate().all(|(i, &x)| {
                    kids[i + 1..].iter().all(|&y| {
                        r.lists[x]
                            .as_slice()
                            .iter()
                            .all(|&q| !r.lists[y].contains(q))
                    })
                });
                let z = zeta(&r.lists[v]);
                ensure!(
                    z <= sum && (z == sum) == disjoint,
                    "seed {seed}: zeta recurrence at {v}"
                );
            }
            let floor = 2 + kids.iter().map(|&u| rho[u]).sum::<u128>();
            ensure!(rho[v] >= floor, "seed {seed}: rho recurrence at {v}");
            ensure!(
                rho[v] >= zeta(&r.lists[v]),
                "seed {seed}: rho < zeta at {v}"
            );
        }
    }
    Ok(format!(
        "500 random trees optimal; {cubic} trees with max degree 3 within the log bound"
    ))
}

// ---------------------------------------------------------------- interval

fn components(
    g: &Graph,
    rep: &IntervalRepresentation,
) -> Vec<(IntervalRepresentation, Vec<usize>)> {
    g.connected_components()
        .iter()
        .map(|c| {
            let vs = c.to_vec();
            (
                IntervalRepresentation::new(vs.iter().map(|&v| rep.interval(v)).collect()).unwrap(),
                vs,
            )
        })
        .collect()
}

/// Structural checks on one connected interval graph with a linear coloring.
fn check_prevailing(rep: &IntervalRepresentation, psi: &Coloring) -> Result<(), String> {
    let g = rep.to_graph();
    let ord = clique_ordering(rep);
    let ps = prevailing(&g, &ord).map_err(|e| e.to_string())?;
    let p = &ps.path;
    ensure!(
        ps.selected.windows(2).all(|w| w[0] < w[1]),
        "selected cliques not increasing"
    );
    ensure!(
        p.windows(2).all(|w| ord.last[w[0]] < ord.last[w[1]]),
        "forget indices along P not increasing"
    );
    for w in ps.selected.windows(3) {
        ensure!(
            ord.cliques[w[0]].is_disjoint(&ord.cliques[w[2]]),
            "alternate cliques meet"
        );
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            ensure!(
                g.has_edge(p[i], p[j]) == (j == i + 1),
                "prevailing path is not induced"
            );
        }
    }
    ensure!(
        p.iter().all(|&v| ps.subgraph.contains(v)),
        "path leaves the prevailing subgraph"
    );
    let rest = VertexSet::full(g.n()).difference(&ps.subgraph);
    let mut comps: Vec<Vec<usize>> = g
        .components_within(&rest)
        .iter()
        .map(|c| c.to_vec())
        .collect();
    let mut gaps: Vec<Vec<usize>> = ps.gaps.iter().map(|x| x.vertices.clone()).collect();
    comps.sort();
    gaps.sort();
    ensure!(comps == gaps, "gaps are not the components outside Q");
    for gap in &ps.gaps {
        ensure!(gap.apex < p.len(), "apex is not on P");
        ensure!(
            gap.vertices.iter().all(|&x| g.has_edge(p[gap.apex], x)),
            "apex misses a gap vertex"
        );
    }
    let h = hamiltonian_path(&ps, &g, &ord).map_err(|e| e.to_string())?;
    let hv = h.vertices();
    ensure!(
        hv.windows(2).all(|w| g.has_edge(w[0], w[1])),
        "Hamiltonian path uses a non-edge"
    );
    let mut sorted = hv.to_vec();
    sorted.sort();
    sorted.dedup();
    ensure!(
        sorted.len() == hv.len() && sorted == ps.subgraph.to_vec(),
        "Hamiltonian path does not span Q"
    );
    let (q, map) = g.induced_subgraph(&ps.subgraph).unwrap();
    let psi_q = psi.restrict(&map);
    ensure!(
        verify_centered(&q, &psi_q).unwrap().is_ok(),
        "psi restricted to Q is not centered"
    );
    if q.n() <= 12 {
        ensure!(
            brute_centered(&q, psi_q.as_slice()),
            "brute force: psi restricted to Q is not centered"
        );
    }
    Ok(())
}

fn run_interval(
    g: &Graph,
    rep: &IntervalRepresentation,
    psi: &Coloring,
    k: usize,
) -> Result<usize, String> {
    let out = centered_from_linear(g, rep, psi).map_err(|e| e.to_string())?;
    ensure!(out.k == k, "reported k {} for a {k}-coloring", out.k);
    ensure!(
        check_valid(g, &out.decomposition).unwrap().is_none(),
        "decomposition misses an edge"
    );
    let size = out.coloring.size();
    ensure!(
        size == out.depth && size <= k * k,
        "size {size} exceeds {k}^2"
    );
    ensure!(
        brute_centered_small(g, &out.coloring),
        "output coloring is not centered"
    );
    for (r, vs) in components(g, rep) {
        check_prevailing(&r, &psi.restrict(&vs))?;
    }
    Ok(out.fallback_used as usize)
}

fn brute_centered_small(g: &Graph, c: &Coloring) -> bool {
    if g.n() <= 14 {
        brute_centered(g, c.as_slice())
    } else {
        verify_centered(g, c).unwrap().is_ok()
    }
}

fn interval_pipeline() -> Outcome {
    let mut fallbacks = 0;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=40);
        let (g, rep) = random_interval(n, rng.gen_range(1..=2 * n as u32), seed).unwrap();
        let start = rng.gen_range(0..n);
        let psi = canonical_coloring(&g, &dfs_decomposition(&g, start).unwrap()).unwrap();
        ensure!(
            verify_centered(&g, &psi).unwrap().is_ok(),
            "seed {seed}: input is not centered, hence maybe not linear"
        );
        fallbacks += run_interval(&g, &rep, &psi, psi.size())
            .map_err(|e| format!("seed {seed}, n = {n}: {e}"))?;
    }
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let n = rng.gen_range(1..=10);
        let (g, rep) = random_interval(n, rng.gen_range(1..=2 * n as u32), seed).unwrap();
        let (k, psi) = chi_lin_exact(&g, &Budget::default()).map_err(|e| e.to_string())?;
        ensure!(
            n > 7 || k == brute_chi_lin(&g),
            "seed {seed}: chi_lin disagrees with brute force"
        );
        fallbacks +=
            run_interval(&g, &rep, &psi, k).map_err(|e| format!("minimum, seed {seed}: {e}"))?;
    }
    Ok(format!(
        "300 instances within k^2, separator fallback on {fallbacks}"
    ))
}

// ---------------------------------------------------------------- reduction

fn truth_table_sat(f: &CnfFormula) -> bool {
    (0u32..1 << f.n_vars()).any(|bits| {
        f.clauses().iter().all(|c| {
            c.iter()
                .any(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))
        })
    })
}

fn random_formula(rng: &mut ChaCha8Rng) -> CnfFormula {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=4);
    let clauses = (0..m)
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(1..=n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).unwrap()
}

fn reduction() -> Outcome {
    let b = Budget::default();
    let sample = CnfFormula::new(3, vec![vec![1, 2, -3], vec![-1, 2, 3], vec![-2]]).unwrap();
    let gi = build_gadget(&sample).map_err(|e| e.to_string())?;
    let palette: BTreeSet<u32> = gi.raw_colors.iter().copied().collect();
    ensure!(
        gi.graph.n() == 18,
        "sample gadget has {} vertices",
        gi.graph.n()
    );
    ensure!(palette == (0..=6).collect(), "sample palette {palette:?}");
    let r = decide_equivalence(&sample, &b).map_err(|e| e.to_string())?;
    let cert = r
        .certificate
        .clone()
        .ok_or("no certificate for the sample formula")?;
    ensure!(
        cert.windows(2).all(|w| gi.graph.has_edge(w[0], w[1])),
        "certificate is not a path"
    );
    ensure!(
        !has_center(&cert, &gi.raw_colors),
        "certificate has a center"
    );
    let a = path_to_assignment(&gi, &cert).map_err(|e| e.to_string())?;
    ensure!(
        sample.evaluate(&a),
        "decoded assignment {a:?} fails the formula"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut reduced, mut total, mut sat) = (0, 0, 0);
    while reduced < 500 {
        let f = random_formula(&mut rng);
        let want = truth_table_sat(&f);
        let r = decide_equivalence(&f, &b).map_err(|e| e.to_string())?;
        ensure!(
            r.satisfiable == want && r.agree,
            "disagreement on {:?}",
            f.clauses()
        );
        if r.status == Status::Reduced {
            ensure!(
                r.path_found == Some(want),
                "path search wrong on {:?}",
                f.clauses()
            );
            reduced += 1;
            sat += want as usize;
        }
        if let Some(a) = &r.assignment {
            ensure!(f.evaluate(a), "returned assignment fails {:?}", f.clauses());
        }
        total += 1;
    }
    Ok(format!(
        "sample certificate of {} vertices; {total} formulas, {reduced} reduced ({sat} satisfiable), 0 disagreements",
        cert.len()
    ))
}

/// Repeatedly strips vertices of degree at most 2.
fn peels_at_two(g: &Graph) -> bool {
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; g.n()];
    loop {
        let Some(v) = (0..g.n()).find(|&v| !gone[v] && deg[v] <= 2) else {
            return gone.iter().all(|&x| x);
        };
        gone[v] = true;
        for &w in g.neighbors(v) {
            deg[w] -= 1;
        }
    }
}

fn subdivision() -> Outcome {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut done, mut with_path) = (0, 0);
    while done < 100 {
        let f = random_formula(&mut rng);
        let pre = preprocess(&f);
        if pre.status != Status::Reduced {
            continue;
        }
        let gi = build_gadget(&pre.formula).map_err(|e| e.to_string())?;
        let before = find_noncentered_path(&gi.graph, &gi.coloring(), &b)
            .map_err(|e| e.to_string())?
            .path
            .is_some();
        let sub = subdivide_with_new_color(&gi.graph, &gi.coloring()).map_err(|e| e.to_string())?;
        let after = find_noncentered_path(&sub.graph, &sub.coloring, &b)
            .map_err(|e| e.to_string())?
            .path
            .is_some();
        ensure!(
            before == after,
            "{:?}: path before {before}, after {after}",
            f.clauses()
        );
        ensure!(
            before == truth_table_sat(&pre.formula),
            "{:?}: gadget disagrees with truth table",
            f.clauses()
        );
        let n = gi.graph.n();
        ensure!(
            sub.graph.edges().all(|(u, v)| (u < n) != (v < n)),
            "an edge avoids the subdivision side"
        );
        ensure!(sub.graph.bipartition().is_some(), "bipartition not found");
        ensure!(
            sub.graph.degeneracy() <= 2 && peels_at_two(&sub.graph),
            "degeneracy above 2"
        );
        with_path += before as usize;
        done += 1;
    }
    Ok(format!(
        "100 gadgets ({with_path} with an uncentered path) preserved, bipartite, 2-degenerate"
    ))
}
