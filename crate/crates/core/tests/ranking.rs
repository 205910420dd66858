mod common;

use common::*;
use lincolor::colorings::chi_lin_exact;
use lincolor::generators::{gen_complete_binary_tree, random_tree};
use lincolor::ranking::{compatible_sets, mask_colors, rho, schaffer_rank, zeta, RootedTree};
use lincolor::treedepth::canonical_coloring;
use lincolor::treedepth::dfs_decomposition;
use lincolor::{Budget, Coloring, Graph};
use proptest::prelude::*;

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn ranking_is_optimal(t in tree(14)) {
        let r = schaffer_rank(&t, None).unwrap();
        prop_assert_eq!(r.size(), brute_treedepth(&t));
    }

    #[test]
    fn maximum_rank_is_unique_on_every_path(t in tree(12), root in 0usize..12) {
        let r = schaffer_rank(&t, Some(root % t.n())).unwrap();
        for p in all_paths(&t) {
            let top = p.iter().map(|&v| r.rank[v]).max().unwrap();
            prop_assert_eq!(p.iter().filter(|&&v| r.rank[v] == top).count(), 1);
        }
        prop_assert!(brute_centered(&t, &r.rank));
    }

    #[test]
    fn zeta_recurrence(t in tree(16)) {
        let r = schaffer_rank(&t, None).unwrap();
        let rooted = RootedTree::new(&t, Some(r.root)).unwrap();
        for v in 0..t.n() {
            let kids = &rooted.children[v];
            if kids.is_empty() {
                continue;
            }
            let sum: u128 = 2 + kids.iter().map(|&u| zeta(&r.lists[u])).sum::<u128>();
            let disjoint = kids.iter().enumerate().all(|(i, &a)| {
                kids[i + 1..].iter().all(|&b| r.lists[a].as_slice().iter().all(|&x| !r.lists[b].contains(x)))
            });
            prop_assert!(zeta(&r.lists[v]) <= sum);
            prop_assert_eq!(zeta(&r.lists[v]) == sum, disjoint);
        }
    }

    #[test]
    fn compatible_paths_exist(t in tree(12), colors in proptest::collection::vec(1u32..=4, 12)) {
        let psi = Coloring::new(colors[..t.n()].to_vec()).unwrap();
        let root = (0..t.n()).find(|&v| t.degree(v) <= 1).unwrap();
        let fam = compatible_sets(&t, root, &psi).unwrap();
        let rooted = RootedTree::new(&t, Some(root)).unwrap();
        let paths = all_paths(&t);
        for v in 0..t.n() {
            prop_assert!(!fam.of(v).contains(&0));
            for x in fam.as_color_lists(v) {
                // a path from v downwards whose unique colors lie in x and whose colors cover x
                let found = paths.iter().any(|p| {
                    p[0] == v
                        && p.windows(2).all(|w| rooted.parent[w[1]] == Some(w[0]))
                        && p.iter().all(|&u| {
                            let c = psi.color(u);
                            let count = p.iter().filter(|&&w| psi.color(w) == c).count();
                            count > 1 || x.contains(&c)
                        })
                        && x.iter().all(|c| p.iter().any(|&u| psi.color(u) == *c))
                });
                prop_assert!(found, "vertex {} set {:?}", v, x);
            }
        }
    }
}

fn linear_tree_colorings(t: &Graph) -> Vec<Coloring> {
    let b = Budget::default();
    let mut out = vec![chi_lin_exact(t, &b).unwrap().1];
    for s in 0..t.n().min(4) {
        out.push(canonical_coloring(t, &dfs_decomposition(t, s).unwrap()).unwrap());
    }
    out
}

#[test]
fn rho_dominates_zeta_for_linear_colorings() {
    let mut checked = 0;
    for seed in 0..300 {
        let t = random_tree(4 + (seed as usize % 9), seed).unwrap();
        let delta = t.max_degree();
        if delta < 3 {
            continue;
        }
        let r = schaffer_rank(&t, None).unwrap();
        let rooted = RootedTree::new(&t, Some(r.root)).unwrap();
        for psi in linear_tree_colorings(&t) {
            assert!(brute_linear(&t, psi.as_slice()));
            let fam = compatible_sets(&t, r.root, &psi).unwrap();
            let rho = rho(&fam, delta).unwrap();
            for v in 0..t.n() {
                let floor =
                    (delta as u128 - 1) + rooted.children[v].iter().map(|&u| rho[u]).sum::<u128>();
                assert!(rho[v] >= floor, "rho recurrence at {v}");
                assert!(rho[v] >= zeta(&r.lists[v]), "rho < zeta at {v}");
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn ranking_size_within_log_delta_of_linear_number() {
    for seed in 0..200 {
        let t = random_tree(3 + (seed as usize % 10), seed).unwrap();
        let delta = t.max_degree().max(2) as f64;
        let lin = chi_lin_exact(&t, &Budget::default()).unwrap().0 as f64;
        let size = schaffer_rank(&t, None).unwrap().size() as f64;
        assert!(size <= delta.log2() * lin + 1e-9, "seed {seed}");
    }
}

#[test]
fn binary_trees_and_paths() {
    for levels in 1..=6 {
        let b = gen_complete_binary_tree(levels).unwrap();
        assert_eq!(schaffer_rank(&b, None).unwrap().size(), levels);
    }
    for n in 1..=40usize {
        let want = (usize::BITS - n.leading_zeros()) as usize;
        assert_eq!(schaffer_rank(&Graph::path(n), None).unwrap().size(), want);
    }
}

#[test]
fn mask_colors_lists_bits() {
    assert_eq!(mask_colors(0b1011), vec![1, 2, 4]);
}
