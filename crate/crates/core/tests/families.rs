mod common;

use pathcert::families::{
    chromatic_number_exact, clique_number_exact, complete, cycle, kneser, mycielskian, random, FamilySpec,
};
use pathcert::{Coloring, Graph};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Smallest `q` for which some assignment in `1..=q` is proper.
fn naive_chromatic(g: &Graph) -> usize {
    (1..=g.n().max(1))
        .find(|&q| {
            let mut colors = vec![0u64; g.n()];
            loop {
                if Coloring::new(colors.iter().map(|c| c + 1).collect(), q as u64)
                    .is_ok_and(|c| g.is_proper_coloring(&c).unwrap())
                {
                    return true;
                }
                let Some(i) = colors.iter().position(|&c| c + 1 < q as u64) else { return false };
                colors[i] += 1;
                colors[..i].iter_mut().for_each(|c| *c = 0);
            }
        })
        .unwrap_or(0)
}

fn naive_clique(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|mask| {
            let vs: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter().all(|&u| vs.iter().all(|&v| u == v || g.has_edge(u, v)))
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn exact_oracles_match_naive(g in common::graph(8)) {
        let (chi, witness) = chromatic_number_exact(&g).unwrap();
        prop_assert_eq!(chi, naive_chromatic(&g));
        prop_assert!(g.is_proper_coloring(&witness).unwrap());
        prop_assert_eq!(witness.distinct_colors(), chi);
        prop_assert_eq!(clique_number_exact(&g).unwrap(), naive_clique(&g));
    }

    #[test]
    fn mycielskian_invariants(g in common::graph(7)) {
        let m = mycielskian(&g);
        prop_assert_eq!(m.n(), 2 * g.n() + 1);
        prop_assert_eq!(m.edge_count(), 3 * g.edge_count() + g.n());
        let omega = clique_number_exact(&g).unwrap();
        prop_assert_eq!(clique_number_exact(&m).unwrap(), omega.max(2));
        if g.edge_count() > 0 {
            prop_assert_eq!(chromatic_number_exact(&m).unwrap().0, chromatic_number_exact(&g).unwrap().0 + 1);
        }
    }

    #[test]
    fn random_is_reproducible(n in 0usize..30, p in 0.0f64..=1.0, seed in any::<u64>()) {
        prop_assert_eq!(random(n, p, seed).unwrap(), random(n, p, seed).unwrap());
        prop_assert_eq!(random(n, 0.0, seed).unwrap().edge_count(), 0);
        prop_assert_eq!(random(n, 1.0, seed).unwrap().edge_count(), n * n.saturating_sub(1) / 2);
    }
}

#[test]
fn kneser_counts_and_degrees() {
    for (n, s) in [(5, 2), (6, 2), (7, 3), (8, 3)] {
        let g = kneser(n, s).unwrap();
        assert_eq!(g.n() as u64, binomial(n as u64, s as u64));
        let deg = binomial((n - s) as u64, s as u64);
        assert!((0..g.n()).all(|v| g.degree(v) as u64 == deg), "K({n},{s})");
    }
    // Lovász: χ(K(n,s)) = n - 2s + 2.
    assert_eq!(chromatic_number_exact(&kneser(6, 2).unwrap()).unwrap().0, 4);
}

#[test]
fn named_families() {
    assert_eq!(chromatic_number_exact(&cycle(7).unwrap()).unwrap().0, 3);
    assert_eq!(chromatic_number_exact(&complete(5)).unwrap().0, 5);
    assert!(cycle(2).is_err());
    assert!(kneser(4, 3).is_err());
    let spec = FamilySpec::Mycielski { iterations: 2 };
    assert_eq!(spec.build().unwrap().n(), 11);
}

#[test]
fn oracle_refuses_large_inputs() {
    assert!(chromatic_number_exact(&Graph::edgeless(pathcert::families::CHROMATIC_MAX_N + 1)).is_err());
}
