mod common;

use pathcert::certificate::{verify, Certificate};
use pathcert::dichotomy::{
    bounds, creature_or_embedding, spider_dichotomy, tree_dichotomy, CreatureOrEmbedding, FnColorer,
    NeighborhoodOutcome, Outcome,
};
use pathcert::embed::verify_path_induced;
use pathcert::families::{clique_number_exact, random};
use pathcert::{PartialColoring, RootedTree};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn spider_dichotomy_is_sound(g in common::graph(14), d in 2usize..4, k in 1usize..3) {
        let t = clique_number_exact(&g).unwrap() + 1;
        let r = spider_dichotomy(&g, d, k, t).unwrap();
        match &r.outcome {
            Outcome::Embedding(e) => {
                prop_assert_eq!(e.tree(), &RootedTree::spider(d, k).unwrap());
                prop_assert!(verify_path_induced(&g, e).unwrap());
            }
            Outcome::Coloring { coloring, .. } => {
                prop_assert!(g.is_proper_coloring(coloring).unwrap());
                prop_assert!(coloring.palette() <= r.params.bound);
            }
        }
        prop_assert!(verify(&g, &Certificate::from_dichotomy(&r)).is_valid());
    }

    #[test]
    fn tree_dichotomy_is_sound_and_deterministic(g in common::graph(12), tree in common::tree(5)) {
        let t = clique_number_exact(&g).unwrap() + 1;
        let r = tree_dichotomy(&g, &tree, t).unwrap();
        if let Outcome::Embedding(e) = &r.outcome {
            prop_assert_eq!(e.tree(), &tree);
        }
        let cert = Certificate::from_dichotomy(&r);
        prop_assert!(verify(&g, &cert).is_valid());
        prop_assert_eq!(cert.to_json(), Certificate::from_dichotomy(&tree_dichotomy(&g, &tree, t).unwrap()).to_json());
    }

    #[test]
    fn bounds_grow_with_every_parameter(d in 2usize..4, k in 1usize..4, t in 2usize..6) {
        let b = bounds(d, k, t).unwrap();
        prop_assert!(bounds(d, k, t + 1).unwrap().global_bound() >= b.global_bound());
        prop_assert!(bounds(d + 1, k, t).unwrap().global_bound() >= b.global_bound());
        // c(j) = d + d^2 + ... + d^j.
        for j in 1..=k {
            prop_assert_eq!(b.c_at(j), (1..=j as u32).map(|i| (d as u64).pow(i)).sum::<u64>());
        }
    }
}

#[test]
fn clique_bound_below_omega_is_rejected_or_embeds() {
    // With t <= ω the engine has no promise to keep; it must either embed or
    // say the base case failed, never hand back a bogus coloring.
    let g = random(12, 0.6, 5).unwrap();
    let omega = clique_number_exact(&g).unwrap();
    if let Ok(r) = spider_dichotomy(&g, 2, 1, omega) {
        assert!(verify(&g, &Certificate::from_dichotomy(&r)).is_valid());
    }
}

#[test]
fn star_center_embeds_directly() {
    // Star K_{1,3}: center 0 has three neighbours, so T_2^1 embeds directly.
    let g = pathcert::Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let mut colorer = FnColorer {
        tau: 1,
        f: |_: &pathcert::Graph, _: &pathcert::VertexSet| {
            Ok(NeighborhoodOutcome::Colored(PartialColoring::uncolored(4)))
        },
    };
    let r = creature_or_embedding(&g, 0, 2, 1, &mut colorer).unwrap();
    let CreatureOrEmbedding::Embedding(e) = r else { panic!("expected an embedding") };
    assert_eq!(e.map(), &[0, 1, 2]);
}

#[test]
fn colorer_outputs_are_checked() {
    // Single edge 0-1 has no T_2^1 anywhere, so the witness for v = 0 needs
    // the colorer on N(0) = {1}.
    let g = pathcert::Graph::new(2, [(0, 1)]).unwrap();
    let mut lazy = FnColorer {
        tau: 1,
        f: |_: &pathcert::Graph, _: &pathcert::VertexSet| {
            Ok(NeighborhoodOutcome::Colored(PartialColoring::uncolored(2)))
        },
    };
    assert!(matches!(creature_or_embedding(&g, 0, 2, 2, &mut lazy), Err(pathcert::Error::Contract(_))));

    let mut honest = FnColorer {
        tau: 1,
        f: |g: &pathcert::Graph, within: &pathcert::VertexSet| {
            let mut c = PartialColoring::uncolored(g.n());
            within.iter().for_each(|v| c.set(v, 1));
            Ok(NeighborhoodOutcome::Colored(c))
        },
    };
    let CreatureOrEmbedding::Creature(cr) = creature_or_embedding(&g, 0, 2, 2, &mut honest).unwrap() else {
        panic!("expected a creature")
    };
    assert!(cr.members.contains(0));
    assert!(pathcert::creature::is_creature(&g, &cr.members, cr.c));
}

#[test]
fn chosen_families_are_maximal() {
    // For every recorded creature node, no neighbour outside A can still
    // root a copy of T_d^{j-1} inside ({u} ∪ M(v)) \ W.
    use pathcert::dichotomy::Engine;
    use pathcert::embed::{find_path_induced, SearchOptions};
    use pathcert::VertexSet;

    let mut nodes = 0;
    for seed in 0..20u64 {
        let g = random(14, 0.35, 500 + seed).unwrap();
        let t = clique_number_exact(&g).unwrap() + 1;
        for (d, k) in [(2usize, 2usize), (3, 2), (2, 3)] {
            let mut engine = Engine::new(&g, d, k, t).unwrap().with_trace(true);
            engine.run().unwrap();
            for rec in engine.trace().iter().filter(|r| r.depth >= 2) {
                nodes += 1;
                let within = VertexSet::from_members(g.n(), rec.within.iter().copied()).unwrap();
                let sub = g.induced_subgraph(&within).unwrap();
                let local = |x: usize| sub.old_to_new[x].unwrap();
                let v = local(rec.v);
                let nv = sub.graph.neighbors(v).unwrap();
                let w: Vec<usize> = rec.w.iter().map(|&x| local(x)).collect();
                let a: Vec<usize> = rec.a.iter().map(|&x| local(x)).collect();
                assert!(a.len() < d);
                let small = RootedTree::spider(d, rec.depth - 1).unwrap();
                for u in nv.iter().filter(|u| !a.contains(u)) {
                    let keep: Vec<usize> = (0..sub.graph.n())
                        .filter(|&x| x == u || (x != v && !nv.contains(x)))
                        .filter(|x| !w.contains(x))
                        .collect();
                    let s = VertexSet::from_members(sub.graph.n(), keep.iter().copied()).unwrap();
                    let region = sub.graph.induced_subgraph(&s).unwrap();
                    let anchor = region.old_to_new[u].unwrap();
                    let hit =
                        find_path_induced(&region.graph, &small, Some(anchor), &SearchOptions::default()).unwrap();
                    assert!(hit.found().is_none(), "seed {seed}: u = {} extends A", rec.within[u]);
                }
            }
        }
    }
    assert!(nodes > 0);
}
