#![allow(dead_code)]

use pathcert::{Graph, RootedTree};
use proptest::prelude::*;

/// Graph on `1..=max_n` vertices with each pair present independently.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Rooted tree on `1..=max_m` vertices: vertex `i > 0` hangs below a
/// random earlier vertex, rooted at 0.
pub fn tree(max_m: usize) -> impl Strategy<Value = RootedTree> {
    (1..=max_m).prop_flat_map(|m| {
        prop::collection::vec(any::<prop::sample::Index>(), m - 1).prop_map(move |picks| {
            let mut parent = vec![None];
            for (i, pick) in picks.iter().enumerate() {
                parent.push(Some(pick.index(i + 1)));
            }
            RootedTree::new(0, parent, None).unwrap()
        })
    })
}

/// Path-induced check straight from the definition: the image of every
/// root-to-vertex path is an induced path.
pub fn literal_path_induced(g: &Graph, tree: &RootedTree, map: &[usize]) -> bool {
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != map.len() {
        return false;
    }
    for v in 0..tree.len() {
        let mut path = vec![v];
        while let Some(p) = tree.parent(*path.last().unwrap()) {
            path.push(p);
        }
        for i in 0..path.len() {
            for j in i + 1..path.len() {
                if g.has_edge(map[path[i]], map[path[j]]) != (j == i + 1) {
                    return false;
                }
            }
        }
    }
    true
}
