use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::tree::RootedTree;

/// Largest graph the chromatic oracle accepts.
pub const CHROMATIC_MAX_N: usize = 24;
/// Largest graph the clique oracle accepts.
pub const CLIQUE_MAX_N: usize = 64;
const CHROMATIC_NODE_BUDGET: u64 = 50_000_000;

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Exact chromatic number with an optimal coloring, by DSatur
/// branch-and-bound.
pub fn chromatic_number_exact(g: &Graph) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n > CHROMATIC_MAX_N {
        return Err(Error::TooLarge(format!("chromatic oracle limited to {CHROMATIC_MAX_N} vertices, got {n}")));
    }
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new(), 0)?));
    }
    let adj = matrix(g);
    let mut s = Dsatur { adj: &adj, n, color: vec![0; n], best: n + 1, best_color: Vec::new(), nodes: 0 };
    s.go(0, 0)?;
    let k = s.best;
    let colors = s.best_color.iter().map(|&c| c as u64).collect();
    Ok((k, Coloring::new(colors, k as u64)?))
}

struct Dsatur<'a> {
    adj: &'a [Vec<bool>],
    n: usize,
    color: Vec<usize>,
    best: usize,
    best_color: Vec<usize>,
    nodes: u64,
}

impl Dsatur<'_> {
    fn go(&mut self, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > CHROMATIC_NODE_BUDGET {
            return Err(Error::TooLarge("chromatic oracle node budget exhausted".into()));
        }
        if used >= self.best {
            return Ok(());
        }
        if colored == self.n {
            self.best = used;
            self.best_color = self.color.clone();
            return Ok(());
        }
        // Uncolored vertex of maximum saturation, then degree, then lowest id.
        let mut pick = usize::MAX;
        let mut key = (0usize, 0usize);
        for v in 0..self.n {
            if self.color[v] != 0 {
                continue;
            }
            let mut seen = vec![false; used + 1];
            let mut sat = 0;
            let mut deg = 0;
            for u in 0..self.n {
                if self.adj[v][u] {
                    deg += 1;
                    let c = self.color[u];
                    if c != 0 && !seen[c] {
                        seen[c] = true;
                        sat += 1;
                    }
                }
            }
            if pick == usize::MAX || (sat, deg) > key {
                pick = v;
                key = (sat, deg);
            }
        }
        let v = pick;
        for c in 1..=(used + 1).min(self.best - 1) {
            if (0..self.n).any(|u| self.adj[v][u] && self.color[u] == c) {
                continue;
            }
            self.color[v] = c;
            self.go(colored + 1, used.max(c))?;
            self.color[v] = 0;
        }
        Ok(())
    }
}

/// Exact clique number by branch-and-bound over 64-bit masks.
pub fn clique_number_exact(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > CLIQUE_MAX_N {
        return Err(Error::TooLarge(format!("clique oracle limited to {CLIQUE_MAX_N} vertices, got {n}")));
    }
    let masks: Vec<u64> = (0..n).map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0u64, |m, v| m | 1 << v)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = 0;
    grow_clique(&masks, 0, all, &mut best);
    Ok(best)
}

fn grow_clique(masks: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        grow_clique(masks, size + 1, cand & masks[v], best);
    }
}

/// Exhaustive search over injective maps in lexicographic order (tree
/// vertex 0 first), checking the definition directly: the image of every
/// path from the root must be an induced path of `g`.
///
/// Sibling leaves are interchangeable, so they are required to take
/// increasing images; this keeps the first witness lexicographically least.
pub fn brute_force_path_induced(g: &Graph, tree: &RootedTree, anchor: Option<usize>) -> Option<Embedding> {
    let m = tree.len();
    let root_paths: Vec<Vec<usize>> = (0..m)
        .map(|v| {
            let mut p = vec![v];
            let mut x = v;
            while let Some(q) = tree.parent(x) {
                p.push(q);
                x = q;
            }
            p.reverse();
            p
        })
        .collect();
    // Paths to check once tree vertex `x` is assigned: those whose largest
    // vertex is `x`.
    let mut due = vec![Vec::new(); m];
    for (y, p) in root_paths.iter().enumerate() {
        due[*p.iter().max().unwrap()].push(y);
    }
    // Previous sibling leaf, for leaves only.
    let mut prev_leaf = vec![None; m];
    for v in 0..m {
        let mut leaves: Vec<usize> =
            tree.children(v).iter().copied().filter(|&c| tree.children(c).is_empty()).collect();
        leaves.sort_unstable();
        for w in leaves.windows(2) {
            prev_leaf[w[1]] = Some(w[0]);
        }
    }
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; g.n()];
    let ctx = Brute { g, tree, root_paths: &root_paths, due: &due, prev_leaf: &prev_leaf, anchor };
    ctx.assign(0, &mut map, &mut used).then(|| Embedding::new(tree.clone(), map))
}

struct Brute<'a> {
    g: &'a Graph,
    tree: &'a RootedTree,
    root_paths: &'a [Vec<usize>],
    due: &'a [Vec<usize>],
    prev_leaf: &'a [Option<usize>],
    anchor: Option<usize>,
}

impl Brute<'_> {
    fn assign(&self, x: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if x == map.len() {
            return true;
        }
        for image in 0..self.g.n() {
            if used[image] {
                continue;
            }
            if x == self.tree.root() && self.anchor.is_some_and(|a| a != image) {
                continue;
            }
            if let Some(p) = self.prev_leaf[x] {
                if p < x && map[p] > image {
                    continue;
                }
            }
            map[x] = image;
            used[image] = true;
            if self.due[x].iter().all(|&y| self.induced_path(&self.root_paths[y], map)) && self.assign(x + 1, map, used)
            {
                return true;
            }
            used[image] = false;
            map[x] = usize::MAX;
        }
        false
    }

    /// Consecutive images adjacent, all other pairs non-adjacent.
    fn induced_path(&self, path: &[usize], map: &[usize]) -> bool {
        for i in 0..path.len() {
            for j in i + 1..path.len() {
                let adjacent = self.g.has_edge(map[path[i]], map[path[j]]);
                if adjacent != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }
}
