//! Path-induced copies of rooted trees: verification and exact search.
//!
//! A map `φ` from a rooted tree into a graph is path-induced when it is an
//! injective subgraph embedding and, for every pair `u` ancestor of `v` at
//! tree distance at least two, `φ(u)` and `φ(v)` are non-adjacent. That
//! comparable-pair form is what [`verify_path_induced`] checks; pairs of
//! incomparable vertices are never constrained.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tree::{RootedTree, SpiderCover};

/// Map from tree vertices to graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    tree: RootedTree,
    map: Vec<usize>,
}

impl Embedding {
    /// Pairs a tree with a map. Nothing is checked here; see
    /// [`verify_path_induced`].
    pub fn new(tree: RootedTree, map: Vec<usize>) -> Self {
        Embedding { tree, map }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn root_image(&self) -> Option<usize> {
        self.map.get(self.tree.root()).copied()
    }

    /// `V(φ)`.
    pub fn image(&self, n: usize) -> Result<VertexSet> {
        VertexSet::from_members(n, self.map.iter().copied())
    }
}

/// True iff `phi` is a path-induced copy of its tree in `g`.
///
/// A map that is partial, leaves the graph, or is not injective is an
/// error rather than `false`.
pub fn verify_path_induced(g: &Graph, phi: &Embedding) -> Result<bool> {
    let tree = &phi.tree;
    let map = &phi.map;
    if map.len() != tree.len() {
        return Err(Error::PartialMap { expected: tree.len(), got: map.len() });
    }
    let mut seen = VertexSet::empty(g.n());
    for &x in map {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
        if seen.contains(x) {
            return Err(Error::NonInjective(x));
        }
        seen.insert(x);
    }
    for v in 0..tree.len() {
        let Some(p) = tree.parent(v) else { continue };
        if !g.has_edge(map[p], map[v]) {
            return Ok(false);
        }
        let mut a = tree.parent(p);
        while let Some(anc) = a {
            if g.has_edge(map[anc], map[v]) {
                return Ok(false);
            }
            a = tree.parent(anc);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate assignments before giving up.
    pub budget: Option<u64>,
    /// Forces isomorphic sibling subtrees to take increasing root images.
    pub symmetry_breaking: bool,
    /// Worker threads for unanchored searches; results do not depend on it.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: None, symmetry_breaking: false, threads: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding),
    NotFound,
    /// The expansion budget ran out before the search finished.
    Unknown,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Embedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Searches for a path-induced copy of `tree` in `g`, optionally with the
/// root pinned to `anchor`. Tree vertices are placed level by level and
/// graph candidates tried in ascending order, so the witness is
/// deterministic.
pub fn find_path_induced(
    g: &Graph,
    tree: &RootedTree,
    anchor: Option<usize>,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if let Some(a) = anchor {
        if a >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: a, n: g.n() });
        }
    }
    let allowed = VertexSet::full(g.n());
    let plan = Plan::new(tree, opts.symmetry_breaking);

    let raw = if anchor.is_none() && opts.threads > 1 && opts.budget.is_none() {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        let found = pool.install(|| {
            (0..g.n()).into_par_iter().find_map_first(|r| {
                let mut s = Search::new(g, &plan, &allowed, None);
                match s.run(Some(r)) {
                    Step::Found => Some(s.into_map()),
                    _ => None,
                }
            })
        });
        Ok(found)
    } else {
        search_plan(g, &plan, &allowed, anchor, opts.budget)
    };
    Ok(match raw {
        Ok(Some(map)) => SearchOutcome::Found(Embedding::new(tree.clone(), map)),
        Ok(None) => SearchOutcome::NotFound,
        Err(Exhausted) => SearchOutcome::Unknown,
    })
}

/// Unbudgeted search restricted to `allowed`, returning the map indexed
/// by tree vertex.
pub(crate) fn find_within(g: &Graph, plan: &Plan, allowed: &VertexSet, anchor: Option<usize>) -> Option<Vec<usize>> {
    search_plan(g, plan, allowed, anchor, None).expect("no budget")
}

#[derive(Debug)]
pub(crate) struct Exhausted;

fn search_plan(
    g: &Graph,
    plan: &Plan,
    allowed: &VertexSet,
    anchor: Option<usize>,
    budget: Option<u64>,
) -> std::result::Result<Option<Vec<usize>>, Exhausted> {
    let mut s = Search::new(g, plan, allowed, budget);
    let roots: Vec<usize> = match anchor {
        Some(a) => allowed.contains(a).then_some(a).into_iter().collect(),
        None => allowed.to_vec(),
    };
    for r in roots {
        match s.run(Some(r)) {
            Step::Found => return Ok(Some(s.into_map())),
            Step::Exhausted => return Err(Exhausted),
            Step::Dead => {}
        }
    }
    Ok(None)
}

/// Tree vertices in placement order plus the bookkeeping the search needs.
pub(crate) struct Plan {
    tree_len: usize,
    order: Vec<usize>,
    parent_pos: Vec<usize>,
    /// Position of the previous sibling with an isomorphic subtree, when
    /// symmetry breaking is on.
    twin_pos: Vec<Option<usize>>,
    /// Siblings from this position onwards, itself included.
    siblings_left: Vec<usize>,
}

impl Plan {
    pub(crate) fn new(tree: &RootedTree, symmetry_breaking: bool) -> Self {
        let order = tree.bfs_order();
        let mut pos = vec![0; tree.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let parent_pos = order.iter().map(|&v| tree.parent(v).map_or(usize::MAX, |p| pos[p])).collect();
        let mut siblings_left = vec![0; tree.len()];
        for v in 0..tree.len() {
            let kids = tree.children(v);
            for (i, &c) in kids.iter().enumerate() {
                siblings_left[pos[c]] = kids.len() - i;
            }
        }
        let mut twin_pos = vec![None; tree.len()];
        if symmetry_breaking {
            let class = tree.subtree_classes();
            for v in 0..tree.len() {
                let kids = tree.children(v);
                for (i, &c) in kids.iter().enumerate() {
                    twin_pos[pos[c]] = kids[..i].iter().rev().find(|&&s| class[s] == class[c]).map(|&s| pos[s]);
                }
            }
        }
        Plan { tree_len: tree.len(), order, parent_pos, twin_pos, siblings_left }
    }
}

enum Step {
    Found,
    Dead,
    Exhausted,
}

struct Search<'a> {
    g: &'a Graph,
    plan: &'a Plan,
    allowed: &'a VertexSet,
    used: VertexSet,
    img: Vec<usize>,
    /// Union of adjacency rows of the images of strict ancestors, per position.
    anc_rows: Vec<Vec<u64>>,
    expansions: u64,
    budget: Option<u64>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, plan: &'a Plan, allowed: &'a VertexSet, budget: Option<u64>) -> Self {
        let words = allowed.words().len();
        Search {
            g,
            plan,
            allowed,
            used: VertexSet::empty(g.n()),
            img: vec![usize::MAX; plan.tree_len],
            anc_rows: vec![vec![0; words]; plan.tree_len],
            expansions: 0,
            budget,
        }
    }

    fn run(&mut self, root: Option<usize>) -> Step {
        let r = root.expect("root chosen by caller");
        if !self.allowed.contains(r) {
            return Step::Dead;
        }
        if !self.tick() {
            return Step::Exhausted;
        }
        self.img[0] = r;
        self.used.insert(r);
        self.anc_rows[0].iter_mut().for_each(|w| *w = 0);
        let step = self.place(1);
        if !matches!(step, Step::Found) {
            self.used.remove(r);
        }
        step
    }

    fn tick(&mut self) -> bool {
        self.expansions += 1;
        self.budget.is_none_or(|b| self.expansions <= b)
    }

    fn place(&mut self, pos: usize) -> Step {
        if pos == self.plan.tree_len {
            return Step::Found;
        }
        let pp = self.plan.parent_pos[pos];
        let parent_img = self.img[pp];
        let floor = self.plan.twin_pos[pos].map(|q| self.img[q]);

        let row = self.g.row(parent_img);
        let cand: Vec<u64> = row
            .iter()
            .zip(&self.anc_rows[pp])
            .zip(self.allowed.words())
            .zip(self.used.words())
            .map(|(((r, a), al), u)| r & !a & al & !u)
            .collect();
        if cand.iter().map(|w| w.count_ones() as usize).sum::<usize>() < self.plan.siblings_left[pos] {
            return Step::Dead;
        }
        let child_anc: Vec<u64> = self.anc_rows[pp].iter().zip(row).map(|(a, r)| a | r).collect();
        self.anc_rows[pos] = child_anc;

        for (wi, &word) in cand.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let x = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                if floor.is_some_and(|f| x <= f) {
                    continue;
                }
                if !self.tick() {
                    return Step::Exhausted;
                }
                self.img[pos] = x;
                self.used.insert(x);
                match self.place(pos + 1) {
                    Step::Found => return Step::Found,
                    Step::Exhausted => return Step::Exhausted,
                    Step::Dead => self.used.remove(x),
                }
            }
        }
        Step::Dead
    }

    fn into_map(self) -> Vec<usize> {
        let mut map = vec![0; self.plan.tree_len];
        for (i, &v) in self.plan.order.iter().enumerate() {
            map[v] = self.img[i];
        }
        map
    }
}

/// Restricts a copy of `T_d^k` to the tree that `cover` places inside it.
pub fn restrict_embedding(phi: &Embedding, tree: &RootedTree, cover: &SpiderCover) -> Result<Embedding> {
    if phi.tree.spider_shape() != Some((cover.d, cover.k)) || phi.map.len() != phi.tree.len() {
        return Err(Error::InvalidParameter(format!("embedding is not a copy of spider({}, {})", cover.d, cover.k)));
    }
    if cover.inclusion.len() != tree.len() || cover.inclusion[tree.root()] != phi.tree.root() {
        return Err(Error::InvalidParameter("inclusion does not match the tree or misses the root".into()));
    }
    for v in 0..tree.len() {
        if cover.inclusion[v] >= phi.tree.len() {
            return Err(Error::InvalidParameter(format!("inclusion sends {v} outside the spider")));
        }
        if let Some(p) = tree.parent(v) {
            if phi.tree.parent(cover.inclusion[v]) != Some(cover.inclusion[p]) {
                return Err(Error::InvalidParameter(format!("inclusion breaks the parent of {v}")));
            }
        }
    }
    let map = cover.inclusion.iter().map(|&s| phi.map[s]).collect();
    Ok(Embedding::new(tree.clone(), map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::spider_cover;

    fn path_graph(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn kmn(m: usize, n: usize) -> Graph {
        Graph::new(m + n, (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j)))).unwrap()
    }

    #[test]
    fn verify_examples() {
        let p4 = RootedTree::path(4).unwrap();
        assert!(verify_path_induced(&path_graph(4), &Embedding::new(p4.clone(), vec![0, 1, 2, 3])).unwrap());
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!verify_path_induced(&c4, &Embedding::new(p4, vec![0, 1, 2, 3])).unwrap());
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let star = RootedTree::spider(2, 1).unwrap();
        for map in [[0, 1, 2], [1, 0, 2], [2, 1, 0]] {
            assert!(verify_path_induced(&k3, &Embedding::new(star.clone(), map.to_vec())).unwrap());
        }
    }

    #[test]
    fn verify_errors_are_distinct() {
        let star = RootedTree::spider(2, 1).unwrap();
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            verify_path_induced(&k3, &Embedding::new(star.clone(), vec![0, 1])),
            Err(Error::PartialMap { .. })
        ));
        assert!(matches!(
            verify_path_induced(&k3, &Embedding::new(star.clone(), vec![0, 1, 1])),
            Err(Error::NonInjective(1))
        ));
        assert!(matches!(
            verify_path_induced(&k3, &Embedding::new(star, vec![0, 1, 7])),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn no_p4_in_complete_bipartite() {
        let p4 = RootedTree::path(4).unwrap();
        let out = find_path_induced(&kmn(5, 5), &p4, None, &SearchOptions::default()).unwrap();
        assert_eq!(out, SearchOutcome::NotFound);
    }

    #[test]
    fn sub_path_of_path() {
        let p3 = RootedTree::path(3).unwrap();
        let g = path_graph(5);
        let e = find_path_induced(&g, &p3, Some(2), &SearchOptions::default()).unwrap();
        let e = e.found().unwrap();
        assert_eq!(e.map(), &[2, 1, 0]);
        assert!(verify_path_induced(&g, e).unwrap());
    }

    #[test]
    fn anchor_out_of_range() {
        let g = path_graph(3);
        assert!(find_path_induced(&g, &RootedTree::single(), Some(3), &SearchOptions::default()).is_err());
    }

    #[test]
    fn budget_gives_unknown() {
        let g = kmn(6, 6);
        let p4 = RootedTree::path(4).unwrap();
        let opts = SearchOptions { budget: Some(5), ..Default::default() };
        assert_eq!(find_path_induced(&g, &p4, None, &opts).unwrap(), SearchOutcome::Unknown);
    }

    #[test]
    fn threads_do_not_change_witness() {
        let g = Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 4)]).unwrap();
        let t = RootedTree::spider(2, 2).unwrap();
        let one = find_path_induced(&g, &t, None, &SearchOptions::default()).unwrap();
        let four = find_path_induced(&g, &t, None, &SearchOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn restriction() {
        let g = path_graph(4);
        let p4 = RootedTree::path(4).unwrap();
        let cover = spider_cover(&p4).unwrap();
        let spider = RootedTree::spider(2, 3).unwrap();
        // A fake spider copy that agrees with the path on the covered branch.
        let mut map: Vec<usize> = (100..115).collect();
        map[0] = 0;
        map[1] = 1;
        map[3] = 2;
        map[7] = 3;
        let phi = Embedding::new(spider, map);
        let r = restrict_embedding(&phi, &p4, &cover).unwrap();
        assert_eq!(r.map(), &[0, 1, 2, 3]);
        assert!(verify_path_induced(&g, &r).unwrap());

        let single = RootedTree::single();
        let cover = spider_cover(&single).unwrap();
        let phi = Embedding::new(RootedTree::spider(2, 1).unwrap(), vec![4, 5, 6]);
        assert_eq!(restrict_embedding(&phi, &single, &cover).unwrap().map(), &[4]);

        let wrong = Embedding::new(RootedTree::spider(3, 1).unwrap(), vec![0, 1, 2, 3]);
        assert!(restrict_embedding(&wrong, &single, &cover).is_err());
    }
}
