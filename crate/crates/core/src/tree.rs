//! Rooted trees with ordered children, the spider family and pair types.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rooted tree on `0..m` with a fixed linear order on every child list.
///
/// The child order matters: it decides which of two incomparable vertices
/// is the earlier one, and therefore the pair type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

/// Type `(a, b, c)` of an incomparable pair: depth of the earlier vertex,
/// depth of the later vertex, depth of their join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairType {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl RootedTree {
    /// Builds a tree from a parent array (`None` exactly at `root`).
    /// Children are ordered by ascending id unless `order` is given.
    pub fn new(root: usize, parent: Vec<Option<usize>>, order: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let m = parent.len();
        if m == 0 {
            return Err(Error::InvalidTree("tree has no vertices".into()));
        }
        if root >= m {
            return Err(Error::InvalidTree(format!("root {root} out of range 0..{m}")));
        }
        let mut children = vec![Vec::new(); m];
        for (v, p) in parent.iter().enumerate() {
            match (*p, v == root) {
                (None, true) => {}
                (Some(_), true) => return Err(Error::InvalidTree("root has a parent".into())),
                (None, false) => return Err(Error::InvalidTree(format!("vertex {v} has no parent"))),
                (Some(p), false) => {
                    if p >= m {
                        return Err(Error::InvalidTree(format!("parent {p} of {v} out of range")));
                    }
                    if p == v {
                        return Err(Error::InvalidTree(format!("vertex {v} is its own parent")));
                    }
                    children[p].push(v);
                }
            }
        }
        if let Some(order) = order {
            if order.len() != m {
                return Err(Error::InvalidTree("child order must list every vertex".into()));
            }
            for (v, ord) in order.into_iter().enumerate() {
                let mut a = ord.clone();
                a.sort_unstable();
                if a != children[v] {
                    return Err(Error::InvalidTree(format!("child order of {v} is not a permutation of its children")));
                }
                children[v] = ord;
            }
        }

        let mut depth = vec![usize::MAX; m];
        depth[root] = 0;
        let mut queue = vec![root];
        let mut seen = 1;
        while let Some(v) = queue.pop() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                seen += 1;
                queue.push(c);
            }
        }
        if seen != m {
            return Err(Error::InvalidTree("parent links contain a cycle or are disconnected".into()));
        }
        Ok(RootedTree { root, parent, children, depth })
    }

    pub fn single() -> Self {
        RootedTree::new(0, vec![None], None).unwrap()
    }

    /// The path on `m` vertices rooted at one end: `0 - 1 - ... - m-1`.
    pub fn path(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidTree("path needs at least one vertex".into()));
        }
        let parent = (0..m).map(|v| v.checked_sub(1)).collect();
        RootedTree::new(0, parent, None)
    }

    /// The spider `T_d^k`: every non-leaf has `d` children and every leaf
    /// sits at depth `k`. Vertices are numbered level by level.
    pub fn spider(d: usize, k: usize) -> Result<Self> {
        if d < 2 || k < 1 {
            return Err(Error::InvalidParameter(format!("spider needs d >= 2 and k >= 1, got d={d}, k={k}")));
        }
        let m = spider_order(d, k).ok_or_else(|| Error::InvalidParameter(format!("spider({d},{k}) too large")))?;
        if m > 1 << 24 {
            return Err(Error::InvalidParameter(format!("spider({d},{k}) has {m} vertices")));
        }
        let mut parent = vec![None; m];
        let mut next = 1;
        for v in 0..m {
            if next >= m {
                break;
            }
            for _ in 0..d {
                parent[next] = Some(v);
                next += 1;
            }
        }
        RootedTree::new(0, parent, None)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    pub fn max_children(&self) -> usize {
        self.children.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Strict ancestry: `u` lies on the path from the root to `v`, `u != v`.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        let mut x = v;
        while let Some(p) = self.parent[x] {
            if p == u {
                return true;
            }
            x = p;
        }
        false
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        u == v || self.is_ancestor(u, v) || self.is_ancestor(v, u)
    }

    /// Deepest common ancestor.
    pub fn join(&self, u: usize, v: usize) -> usize {
        let (mut x, mut y) = (u, v);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].unwrap();
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].unwrap();
        }
        while x != y {
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        x
    }

    /// The ancestor of `v` (or `v` itself) at depth `depth`.
    fn ancestor_at(&self, v: usize, depth: usize) -> usize {
        let mut x = v;
        while self.depth[x] > depth {
            x = self.parent[x].unwrap();
        }
        x
    }

    /// True iff `u` comes before `v`, for incomparable `u`, `v`.
    pub fn is_earlier(&self, u: usize, v: usize) -> Result<bool> {
        if self.comparable(u, v) {
            return Err(Error::ComparablePair(u, v));
        }
        let w = self.join(u, v);
        let cu = self.ancestor_at(u, self.depth[w] + 1);
        let cv = self.ancestor_at(v, self.depth[w] + 1);
        let pos = |c| self.children[w].iter().position(|&x| x == c).unwrap();
        Ok(pos(cu) < pos(cv))
    }

    pub fn pair_type(&self, u: usize, v: usize) -> Result<PairType> {
        let (e, l) = if self.is_earlier(u, v)? { (u, v) } else { (v, u) };
        Ok(PairType { a: self.depth[e], b: self.depth[l], c: self.depth[self.join(u, v)] })
    }

    /// Vertices level by level, each level following the child orders.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        out.push(self.root);
        let mut i = 0;
        while i < out.len() {
            let v = out[i];
            out.extend_from_slice(&self.children[v]);
            i += 1;
        }
        out
    }

    /// Maps `small` onto the subtree of `self` hanging at `at`, matching
    /// children position by position. `None` if `small` does not fit.
    pub fn embed_subtree(&self, at: usize, small: &RootedTree) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; small.len()];
        map[small.root] = at;
        let mut stack = vec![small.root];
        while let Some(x) = stack.pop() {
            let big = &self.children[map[x]];
            let kids = &small.children[x];
            if kids.len() > big.len() {
                return None;
            }
            for (i, &c) in kids.iter().enumerate() {
                map[c] = big[i];
                stack.push(c);
            }
        }
        Some(map)
    }

    /// If this tree is exactly `T_d^k` up to relabelling (every internal
    /// vertex has `d` children, every leaf at depth `k`), returns `(d, k)`.
    pub fn spider_shape(&self) -> Option<(usize, usize)> {
        let d = self.children[self.root].len();
        let k = self.height();
        if d < 2 || k < 1 {
            return None;
        }
        let ok = (0..self.len()).all(|v| {
            let c = self.children[v].len();
            if self.depth[v] < k {
                c == d
            } else {
                c == 0
            }
        });
        ok.then_some((d, k))
    }

    /// Canonical class ids of rooted subtrees: equal ids iff the subtrees
    /// are isomorphic as rooted unordered trees.
    pub fn subtree_classes(&self) -> Vec<usize> {
        let mut class = vec![0; self.len()];
        let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut order = self.bfs_order();
        order.reverse();
        for v in order {
            let mut key: Vec<usize> = self.children[v].iter().map(|&c| class[c]).collect();
            key.sort_unstable();
            let next = table.len();
            class[v] = *table.entry(key).or_insert(next);
        }
        class
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            m: self.len(),
            root: self.root,
            parent: self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p))).collect(),
            order: Some(
                self.children.iter().enumerate().filter(|(_, c)| !c.is_empty()).map(|(v, c)| (v, c.clone())).collect(),
            ),
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<Self> {
        if j.m == 0 {
            return Err(Error::InvalidTree("tree has no vertices".into()));
        }
        if j.m > 1 << 20 {
            return Err(Error::InvalidTree(format!("tree with {} vertices is too large", j.m)));
        }
        let mut parent = vec![None; j.m];
        for (&c, &p) in &j.parent {
            if c >= j.m {
                return Err(Error::InvalidTree(format!("vertex {c} out of range")));
            }
            parent[c] = Some(p);
        }
        let order = match &j.order {
            None => None,
            Some(ord) => {
                let mut full: Vec<Vec<usize>> = vec![Vec::new(); j.m];
                for (&v, kids) in ord {
                    if v >= j.m {
                        return Err(Error::InvalidTree(format!("vertex {v} out of range in order")));
                    }
                    full[v] = kids.clone();
                }
                Some(full)
            }
        };
        RootedTree::new(j.root, parent, order)
    }
}

/// `1 + d + ... + d^k`, or `None` on overflow.
pub fn spider_order(d: usize, k: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut level: usize = 1;
    for _ in 0..k {
        level = level.checked_mul(d)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// JSON tree: `{"m", "root", "parent": {child: parent}, "order": {v: [children]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub m: usize,
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<BTreeMap<usize, Vec<usize>>>,
}

/// Result of covering a tree by the smallest spider that contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiderCover {
    pub d: usize,
    pub k: usize,
    /// Tree vertex -> spider vertex.
    pub inclusion: Vec<usize>,
}

/// Smallest `T_d^k` containing `tree` as a root-preserving subtree.
pub fn spider_cover(tree: &RootedTree) -> Result<SpiderCover> {
    let d = tree.max_children().max(2);
    let k = tree.height().max(1);
    let spider = RootedTree::spider(d, k)?;
    let inclusion = spider
        .embed_subtree(spider.root(), tree)
        .ok_or_else(|| Error::Invariant("tree does not fit its spider cover".into()))?;
    Ok(SpiderCover { d, k, inclusion })
}
