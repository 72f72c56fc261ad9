//! Structure predicates on spider copies and extraction of better-behaved
//! sub-copies.
//!
//! A copy is level-stable when each level of the tree maps to a stable set,
//! and type-uniform when adjacency between images of incomparable tree
//! vertices depends only on the pair type. [`refine_embedding`] keeps `d`
//! of the `D` children at every internal vertex, level by level, so that
//! the requested predicates hold. It is an exact search over those
//! choices with no promise about how large `D` must be.

use std::collections::HashMap;
use std::str::FromStr;

use crate::embed::{verify_path_induced, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::tree::{PairType, RootedTree};

const REFINE_BUDGET: u64 = 20_000_000;

fn require_valid(g: &Graph, phi: &Embedding) -> Result<()> {
    if verify_path_induced(g, phi)? {
        Ok(())
    } else {
        Err(Error::InvalidParameter("embedding is not path-induced".into()))
    }
}

pub fn is_level_stable(g: &Graph, phi: &Embedding) -> Result<bool> {
    require_valid(g, phi)?;
    let tree = phi.tree();
    let mut levels = vec![VertexSet::empty(g.n()); tree.height() + 1];
    for v in 0..tree.len() {
        levels[tree.depth(v)].insert(phi.map()[v]);
    }
    Ok(levels.iter().all(|s| g.is_stable(s)))
}

pub fn is_type_uniform(g: &Graph, phi: &Embedding) -> Result<bool> {
    require_valid(g, phi)?;
    let tree = phi.tree();
    let mut seen: HashMap<PairType, bool> = HashMap::new();
    for u in 0..tree.len() {
        for v in u + 1..tree.len() {
            if tree.comparable(u, v) {
                continue;
            }
            let adj = g.has_edge(phi.map()[u], phi.map()[v]);
            if *seen.entry(tree.pair_type(u, v)?).or_insert(adj) != adj {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Goals {
    pub level_stable: bool,
    pub type_uniform: bool,
}

impl FromStr for Goals {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut goals = Goals::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "level_stable" => goals.level_stable = true,
                "type_uniform" => goals.type_uniform = true,
                other => return Err(Error::InvalidParameter(format!("unknown goal {other:?}"))),
            }
        }
        Ok(goals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefineOutcome {
    Refined(Embedding),
    /// No choice of `d` children per vertex meets the goals.
    InsufficientBranching,
    /// The search budget ran out first.
    Exhausted,
}

/// From a copy of `T_D^k`, extracts a copy of `T_d^k` meeting `goals`.
///
/// Internal vertices of the output are handled in level order (by depth,
/// then by position among the earlier branches); each picks `d` of its
/// source vertex's children, trying subsets in lexicographic order of
/// child position, and every new image is checked against the images
/// already placed.
pub fn refine_embedding(g: &Graph, phi: &Embedding, d: usize, goals: Goals) -> Result<RefineOutcome> {
    require_valid(g, phi)?;
    let (big_d, k) = phi
        .tree()
        .spider_shape()
        .ok_or_else(|| Error::InvalidParameter("embedding is not a copy of a spider".into()))?;
    if d < 2 || d > big_d {
        return Err(Error::InvalidParameter(format!("target branching {d} must lie in 2..={big_d}")));
    }
    let out = RootedTree::spider(d, k)?;
    let mut src = vec![usize::MAX; out.len()];
    src[out.root()] = phi.tree().root();
    let internal: Vec<usize> = out.bfs_order().into_iter().filter(|&v| !out.children(v).is_empty()).collect();
    let subsets = combinations(big_d, d);

    let mut search = Refiner {
        g,
        phi,
        out: &out,
        goals,
        internal: &internal,
        subsets: &subsets,
        src,
        types: HashMap::new(),
        expansions: 0,
    };
    Ok(match search.place(0) {
        Some(true) => {
            let map = search.src.iter().map(|&s| phi.map()[s]).collect();
            let e = Embedding::new(out.clone(), map);
            debug_assert!(verify_path_induced(g, &e)?);
            RefineOutcome::Refined(e)
        }
        Some(false) => RefineOutcome::InsufficientBranching,
        None => RefineOutcome::Exhausted,
    })
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else { break };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

struct Refiner<'a> {
    g: &'a Graph,
    phi: &'a Embedding,
    out: &'a RootedTree,
    goals: Goals,
    internal: &'a [usize],
    subsets: &'a [Vec<usize>],
    /// Output vertex -> source tree vertex (`usize::MAX` while unplaced).
    src: Vec<usize>,
    types: HashMap<PairType, bool>,
    expansions: u64,
}

impl Refiner<'_> {
    fn image(&self, o: usize) -> usize {
        self.phi.map()[self.src[o]]
    }

    /// `Some(true)` on success, `Some(false)` when exhausted without one,
    /// `None` when the budget ran out.
    fn place(&mut self, idx: usize) -> Option<bool> {
        if idx == self.internal.len() {
            return Some(true);
        }
        let o = self.internal[idx];
        let kids = self.out.children(o).to_vec();
        let source_kids = self.phi.tree().children(self.src[o]).to_vec();
        for subset in self.subsets {
            self.expansions += 1;
            if self.expansions > REFINE_BUDGET {
                return None;
            }
            let mut added: Vec<PairType> = Vec::new();
            let mut ok = true;
            for (i, &pos) in subset.iter().enumerate() {
                self.src[kids[i]] = source_kids[pos];
                if !self.admit(kids[i], &mut added) {
                    ok = false;
                    // Undo this child so later checks only see placed vertices.
                    self.src[kids[i]] = usize::MAX;
                    for &c in &kids[..i] {
                        self.src[c] = usize::MAX;
                    }
                    break;
                }
            }
            if ok {
                match self.place(idx + 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                for &c in &kids {
                    self.src[c] = usize::MAX;
                }
            }
            for t in added {
                self.types.remove(&t);
            }
        }
        Some(false)
    }

    /// Checks a freshly placed output vertex against everything placed.
    fn admit(&mut self, x: usize, added: &mut Vec<PairType>) -> bool {
        let ix = self.image(x);
        for y in 0..self.out.len() {
            if y == x || self.src[y] == usize::MAX {
                continue;
            }
            let iy = self.image(y);
            let adj = self.g.has_edge(ix, iy);
            if self.goals.level_stable && adj && self.out.depth(y) == self.out.depth(x) {
                return false;
            }
            if self.goals.type_uniform && !self.out.comparable(x, y) {
                let t = self.out.pair_type(x, y).expect("incomparable");
                match self.types.get(&t) {
                    Some(&seen) if seen != adj => return false,
                    Some(_) => {}
                    None => {
                        self.types.insert(t, adj);
                        added.push(t);
                    }
                }
            }
        }
        true
    }
}
