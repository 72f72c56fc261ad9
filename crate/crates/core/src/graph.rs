//! Simple undirected graphs with bitset adjacency, vertex subsets and
//! colorings.
//!
//! A [`Graph`] is immutable once built. Vertices are `0..n`. Every row of
//! the adjacency matrix is a packed bitset, so edge queries are constant
//! time and neighbourhood intersections are word-parallel.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A subset of `{0..n}` stored as a packed bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds a set from members, rejecting anything outside `0..n`.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = VertexSet::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Panics if `v` is outside the universe.
    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Number of members of `self ∩ row`, where `row` is a raw bitset of
    /// the same universe.
    #[inline]
    pub(crate) fn count_in_row(&self, row: &[u64]) -> usize {
        self.words.iter().zip(row).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        let stride = words_for(n);
        Graph { n, stride, rows: vec![0; n * stride], edges: 0 }
    }

    /// Adds `u-v` if absent. Only used while a graph is being assembled.
    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.has_edge(u, v) {
            return;
        }
        self.rows[u * self.stride + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.stride + u / WORD] |= 1 << (u % WORD);
        self.edges += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        Ok(self.neighbors_unchecked(v))
    }

    pub(crate) fn neighbors_unchecked(&self, v: usize) -> VertexSet {
        VertexSet { n: self.n, words: self.row(v).to_vec() }
    }

    /// `M(v)`: every vertex other than `v` that is not adjacent to it.
    pub fn non_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check(v)?;
        let mut s = VertexSet::full(self.n);
        s.difference_with(&self.neighbors_unchecked(v));
        s.remove(v);
        Ok(s)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors_unchecked(u).iter().filter(move |&v| v > u).map(move |v| (u, v)).collect::<Vec<_>>()
        })
    }

    /// True iff no edge has both ends in `s`.
    pub fn is_stable(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| s.count_in_row(self.row(v)) == 0)
    }

    /// Number of neighbours of `v` inside `s`.
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        s.count_in_row(self.row(v))
    }

    /// The subgraph induced on `s`, re-indexed to `0..|s|` in ascending
    /// order of the original ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        if s.universe() != self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex set universe {} does not match graph order {}",
                s.universe(),
                self.n
            )));
        }
        let new_to_old = s.to_vec();
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let mut graph = Graph::edgeless(new_to_old.len());
        for (i, &u) in new_to_old.iter().enumerate() {
            for (j, &v) in new_to_old.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    graph.link(i, j);
                }
            }
        }
        Ok(InducedSubgraph { graph, old_to_new, new_to_old })
    }

    /// True iff `coloring` gives distinct colors to the ends of every edge.
    pub fn is_proper_coloring(&self, coloring: &Coloring) -> Result<bool> {
        if coloring.colors.len() != self.n {
            return Err(Error::PartialColoring(coloring.colors.len().min(self.n)));
        }
        Ok(self.edges().all(|(u, v)| coloring.colors[u] != coloring.colors[v]))
    }

    /// Checks a partial coloring on the vertices of `within` only.
    pub fn is_proper_on(&self, within: &VertexSet, coloring: &PartialColoring) -> bool {
        within.iter().all(|u| {
            let cu = coloring.get(u);
            cu != 0
                && self
                    .neighbors_unchecked(u)
                    .iter()
                    .filter(|&v| v > u && within.contains(v))
                    .all(|v| coloring.get(v) != cu)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

/// A subgraph together with the index maps between it and its parent.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// Total coloring with colors in `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u64>,
    palette: u64,
}

impl Coloring {
    pub fn new(colors: Vec<u64>, palette: u64) -> Result<Self> {
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c > palette {
                return Err(Error::ColorOutOfPalette { vertex: v, color: c, palette });
            }
        }
        Ok(Coloring { colors, palette })
    }

    pub fn color(&self, v: usize) -> u64 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn palette(&self) -> u64 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Same assignment, larger declared palette.
    pub fn widen(mut self, palette: u64) -> Result<Self> {
        if palette < self.max_color() {
            return Err(Error::PaletteTooSmall { palette, needed: self.max_color() });
        }
        self.palette = palette;
        Ok(self)
    }

    pub fn max_color(&self) -> u64 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Repeated first-fit recoloring followed by relabelling to `1..=q`.
    ///
    /// Each vertex, in ascending order, moves to the smallest color absent
    /// from its neighbourhood. A proper input stays proper and no vertex
    /// ever gets a larger color, so this converges.
    pub fn compact(&self, g: &Graph) -> Result<Coloring> {
        if !g.is_proper_coloring(self)? {
            return Err(Error::InvalidParameter("cannot compact an improper coloring".into()));
        }
        let mut colors = relabel(&self.colors);
        loop {
            let mut changed = false;
            for v in 0..g.n() {
                let mut used: Vec<u64> = g.neighbors_unchecked(v).iter().map(|u| colors[u]).collect();
                used.sort_unstable();
                used.dedup();
                let mut best = 1;
                for c in used {
                    if c == best {
                        best += 1;
                    } else if c > best {
                        break;
                    }
                }
                if best < colors[v] {
                    colors[v] = best;
                    changed = true;
                }
            }
            colors = relabel(&colors);
            if !changed {
                break;
            }
        }
        let palette = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(colors, palette)
    }
}

fn relabel(colors: &[u64]) -> Vec<u64> {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors.iter().map(|c| distinct.binary_search(c).unwrap() as u64 + 1).collect()
}

/// Coloring of some vertices of a graph; color `0` means unassigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    colors: Vec<u64>,
}

impl PartialColoring {
    pub fn uncolored(n: usize) -> Self {
        PartialColoring { colors: vec![0; n] }
    }

    pub fn from_colors(colors: Vec<u64>) -> Self {
        PartialColoring { colors }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn get(&self, v: usize) -> u64 {
        self.colors[v]
    }

    #[inline]
    pub fn set(&mut self, v: usize, color: u64) {
        self.colors[v] = color;
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = 0;
    }

    pub fn is_colored(&self, v: usize) -> bool {
        self.colors[v] != 0
    }

    pub fn colored(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.colors.len());
        for (v, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                s.insert(v);
            }
        }
        s
    }

    pub fn max_color(&self) -> u64 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    /// Converts to a total coloring; fails if any vertex is unassigned.
    pub fn into_total(self, palette: u64) -> Result<Coloring> {
        if let Some(v) = self.colors.iter().position(|&c| c == 0) {
            return Err(Error::PartialColoring(v));
        }
        Coloring::new(self.colors, palette)
    }
}

impl From<&Coloring> for PartialColoring {
    fn from(c: &Coloring) -> Self {
        PartialColoring { colors: c.colors.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(triangle().neighbors(0).unwrap().to_vec(), vec![1, 2]);
        assert!(Graph::edgeless(3).neighbors(1).unwrap().is_empty());
        assert_eq!(c4().neighbors(0).unwrap().to_vec(), vec![1, 3]);
        assert!(matches!(c4().neighbors(4), Err(Error::VertexOutOfRange { vertex: 4, n: 4 })));
    }

    #[test]
    fn non_neighborhood_examples() {
        assert!(triangle().non_neighborhood(0).unwrap().is_empty());
        assert_eq!(c4().non_neighborhood(0).unwrap().to_vec(), vec![2]);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.non_neighborhood(0).unwrap().is_empty());
        assert!(c4().non_neighborhood(9).is_err());
    }

    #[test]
    fn stable_examples() {
        assert!(c4().is_stable(&set(4, &[0, 2])));
        assert!(!triangle().is_stable(&set(3, &[0, 1])));
        assert!(triangle().is_stable(&VertexSet::empty(3)));
    }

    #[test]
    fn induced_examples() {
        let p3 = c4().induced_subgraph(&set(4, &[0, 1, 2])).unwrap();
        assert_eq!(p3.graph, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let k2 = k4.induced_subgraph(&set(4, &[0, 1])).unwrap();
        assert_eq!(k2.graph, Graph::new(2, [(0, 1)]).unwrap());
        let all = c4().induced_subgraph(&VertexSet::full(4)).unwrap();
        assert_eq!(all.graph, c4());
        assert_eq!(all.new_to_old, vec![0, 1, 2, 3]);
    }

    #[test]
    fn proper_coloring_examples() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert!(k2.is_proper_coloring(&Coloring::new(vec![1, 2], 2).unwrap()).unwrap());
        assert!(!k2.is_proper_coloring(&Coloring::new(vec![1, 1], 2).unwrap()).unwrap());
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(c5.is_proper_coloring(&Coloring::new(vec![1, 2, 1, 2, 3], 3).unwrap()).unwrap());
        assert!(matches!(k2.is_proper_coloring(&Coloring::new(vec![1], 2).unwrap()), Err(Error::PartialColoring(_))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::VertexOutOfRange { .. })));
        assert!(Coloring::new(vec![0], 1).is_err());
        assert!(Coloring::new(vec![3], 2).is_err());
    }

    #[test]
    fn compact_bipartite_to_two() {
        let k33 = Graph::new(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).unwrap();
        let c = Coloring::new(vec![1, 169, 169, 253, 253, 253], 266).unwrap();
        let q = c.compact(&k33).unwrap();
        assert_eq!(q.distinct_colors(), 2);
        assert!(k33.is_proper_coloring(&q).unwrap());
    }

    #[test]
    fn vertex_set_ops() {
        let mut a = set(130, &[0, 64, 129]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.first(), Some(0));
        a.remove(0);
        assert_eq!(a.first(), Some(64));
        let b = set(130, &[64, 100]);
        assert!(!a.is_disjoint(&b));
        a.difference_with(&b);
        assert_eq!(a.to_vec(), vec![129]);
        assert!(VertexSet::from_members(3, [3]).is_err());
    }
}
