//! Spider copy or bounded coloring.
//!
//! For a graph `G`, a vertex `v` and a spider `T_d^k`, [`creature_or_embedding`]
//! either places a path-induced copy of `T_d^k` rooted at `v`, or returns a
//! creature containing `v` together with a small coloring of it. Running
//! that repeatedly and extending colorings backwards (see
//! [`crate::creature::peel_coloring`]) gives [`spider_dichotomy`]: with
//! clique number below `t`, a graph either holds a copy of the spider or is
//! colored with at most `B(t)` colors. Neighbourhood colorings needed along
//! the way come from the same procedure one clique level down.
//!
//! Creature parameters follow `c(1) = d`, `c(j) = c(j-1) + d^j`. Witness
//! palettes follow `f(1) = 1`, `f(j) = f(j-1)·c(j-1) + τ`, where `τ` bounds
//! the neighbourhood colorings, and `B(t) = c(k)·f(k)` with `τ = B(t-1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::creature::{color_classes, extend_within, is_creature_within, peel_partial, Creature, Peel, PeelRecord};
use crate::embed::{
    find_path_induced, find_within, restrict_embedding, verify_path_induced, Embedding, Plan, SearchOptions,
};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, PartialColoring, VertexSet};
use crate::tree::{spider_cover, RootedTree};

/// Largest `t` and `k` the engine accepts; beyond these the bounds stop
/// being meaningful at desk scale.
pub const MAX_T: usize = 12;
pub const MAX_K: usize = 4;

/// The recurrences behind every bound the engine promises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    pub d: u64,
    pub k: u64,
    pub t: u64,
    /// `c[j-1] = c(j)` for `j = 1..=k`.
    pub c: Vec<u64>,
    /// `f[j-1] = f(j)` for `j = 1..=k`, with `τ = tau[t-1]`.
    pub f: Vec<u64>,
    /// `tau[s-1]` is the neighbourhood palette used at clique level `s`.
    pub tau: Vec<u64>,
    /// `bound[s-1] = B(s)`.
    pub bound: Vec<u64>,
}

impl BoundTable {
    pub fn global_bound(&self) -> u64 {
        *self.bound.last().expect("t >= 1")
    }

    pub fn c_at(&self, j: usize) -> u64 {
        self.c[j - 1]
    }

    pub fn f_at(&self, j: usize) -> u64 {
        self.f[j - 1]
    }
}

fn overflow(d: usize, k: usize, t: usize) -> Error {
    Error::BoundOverflow { d: d as u32, k: k as u32, t: t as u32 }
}

fn check_params(d: usize, k: usize, t: usize) -> Result<()> {
    if d < 2 || k < 1 || t < 1 {
        return Err(Error::InvalidParameter(format!("need d >= 2, k >= 1, t >= 1; got d={d}, k={k}, t={t}")));
    }
    Ok(())
}

/// `c(1..=k)`.
pub fn creature_params(d: usize, k: usize) -> Option<Vec<u64>> {
    let d = d as u64;
    let mut c = Vec::with_capacity(k);
    let mut power = d;
    c.push(d);
    for _ in 2..=k {
        power = power.checked_mul(d)?;
        c.push(c.last()?.checked_add(power)?);
    }
    Some(c)
}

/// `f(1..=k)` for a given neighbourhood palette `tau`.
pub fn witness_palettes(c: &[u64], tau: u64) -> Option<Vec<u64>> {
    let mut f = vec![1u64];
    for j in 1..c.len() {
        f.push(f[j - 1].checked_mul(c[j - 1])?.checked_add(tau)?);
    }
    Some(f)
}

/// Largest `t` [`bounds`] will tabulate. For `k = 1` the table never
/// overflows, so the length has to be capped explicitly.
pub const MAX_TABLE_T: usize = 1 << 10;

pub fn bounds(d: usize, k: usize, t: usize) -> Result<BoundTable> {
    check_params(d, k, t)?;
    if t > MAX_TABLE_T {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds {MAX_TABLE_T}")));
    }
    let c = creature_params(d, k).ok_or_else(|| overflow(d, k, t))?;
    let mut tau = vec![0u64];
    let mut bound = vec![0u64];
    let mut f = witness_palettes(&c, 0).ok_or_else(|| overflow(d, k, t))?;
    for s in 2..=t {
        let tau_s = bound[s - 2];
        f = witness_palettes(&c, tau_s).ok_or_else(|| overflow(d, k, t))?;
        let b = if s == 2 { 1 } else { c[k - 1].checked_mul(f[k - 1]).ok_or_else(|| overflow(d, k, t))? };
        tau.push(tau_s);
        bound.push(b);
    }
    Ok(BoundTable { d: d as u64, k: k as u64, t: t as u64, c, f, tau, bound })
}

/// Supplies colorings of neighbourhoods to [`creature_or_embedding`].
pub trait NeighborhoodColorer {
    /// Largest color the colorer may use (`τ`).
    fn palette(&self) -> u64;

    /// Colors the subgraph induced on `within` from `1..=palette()`, or
    /// returns a path-induced copy of the target spider inside it.
    fn color(&mut self, g: &Graph, within: &VertexSet) -> Result<NeighborhoodOutcome>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeighborhoodOutcome {
    /// Colors every vertex of the requested set.
    Colored(PartialColoring),
    /// Map of the target spider, indexed by spider vertex.
    Embedded(Vec<usize>),
}

/// A [`NeighborhoodColorer`] from a closure.
pub struct FnColorer<F> {
    pub tau: u64,
    pub f: F,
}

impl<F> NeighborhoodColorer for FnColorer<F>
where
    F: FnMut(&Graph, &VertexSet) -> Result<NeighborhoodOutcome>,
{
    fn palette(&self) -> u64 {
        self.tau
    }

    fn color(&mut self, g: &Graph, within: &VertexSet) -> Result<NeighborhoodOutcome> {
        (self.f)(g, within)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CreatureOrEmbedding {
    /// Copy of `T_d^k` with the root at the requested vertex.
    Embedding(Embedding),
    /// Copy of `T_d^k` handed up by the neighbourhood colorer.
    Escalated(Embedding),
    Creature(Creature),
}

/// One creature produced during a run, kept for auditing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreatureRecord {
    /// Clique level of the run that produced it (0 for direct calls).
    pub level: usize,
    /// Spider depth `j` of this recursion node.
    pub depth: usize,
    /// Vertex set of the graph the node worked in.
    pub within: Vec<usize>,
    pub v: usize,
    pub members: Vec<usize>,
    pub c: u64,
    /// `f(j)` at this node.
    pub palette: u64,
    pub max_color: u64,
    /// Union of the disjoint sub-spider copies rooted in `N(v)`.
    pub w: Vec<usize>,
    /// Roots of those copies.
    pub a: Vec<usize>,
}

enum Branch {
    Anchored(Vec<usize>),
    Found(Vec<usize>),
    Creature(Creature),
}

/// Per-level constants.
struct Level {
    tau: u64,
    f: Vec<u64>,
    bound: u64,
}

/// Spider trees and search plans for `T_d^j`, `j = 1..=k`, and `c(j)`.
struct Shape {
    d: usize,
    k: usize,
    c: Vec<u64>,
    spiders: Vec<RootedTree>,
    plans: Vec<Plan>,
}

impl Shape {
    fn new(d: usize, k: usize) -> Result<Self> {
        let c = creature_params(d, k).ok_or_else(|| overflow(d, k, 0))?;
        let spiders: Vec<RootedTree> = (1..=k).map(|j| RootedTree::spider(d, j)).collect::<Result<_>>()?;
        let plans = spiders.iter().map(|s| Plan::new(s, false)).collect();
        Ok(Shape { d, k, c, spiders, plans })
    }

    fn spider(&self, j: usize) -> &RootedTree {
        &self.spiders[j - 1]
    }

    fn target(&self) -> &RootedTree {
        self.spider(self.k)
    }
}

type Colorer<'a> = dyn FnMut(&VertexSet, &mut Vec<CreatureRecord>) -> Result<NeighborhoodOutcome> + 'a;

/// Checks a colorer answer for `within` before it is trusted.
fn check_neighborhood(g: &Graph, shape: &Shape, within: &VertexSet, tau: u64, out: &NeighborhoodOutcome) -> Result<()> {
    match out {
        NeighborhoodOutcome::Colored(col) => {
            if col.n() != g.n() {
                return Err(Error::Contract("neighbourhood coloring has the wrong length".into()));
            }
            if within.iter().any(|v| col.get(v) == 0 || col.get(v) > tau) {
                return Err(Error::Contract(format!("neighbourhood coloring leaves 1..={tau}")));
            }
            if !g.is_proper_on(within, col) {
                return Err(Error::Contract("neighbourhood coloring is improper".into()));
            }
        }
        NeighborhoodOutcome::Embedded(map) => {
            let e = Embedding::new(shape.target().clone(), map.clone());
            if !map.iter().all(|&x| within.contains(x)) || !verify_path_induced(g, &e)? {
                return Err(Error::Contract(
                    "neighbourhood embedding is not a path-induced copy inside the set".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Core recursion: copy of `T_d^j` rooted at `v` inside `within`, or a
/// `c(j)`-creature of `G[within]` containing `v` with at most `f(j)` colors.
#[allow(clippy::too_many_arguments)]
fn grow(
    g: &Graph,
    shape: &Shape,
    level: &Level,
    level_no: usize,
    within: &VertexSet,
    v: usize,
    j: usize,
    colorer: &mut Colorer<'_>,
    trace: &mut Vec<CreatureRecord>,
) -> Result<Branch> {
    let d = shape.d;
    let mut nbrs = g.neighbors_unchecked(v);
    nbrs.intersect_with(within);

    if j == 1 {
        if nbrs.len() >= d {
            let mut map = vec![v];
            map.extend(nbrs.iter().take(d));
            return Ok(Branch::Anchored(map));
        }
        let members = VertexSet::from_members(g.n(), [v])?;
        let mut witness = PartialColoring::uncolored(g.n());
        witness.set(v, 1);
        trace.push(CreatureRecord {
            level: level_no,
            depth: 1,
            within: within.to_vec(),
            v,
            members: vec![v],
            c: shape.c[0],
            palette: 1,
            max_color: 1,
            w: Vec::new(),
            a: Vec::new(),
        });
        return Ok(Branch::Creature(Creature { members, c: shape.c[0], witness, palette: 1 }));
    }

    let mut far = within.clone();
    far.difference_with(&nbrs);
    far.remove(v);

    // Greedy maximal family of disjoint copies of T_d^{j-1}, rooted in N(v)
    // and otherwise living in M(v).
    let mut used = VertexSet::empty(g.n());
    let mut family: Vec<(usize, Vec<usize>)> = Vec::new();
    for u in nbrs.iter() {
        if family.len() == d {
            break;
        }
        let mut allowed = far.clone();
        allowed.difference_with(&used);
        allowed.insert(u);
        if let Some(map) = find_within(g, &shape.plans[j - 2], &allowed, Some(u)) {
            for &x in &map {
                used.insert(x);
            }
            family.push((u, map));
        }
    }

    if family.len() == d {
        let big = shape.spider(j);
        let small = shape.spider(j - 1);
        let mut map = vec![usize::MAX; big.len()];
        map[big.root()] = v;
        for (i, (_, sub)) in family.iter().enumerate() {
            let corr = big
                .embed_subtree(big.children(big.root())[i], small)
                .ok_or_else(|| Error::Invariant("sub-spider does not fit".into()))?;
            for (y, &x) in corr.iter().enumerate() {
                map[x] = sub[y];
            }
        }
        return Ok(Branch::Anchored(map));
    }

    let w_bound = (d as u64).pow(j as u32) - 1;
    if used.len() as u64 > w_bound {
        return Err(Error::Invariant(format!("|W| = {} exceeds d^j - 1 = {w_bound}", used.len())));
    }

    let roots: Vec<usize> = family.iter().map(|(u, _)| *u).collect();
    let mut rest = nbrs.clone();
    for &u in &roots {
        rest.remove(u);
    }

    let mut members = VertexSet::empty(g.n());
    members.insert(v);
    let mut subs: Vec<(usize, Creature)> = Vec::new();
    let mut base = far.clone();
    base.difference_with(&used);
    for u in rest.iter() {
        let mut sub_within = base.clone();
        sub_within.insert(u);
        match grow(g, shape, level, level_no, &sub_within, u, j - 1, colorer, trace)? {
            Branch::Anchored(_) => {
                return Err(Error::Invariant(format!("vertex {u} hosts a sub-spider the maximal family missed")));
            }
            Branch::Found(map) => return Ok(Branch::Found(map)),
            Branch::Creature(cr) => {
                members.union_with(&cr.members);
                subs.push((u, cr));
            }
        }
    }

    // Witness: the far parts through repeated extension inside a block of
    // f(j-1)·c(j-1) colors, N(v) ∩ X from a fresh block of τ colors, and v
    // last.
    let c_prev = shape.c[j - 2];
    let f_prev = level.f[j - 2];
    let far_palette = f_prev.checked_mul(c_prev).ok_or_else(|| overflow(d, j, level_no))?;
    let f_here = level.f[j - 1];
    let mut witness = PartialColoring::uncolored(g.n());
    let mut done = VertexSet::empty(g.n());
    for (u, cr) in &subs {
        let mut part = cr.members.clone();
        part.remove(*u);
        if part.is_empty() {
            continue;
        }
        for x in part.iter() {
            witness.clear(x);
        }
        done.union_with(&part);
        let classes = color_classes(&part, &cr.witness);
        extend_within(g, &done, &part, &classes, &mut witness, c_prev, far_palette)?;
    }

    if !rest.is_empty() {
        let out = colorer(&nbrs, trace)?;
        check_neighborhood(g, shape, &nbrs, level.tau, &out)?;
        match out {
            NeighborhoodOutcome::Embedded(map) => return Ok(Branch::Found(map)),
            NeighborhoodOutcome::Colored(col) => {
                for u in rest.iter() {
                    witness.set(u, far_palette + col.get(u));
                }
            }
        }
    }

    let mut taken: Vec<u64> = rest.iter().map(|u| witness.get(u)).collect();
    taken.sort_unstable();
    taken.dedup();
    let mut vc = 1;
    for t in taken {
        if t == vc {
            vc += 1;
        } else if t > vc {
            break;
        }
    }
    witness.set(v, vc);

    let max_color = members.iter().map(|x| witness.get(x)).max().unwrap_or(0);
    if max_color > f_here {
        return Err(Error::Invariant(format!("creature witness uses color {max_color} > f({j}) = {f_here}")));
    }
    if !g.is_proper_on(&members, &witness) {
        return Err(Error::Invariant("creature witness is improper".into()));
    }
    let c_here = shape.c[j - 1];
    if !is_creature_within(g, within, &members, c_here) {
        return Err(Error::Invariant(format!("set around {v} is not a {c_here}-creature")));
    }
    trace.push(CreatureRecord {
        level: level_no,
        depth: j,
        within: within.to_vec(),
        v,
        members: members.to_vec(),
        c: c_here,
        palette: f_here,
        max_color,
        w: used.to_vec(),
        a: roots,
    });
    Ok(Branch::Creature(Creature { members, c: c_here, witness, palette: f_here }))
}

/// Copy of `T_d^k` rooted at `v`, or a `c(k)`-creature containing `v` with a
/// witness coloring of at most `f(k)` colors, where `f` uses the
/// colorer's palette as `τ`.
pub fn creature_or_embedding(
    g: &Graph,
    v: usize,
    d: usize,
    k: usize,
    colorer: &mut dyn NeighborhoodColorer,
) -> Result<CreatureOrEmbedding> {
    Ok(creature_or_embedding_traced(g, v, d, k, colorer)?.0)
}

/// [`creature_or_embedding`] plus the audit records of every creature
/// built on the way.
pub fn creature_or_embedding_traced(
    g: &Graph,
    v: usize,
    d: usize,
    k: usize,
    colorer: &mut dyn NeighborhoodColorer,
) -> Result<(CreatureOrEmbedding, Vec<CreatureRecord>)> {
    check_params(d, k, 1)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let shape = Shape::new(d, k)?;
    let tau = colorer.palette();
    let f = witness_palettes(&shape.c, tau).ok_or_else(|| overflow(d, k, 0))?;
    let bound = shape.c[k - 1].checked_mul(f[k - 1]).ok_or_else(|| overflow(d, k, 0))?;
    let level = Level { tau, f, bound };
    let mut cb = |within: &VertexSet, _: &mut Vec<CreatureRecord>| colorer.color(g, within);
    let mut trace = Vec::new();
    let branch = grow(g, &shape, &level, 0, &VertexSet::full(g.n()), v, k, &mut cb, &mut trace)?;
    let out = match branch {
        Branch::Anchored(map) => CreatureOrEmbedding::Embedding(Embedding::new(shape.target().clone(), map)),
        Branch::Found(map) => CreatureOrEmbedding::Escalated(Embedding::new(shape.target().clone(), map)),
        Branch::Creature(c) => CreatureOrEmbedding::Creature(c),
    };
    Ok((out, trace))
}

/// Declared parameters of a dichotomy run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub d: u64,
    pub k: u64,
    pub t: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Embedding(Embedding),
    Coloring { coloring: Coloring, peels: Vec<PeelRecord> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyResult {
    pub params: Params,
    pub table: BoundTable,
    pub outcome: Outcome,
}

enum Solved {
    Colored { colors: PartialColoring, peels: Vec<PeelRecord> },
    Embedded(Vec<usize>),
}

/// Runs the clique-level recursion for one graph.
pub struct Engine<'g> {
    g: &'g Graph,
    t: usize,
    shape: Shape,
    table: BoundTable,
    levels: Vec<Level>,
    memo: HashMap<(usize, VertexSet), NeighborhoodOutcome>,
    trace: Vec<CreatureRecord>,
    keep_trace: bool,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g Graph, d: usize, k: usize, t: usize) -> Result<Self> {
        check_params(d, k, t)?;
        if k > MAX_K || t > MAX_T {
            return Err(Error::InvalidParameter(format!("k <= {MAX_K} and t <= {MAX_T} required")));
        }
        let table = bounds(d, k, t)?;
        let shape = Shape::new(d, k)?;
        let levels = table
            .tau
            .iter()
            .zip(&table.bound)
            .map(|(&tau, &bound)| {
                Ok(Level { tau, f: witness_palettes(&shape.c, tau).ok_or_else(|| overflow(d, k, t))?, bound })
            })
            .collect::<Result<_>>()?;
        Ok(Engine { g, t, shape, table, levels, memo: HashMap::new(), trace: Vec::new(), keep_trace: false })
    }

    /// Keep an audit record of every creature built.
    pub fn with_trace(mut self, on: bool) -> Self {
        self.keep_trace = on;
        self
    }

    pub fn trace(&self) -> &[CreatureRecord] {
        &self.trace
    }

    pub fn table(&self) -> &BoundTable {
        &self.table
    }

    pub fn run(&mut self) -> Result<DichotomyResult> {
        let params = Params { d: self.table.d, k: self.table.k, t: self.table.t, bound: self.table.global_bound() };
        let all = VertexSet::full(self.g.n());
        let mut trace = Vec::new();
        let solved =
            solve_level(self.g, &self.shape, &self.levels, &mut self.memo, self.t, &all, &mut trace, self.keep_trace)?;
        if self.keep_trace {
            self.trace = trace;
        }
        let outcome = match solved {
            Solved::Embedded(map) => Outcome::Embedding(Embedding::new(self.shape.target().clone(), map)),
            Solved::Colored { colors, peels } => {
                Outcome::Coloring { coloring: colors.into_total(params.bound)?, peels }
            }
        };
        Ok(DichotomyResult { params, table: self.table.clone(), outcome })
    }
}

/// Colors `G[within]` within `B(level)` colors by peeling creatures, or
/// returns a copy of the target spider. Neighbourhood colorings come from
/// the level below and are memoized per vertex set.
#[allow(clippy::too_many_arguments)]
fn solve_level(
    g: &Graph,
    shape: &Shape,
    levels: &[Level],
    memo: &mut HashMap<(usize, VertexSet), NeighborhoodOutcome>,
    level: usize,
    within: &VertexSet,
    trace: &mut Vec<CreatureRecord>,
    keep: bool,
) -> Result<Solved> {
    if within.is_empty() {
        return Ok(Solved::Colored { colors: PartialColoring::uncolored(g.n()), peels: Vec::new() });
    }
    if level == 1 {
        return Err(Error::BaseCliqueViolation { t: 1 });
    }
    if level == 2 {
        if !g.is_stable(within) {
            return Err(Error::BaseCliqueViolation { t: 2 });
        }
        let mut colors = PartialColoring::uncolored(g.n());
        let peels = within
            .iter()
            .map(|v| {
                colors.set(v, 1);
                PeelRecord { members: vec![v], c: 1, a: 1 }
            })
            .collect();
        return Ok(Solved::Colored { colors, peels });
    }
    let lv = &levels[level - 1];
    let mut provider = |residual: &VertexSet, v: usize| -> Result<Peel<Vec<usize>>> {
        let mut colorer = |nb: &VertexSet, tr: &mut Vec<CreatureRecord>| -> Result<NeighborhoodOutcome> {
            let key = (level - 1, nb.clone());
            if let Some(hit) = memo.get(&key) {
                return Ok(hit.clone());
            }
            let out = match solve_level(g, shape, levels, memo, level - 1, nb, tr, keep)? {
                Solved::Embedded(map) => NeighborhoodOutcome::Embedded(map),
                Solved::Colored { colors, .. } => NeighborhoodOutcome::Colored(colors),
            };
            memo.insert(key, out.clone());
            Ok(out)
        };
        let mut local = Vec::new();
        let branch = grow(g, shape, lv, level, residual, v, shape.k, &mut colorer, &mut local)?;
        if keep {
            trace.append(&mut local);
        }
        Ok(match branch {
            Branch::Anchored(map) | Branch::Found(map) => Peel::Abort(map),
            Branch::Creature(c) => Peel::Creature(c),
        })
    };
    match peel_partial(g, within, &mut provider)? {
        Err(map) => Ok(Solved::Embedded(map)),
        Ok((colors, palette, peels)) => {
            if palette > lv.bound {
                return Err(Error::Invariant(format!("level {level} palette {palette} exceeds B = {}", lv.bound)));
            }
            Ok(Solved::Colored { colors, peels })
        }
    }
}

/// Path-induced copy of `T_d^k`, or a proper coloring with at most `B(t)`
/// colors. The second branch is guaranteed whenever no copy exists and the
/// clique number is below `t`; when the clique number is too large the run
/// may instead fail with [`Error::BaseCliqueViolation`].
pub fn spider_dichotomy(g: &Graph, d: usize, k: usize, t: usize) -> Result<DichotomyResult> {
    Engine::new(g, d, k, t)?.run()
}

/// [`spider_dichotomy`] for an arbitrary rooted tree, through the smallest
/// spider containing it. A direct search for the tree runs first.
pub fn tree_dichotomy(g: &Graph, tree: &RootedTree, t: usize) -> Result<DichotomyResult> {
    let cover = spider_cover(tree)?;
    let table = bounds(cover.d, cover.k, t)?;
    if let Some(e) = find_path_induced(g, tree, None, &SearchOptions::default())?.found() {
        let params = Params { d: table.d, k: table.k, t: table.t, bound: table.global_bound() };
        return Ok(DichotomyResult { params, table, outcome: Outcome::Embedding(e.clone()) });
    }
    let mut res = spider_dichotomy(g, cover.d, cover.k, t)?;
    if let Outcome::Embedding(e) = &res.outcome {
        res.outcome = Outcome::Embedding(restrict_embedding(e, tree, &cover)?);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::creature::is_creature;

    fn kmn(m: usize, n: usize) -> Graph {
        Graph::new(m + n, (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j)))).unwrap()
    }

    fn greedy(tau: u64) -> FnColorer<impl FnMut(&Graph, &VertexSet) -> Result<NeighborhoodOutcome>> {
        FnColorer {
            tau,
            f: |g: &Graph, within: &VertexSet| {
                let mut col = PartialColoring::uncolored(g.n());
                for v in within.iter() {
                    let mut c = 1;
                    while g.neighbors_unchecked(v).iter().any(|u| within.contains(u) && col.get(u) == c) {
                        c += 1;
                    }
                    col.set(v, c);
                }
                Ok(NeighborhoodOutcome::Colored(col))
            },
        }
    }

    #[test]
    fn c_table() {
        assert_eq!(creature_params(2, 3).unwrap(), vec![2, 6, 14]);
        assert_eq!(creature_params(3, 2).unwrap(), vec![3, 12]);
    }

    #[test]
    fn bound_table_examples() {
        let b = bounds(2, 2, 3).unwrap();
        assert_eq!(b.f, vec![1, 3]);
        assert_eq!(b.bound, vec![0, 1, 18]);
        assert_eq!(b.tau, vec![0, 0, 1]);
        for d in 2..5 {
            for t in 1..5 {
                assert_eq!(bounds(d, 3, t).unwrap().f[0], 1);
            }
        }
        let b = bounds(2, 3, 3).unwrap();
        assert_eq!(b.f, vec![1, 3, 19]);
        assert_eq!(b.global_bound(), 266);
        assert!(bounds(1, 1, 1).is_err());
        assert!(bounds(2, 0, 1).is_err());
        assert!(bounds(2, 1, 0).is_err());
        assert!(matches!(bounds(1000, 4, 12), Err(Error::BoundOverflow { .. })));
    }

    #[test]
    fn star_gives_embedding() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let out = creature_or_embedding(&star, 0, 2, 1, &mut greedy(1)).unwrap();
        match out {
            CreatureOrEmbedding::Embedding(e) => {
                assert_eq!(e.map(), &[0, 1, 2]);
                assert!(verify_path_induced(&star, &e).unwrap());
            }
            other => panic!("expected embedding, got {other:?}"),
        }
    }

    #[test]
    fn low_degree_gives_singleton_creature() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        match creature_or_embedding(&k2, 0, 2, 1, &mut greedy(1)).unwrap() {
            CreatureOrEmbedding::Creature(c) => {
                assert_eq!(c.members.to_vec(), vec![0]);
                assert_eq!(c.c, 2);
                assert_eq!(c.witness.get(0), 1);
                assert!(is_creature(&k2, &c.members, 2));
            }
            other => panic!("expected creature, got {other:?}"),
        }
    }

    #[test]
    fn complete_bipartite_creature() {
        let g = kmn(5, 5);
        for v in 0..10 {
            let (out, trace) = creature_or_embedding_traced(&g, v, 2, 3, &mut greedy(1)).unwrap();
            let CreatureOrEmbedding::Creature(c) = out else { panic!("no embedding exists") };
            assert!(c.members.contains(v));
            assert!(is_creature(&g, &c.members, 14));
            assert!(c.members.iter().all(|x| c.witness.get(x) <= 19));
            assert!(g.is_proper_on(&c.members, &c.witness));
            assert!(!trace.is_empty());
        }
    }

    #[test]
    fn colorer_contract_is_checked() {
        let g = kmn(3, 3);
        let mut bad = FnColorer {
            tau: 1,
            f: |g: &Graph, within: &VertexSet| {
                let mut col = PartialColoring::uncolored(g.n());
                for v in within.iter() {
                    col.set(v, 2);
                }
                Ok(NeighborhoodOutcome::Colored(col))
            },
        };
        assert!(matches!(creature_or_embedding(&g, 0, 2, 3, &mut bad), Err(Error::Contract(_))));
    }

    #[test]
    fn edgeless_one_color() {
        let g = Graph::edgeless(7);
        let r = spider_dichotomy(&g, 2, 2, 2).unwrap();
        let Outcome::Coloring { coloring, peels } = r.outcome else { panic!() };
        assert_eq!(coloring.palette(), 1);
        assert_eq!(coloring.distinct_colors(), 1);
        assert_eq!(peels.len(), 7);
    }

    #[test]
    fn base_level_rejects_edges() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(spider_dichotomy(&g, 2, 2, 2), Err(Error::BaseCliqueViolation { t: 2 })));
        assert!(matches!(spider_dichotomy(&g, 2, 2, 1), Err(Error::BaseCliqueViolation { t: 1 })));
        assert!(spider_dichotomy(&Graph::edgeless(0), 2, 2, 1).is_ok());
    }

    #[test]
    fn complete_bipartite_colors() {
        let g = kmn(5, 5);
        let r = spider_dichotomy(&g, 2, 3, 3).unwrap();
        assert_eq!(r.params.bound, 266);
        let Outcome::Coloring { coloring, .. } = r.outcome else { panic!("K5,5 has no path-induced P4") };
        assert!(g.is_proper_coloring(&coloring).unwrap());
        assert!(coloring.max_color() <= 266);
    }

    #[test]
    fn tree_dichotomy_single_vertex() {
        let g = Graph::edgeless(3);
        let r = tree_dichotomy(&g, &RootedTree::single(), 2).unwrap();
        let Outcome::Embedding(e) = r.outcome else { panic!() };
        assert_eq!(e.map(), &[0]);
    }

    #[test]
    fn tree_dichotomy_p4_in_bipartite() {
        let g = kmn(4, 4);
        let r = tree_dichotomy(&g, &RootedTree::path(4).unwrap(), 3).unwrap();
        assert!(matches!(r.outcome, Outcome::Coloring { .. }));
        assert_eq!((r.params.d, r.params.k, r.params.bound), (2, 3, 266));
    }
}
