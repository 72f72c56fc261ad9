//! Creatures and the coloring extension they allow.
//!
//! `X` is a `c`-creature of `G` when every vertex of `X` has fewer than `c`
//! neighbours outside `X`. If `X` splits into `a` stable parts and the rest
//! of the graph is colored from a palette of at least `a·c` colors, then
//! part `i` can be colored from its own block
//! `J_i = {(i-1)c+1, ..., ic}` without touching the existing colors.
//! Peeling creatures one after another and extending in reverse yields a
//! coloring of the whole graph.

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph, PartialColoring, VertexSet};

/// A creature together with a proper coloring of the subgraph it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Creature {
    pub members: VertexSet,
    pub c: u64,
    /// Colors exactly the members, within `1..=palette`.
    pub witness: PartialColoring,
    pub palette: u64,
}

impl Creature {
    /// Color classes of the witness; `parts[i]` holds the vertices of
    /// color `i + 1`. Trailing empty classes are dropped.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        color_classes(&self.members, &self.witness)
    }
}

pub(crate) fn color_classes(members: &VertexSet, coloring: &PartialColoring) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in members.iter() {
        let c = coloring.get(v) as usize;
        debug_assert!(c > 0);
        if parts.len() < c {
            parts.resize(c, Vec::new());
        }
        parts[c - 1].push(v);
    }
    parts
}

pub fn is_creature(g: &Graph, x: &VertexSet, c: u64) -> bool {
    is_creature_within(g, &VertexSet::full(g.n()), x, c)
}

/// Creature test in the subgraph induced on `within`.
pub(crate) fn is_creature_within(g: &Graph, within: &VertexSet, x: &VertexSet, c: u64) -> bool {
    first_creature_violation(g, within, x, c).is_none()
}

fn first_creature_violation(g: &Graph, within: &VertexSet, x: &VertexSet, c: u64) -> Option<(usize, usize)> {
    let mut outside = within.clone();
    outside.difference_with(x);
    x.iter().map(|v| (v, g.degree_into(v, &outside))).find(|&(_, d)| d as u64 >= c)
}

/// Extends `kappa` (a coloring of `G \ X`) to all of `G`, coloring the
/// vertices of part `i` from block `J_i`.
///
/// `parts` must partition `x` into stable sets, `x` must be a `c`-creature
/// and `p >= parts.len() * c`.
pub fn extend_coloring(
    g: &Graph,
    x: &VertexSet,
    parts: &[Vec<usize>],
    kappa: &PartialColoring,
    c: u64,
    p: u64,
) -> Result<Coloring> {
    if kappa.n() != g.n() {
        return Err(Error::InvalidParameter(format!("coloring covers {} vertices, graph has {}", kappa.n(), g.n())));
    }
    let mut out = kappa.clone();
    extend_within(g, &VertexSet::full(g.n()), x, parts, &mut out, c, p)?;
    out.into_total(p)
}

/// [`extend_coloring`] on the subgraph induced by `within`. On success
/// `kappa` colors every vertex of `within`.
pub(crate) fn extend_within(
    g: &Graph,
    within: &VertexSet,
    x: &VertexSet,
    parts: &[Vec<usize>],
    kappa: &mut PartialColoring,
    c: u64,
    p: u64,
) -> Result<()> {
    let needed = (parts.len() as u64).checked_mul(c).ok_or(Error::PaletteTooSmall { palette: p, needed: u64::MAX })?;
    if p < needed {
        return Err(Error::PaletteTooSmall { palette: p, needed });
    }
    if !x.is_subset(within) {
        return Err(Error::InvalidParameter("creature is not inside the graph".into()));
    }
    let mut covered = VertexSet::empty(g.n());
    for part in parts {
        for &v in part {
            if v >= g.n() || !x.contains(v) || covered.contains(v) {
                return Err(Error::InvalidParameter(format!("parts do not partition the creature (vertex {v})")));
            }
            covered.insert(v);
        }
    }
    if covered != *x {
        return Err(Error::InvalidParameter("parts do not cover the creature".into()));
    }
    for (i, part) in parts.iter().enumerate() {
        let s = VertexSet::from_members(g.n(), part.iter().copied())?;
        if !g.is_stable(&s) {
            return Err(Error::NonStablePart { part: i });
        }
    }
    if let Some((vertex, outside)) = first_creature_violation(g, within, x, c) {
        return Err(Error::CreatureViolated { vertex, outside, c });
    }

    let mut rest = within.clone();
    rest.difference_with(x);
    for v in rest.iter() {
        let cv = kappa.get(v);
        if cv == 0 {
            return Err(Error::PartialColoring(v));
        }
        if cv > p {
            return Err(Error::ColorOutOfPalette { vertex: v, color: cv, palette: p });
        }
        if let Some(u) = g.neighbors_unchecked(v).iter().find(|&u| u > v && rest.contains(u) && kappa.get(u) == cv) {
            return Err(Error::ImproperBaseColoring(v, u));
        }
    }

    for (i, part) in parts.iter().enumerate() {
        let lo = i as u64 * c + 1;
        for &v in part {
            let mut taken: Vec<u64> = g
                .neighbors_unchecked(v)
                .iter()
                .filter(|&u| rest.contains(u))
                .map(|u| kappa.get(u))
                .filter(|&col| col >= lo && col < lo + c)
                .collect();
            taken.sort_unstable();
            taken.dedup();
            let mut color = lo;
            for t in taken {
                if t == color {
                    color += 1;
                } else {
                    break;
                }
            }
            if color >= lo + c {
                return Err(Error::Invariant(format!("block {} exhausted at vertex {v}", i + 1)));
            }
            kappa.set(v, color);
        }
    }
    Ok(())
}

/// One removal step of [`peel_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelRecord {
    pub members: Vec<usize>,
    pub c: u64,
    pub a: u64,
}

/// What a peel provider hands back for the chosen vertex.
#[derive(Debug, Clone)]
pub enum Peel<B> {
    Creature(Creature),
    Abort(B),
}

#[derive(Debug, Clone)]
pub enum PeelOutcome<B> {
    Colored { coloring: Coloring, peels: Vec<PeelRecord> },
    Aborted(B),
}

/// Colors `g` by repeatedly asking `provider` for a creature of the
/// residual graph containing its smallest vertex, then extending colorings
/// back in reverse order. The palette is the largest `a·c` over all peels.
pub fn peel_coloring<B>(
    g: &Graph,
    mut provider: impl FnMut(&VertexSet, usize) -> Result<Peel<B>>,
) -> Result<PeelOutcome<B>> {
    match peel_partial(g, &VertexSet::full(g.n()), &mut provider)? {
        Ok((colors, palette, peels)) => Ok(PeelOutcome::Colored { coloring: colors.into_total(palette)?, peels }),
        Err(b) => Ok(PeelOutcome::Aborted(b)),
    }
}

type PeelDone = (PartialColoring, u64, Vec<PeelRecord>);

pub(crate) fn peel_partial<B>(
    g: &Graph,
    within: &VertexSet,
    provider: &mut impl FnMut(&VertexSet, usize) -> Result<Peel<B>>,
) -> Result<std::result::Result<PeelDone, B>> {
    let mut residual = within.clone();
    let mut steps: Vec<(VertexSet, Creature)> = Vec::new();
    let mut palette = 0u64;
    while let Some(v) = residual.first() {
        let creature = match provider(&residual, v)? {
            Peel::Creature(c) => c,
            Peel::Abort(b) => return Ok(Err(b)),
        };
        check_provided(g, &residual, v, &creature)?;
        let need = creature
            .palette
            .checked_mul(creature.c)
            .ok_or_else(|| Error::InvalidParameter("creature palette overflows".into()))?;
        palette = palette.max(need);
        let before = residual.clone();
        residual.difference_with(&creature.members);
        steps.push((before, creature));
    }

    let mut colors = PartialColoring::uncolored(g.n());
    let mut peels = Vec::with_capacity(steps.len());
    for (before, creature) in steps.iter().rev() {
        extend_within(g, before, &creature.members, &creature.parts(), &mut colors, creature.c, palette)?;
    }
    for (_, creature) in &steps {
        peels.push(PeelRecord { members: creature.members.to_vec(), c: creature.c, a: creature.palette });
    }
    Ok(Ok((colors, palette, peels)))
}

fn check_provided(g: &Graph, residual: &VertexSet, v: usize, cr: &Creature) -> Result<()> {
    let x = &cr.members;
    if !x.contains(v) {
        return Err(Error::Contract(format!("creature misses the chosen vertex {v}")));
    }
    if !x.is_subset(residual) {
        return Err(Error::Contract("creature leaves the residual graph".into()));
    }
    if !is_creature_within(g, residual, x, cr.c) {
        return Err(Error::Contract(format!("set is not a {}-creature of the residual graph", cr.c)));
    }
    if cr.witness.n() != g.n() || !g.is_proper_on(x, &cr.witness) || x.iter().any(|u| cr.witness.get(u) > cr.palette) {
        return Err(Error::Contract("creature witness is not a proper coloring within its palette".into()));
    }
    Ok(())
}
