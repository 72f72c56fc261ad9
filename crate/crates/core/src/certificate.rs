//! Certificate files and their independent checker.
//!
//! [`verify`] only runs the definitional checks (path-induced copy, proper
//! coloring, bound arithmetic). It never searches, so a certificate that
//! passes is trustworthy regardless of how it was produced.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::creature::PeelRecord;
use crate::dichotomy::{bounds, BoundTable, DichotomyResult, Outcome, Params};
use crate::embed::{verify_path_induced, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::tree::{RootedTree, TreeJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Embedding(EmbeddingCert),
    Coloring(ColoringCert),
}

// Serde's internally tagged enums buffer their input, which loses the
// string-to-integer coercion for map keys; dispatch on `kind` by hand.
impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut v = serde_json::Value::deserialize(de)?;
        let kind = v
            .as_object_mut()
            .ok_or_else(|| D::Error::custom("certificate must be an object"))?
            .remove("kind")
            .ok_or_else(|| D::Error::missing_field("kind"))?;
        match kind.as_str() {
            Some("embedding") => serde_json::from_value(v).map(Certificate::Embedding),
            Some("coloring") => serde_json::from_value(v).map(Certificate::Coloring),
            _ => return Err(D::Error::unknown_variant(&kind.to_string(), &["embedding", "coloring"])),
        }
        .map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCert {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BoundTable>,
    pub tree: TreeJson,
    /// Tree vertex -> graph vertex.
    pub map: BTreeMap<usize, usize>,
    /// Graph vertex the root is claimed to land on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCert {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BoundTable>,
    pub palette: u64,
    pub assignment: BTreeMap<usize, u64>,
    #[serde(default)]
    pub peels: Vec<PeelJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelJson {
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    pub c: u64,
    pub a: u64,
}

impl From<&PeelRecord> for PeelJson {
    fn from(p: &PeelRecord) -> Self {
        PeelJson { x: p.members.clone(), c: p.c, a: p.a }
    }
}

impl Certificate {
    pub fn from_embedding(e: &Embedding) -> Self {
        Certificate::Embedding(EmbeddingCert {
            params: None,
            table: None,
            tree: e.tree().to_json(),
            map: e.map().iter().copied().enumerate().collect(),
            anchor: e.root_image(),
        })
    }

    pub fn from_coloring(c: &Coloring, peels: &[PeelRecord]) -> Self {
        Certificate::Coloring(ColoringCert {
            params: None,
            table: None,
            palette: c.palette(),
            assignment: c.colors().iter().copied().enumerate().collect(),
            peels: peels.iter().map(PeelJson::from).collect(),
        })
    }

    pub fn from_dichotomy(r: &DichotomyResult) -> Self {
        let mut cert = match &r.outcome {
            Outcome::Embedding(e) => Certificate::from_embedding(e),
            Outcome::Coloring { coloring, peels } => Certificate::from_coloring(coloring, peels),
        };
        match &mut cert {
            Certificate::Embedding(e) => {
                e.params = Some(r.params);
                e.table = Some(r.table.clone());
            }
            Certificate::Coloring(c) => {
                c.params = Some(r.params);
                c.table = Some(r.table.clone());
            }
        }
        cert
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The embedding carried by an embedding certificate.
    pub fn embedding(&self) -> Result<Embedding> {
        let Certificate::Embedding(e) = self else {
            return Err(Error::InvalidParameter("not an embedding certificate".into()));
        };
        let tree = RootedTree::from_json(&e.tree)?;
        let map = total_map(&e.map, tree.len()).map_err(Error::InvalidParameter)?;
        Ok(Embedding::new(tree, map))
    }
}

fn total_map<T: Copy>(m: &BTreeMap<usize, T>, len: usize) -> std::result::Result<Vec<T>, String> {
    if m.len() != len || m.keys().enumerate().any(|(i, &k)| i != k) {
        return Err(format!("map must have exactly the keys 0..{len}"));
    }
    Ok(m.values().copied().collect())
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<String>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_params(params: &Option<Params>, table: &Option<BoundTable>, problems: &mut Vec<String>) -> Option<u64> {
    let p = params.as_ref()?;
    match bounds(p.d as usize, p.k as usize, p.t as usize) {
        Ok(fresh) => {
            if fresh.global_bound() != p.bound {
                problems.push(format!(
                    "declared bound {} but B(t={}, d={}, k={}) = {}",
                    p.bound,
                    p.t,
                    p.d,
                    p.k,
                    fresh.global_bound()
                ));
            }
            if let Some(t) = table {
                if *t != fresh {
                    problems.push("declared bound table differs from the recomputed one".into());
                }
            }
            Some(fresh.global_bound())
        }
        Err(e) => {
            problems.push(format!("parameters rejected: {e}"));
            None
        }
    }
}

/// Checks a certificate against `g` without any search.
pub fn verify(g: &Graph, cert: &Certificate) -> Verdict {
    let mut problems = Vec::new();
    match cert {
        Certificate::Embedding(e) => {
            check_params(&e.params, &e.table, &mut problems);
            match RootedTree::from_json(&e.tree) {
                Err(err) => problems.push(format!("tree: {err}")),
                Ok(tree) => match total_map(&e.map, tree.len()) {
                    Err(msg) => problems.push(msg),
                    Ok(map) => {
                        let root_image = map[tree.root()];
                        let phi = Embedding::new(tree, map);
                        match verify_path_induced(g, &phi) {
                            Ok(true) => {}
                            Ok(false) => problems.push("map is not a path-induced copy".into()),
                            Err(err) => problems.push(format!("map: {err}")),
                        }
                        if let Some(a) = e.anchor {
                            if a != root_image {
                                problems.push(format!("root maps to {root_image}, declared anchor {a}"));
                            }
                        }
                    }
                },
            }
        }
        Certificate::Coloring(c) => {
            let bound = check_params(&c.params, &c.table, &mut problems);
            if let Some(b) = bound {
                if c.palette > b {
                    problems.push(format!("palette {} exceeds bound {b}", c.palette));
                }
            }
            match total_map(&c.assignment, g.n()) {
                Err(msg) => problems.push(msg),
                Ok(colors) => match Coloring::new(colors, c.palette) {
                    Err(err) => problems.push(err.to_string()),
                    Ok(col) => {
                        if !g.is_proper_coloring(&col).unwrap_or(false) {
                            problems.push("coloring is not proper".into());
                        }
                    }
                },
            }
            if !c.peels.is_empty() {
                let mut seen = vec![false; g.n()];
                for (i, p) in c.peels.iter().enumerate() {
                    for &x in &p.x {
                        if x >= g.n() || std::mem::replace(&mut seen[x], true) {
                            problems.push(format!("peel {i} repeats or leaves the graph at vertex {x}"));
                        }
                    }
                    if p.a.checked_mul(p.c).is_none_or(|ac| ac > c.palette) {
                        problems.push(format!("peel {i} needs a·c = {}·{} colors, palette is {}", p.a, p.c, c.palette));
                    }
                }
                if seen.iter().any(|s| !s) {
                    problems.push("peels do not cover every vertex".into());
                }
            }
        }
    }
    if problems.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(problems)
    }
}
