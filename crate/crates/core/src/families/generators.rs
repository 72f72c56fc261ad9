use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `G(n, p)`: pairs `(i, j)`, `i < j`, are visited in lexicographic order
/// and each draws one uniform sample from ChaCha8 seeded with `seed`; the
/// edge is present iff the sample is `< p`.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::edgeless(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                g.link(i, j);
            }
        }
    }
    Ok(g)
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::edgeless(n);
    for i in 1..n {
        g.link(i - 1, i);
    }
    g
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let mut g = path(n);
    g.link(n - 1, 0);
    Ok(g)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::edgeless(n);
    for i in 0..n {
        for j in i + 1..n {
            g.link(i, j);
        }
    }
    g
}

/// `K_{m,n}` with sides `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut g = Graph::edgeless(m + n);
    for i in 0..m {
        for j in 0..n {
            g.link(i, m + j);
        }
    }
    g
}

/// Mycielski construction on `2n + 1` vertices: `0..n` copy `G`, `n + i`
/// is the shadow of `i` (adjacent to `N_G(i)`), and `2n` is the apex.
pub fn mycielskian(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::edgeless(2 * n + 1);
    for (u, v) in g.edges() {
        out.link(u, v);
        out.link(n + u, v);
        out.link(u, n + v);
    }
    for i in 0..n {
        out.link(n + i, 2 * n);
    }
    out
}

/// Kneser graph `K(n, s)`: `s`-subsets of `{1..n}` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser(n: usize, s: usize) -> Result<Graph> {
    if s == 0 || n < 2 * s {
        return Err(Error::InvalidParameter(format!("kneser needs n >= 2s >= 2, got n={n}, s={s}")));
    }
    if n > 64 {
        return Err(Error::InvalidParameter("kneser ground set limited to 64 elements".into()));
    }
    let subsets = k_subsets(n, s);
    if subsets.len() > 1 << 16 {
        return Err(Error::InvalidParameter(format!("kneser({n},{s}) has {} vertices", subsets.len())));
    }
    let mut g = Graph::edgeless(subsets.len());
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            if subsets[i] & subsets[j] == 0 {
                g.link(i, j);
            }
        }
    }
    Ok(g)
}

fn k_subsets(n: usize, s: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(i) = (0..s).rev().find(|&i| idx[i] < n - s + i) else { break };
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Named family with its parameters, as selected on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// `iterations` applications of the construction, starting from `K_2`.
    Mycielski {
        iterations: usize,
    },
    Kneser {
        n: usize,
        s: usize,
    },
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Mycielski { iterations } => {
                if iterations > 8 {
                    return Err(Error::InvalidParameter("at most 8 Mycielski iterations".into()));
                }
                let mut g = complete(2);
                for _ in 0..iterations {
                    g = mycielskian(&g);
                }
                Ok(g)
            }
            FamilySpec::Kneser { n, s } => kneser(n, s),
            FamilySpec::CompleteBipartite { m, n } => Ok(complete_bipartite(m, n)),
            FamilySpec::Random { n, p, seed } => random(n, p, seed),
            FamilySpec::Path { n } => Ok(path(n)),
            FamilySpec::Cycle { n } => cycle(n),
            FamilySpec::Complete { n } => Ok(complete(n)),
        }
    }
}
