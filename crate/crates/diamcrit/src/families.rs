//! Deterministic generators for the graph families under study.
//!
//! All generators are pure functions of their parameters with fixed vertex
//! layouts, so generated graphs are reproducible byte for byte across runs.

use crate::graph::{EdgeRef, Graph};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// Elementary fixture families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Cycle,
    Path,
    Complete,
}

/// Parameters for the hub-and-paths family: `a1` disjoint paths of `k - 1`
/// vertices, every path start adjacent to all `a0` left hub vertices and
/// every path end adjacent to all `a2` right hub vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GkParams {
    pub k: u32,
    pub a0: u32,
    pub a1: u32,
    pub a2: u32,
}

impl GkParams {
    pub fn new(k: u32, a0: u32, a1: u32, a2: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParams(format!(
                "gk requires k >= 3, got {k}"
            )));
        }
        if a0 < 1 || a1 < 1 || a2 < 1 {
            return Err(Error::InvalidParams(format!(
                "gk part sizes must be positive, got a0={a0} a1={a1} a2={a2}"
            )));
        }
        Ok(GkParams { k, a0, a1, a2 })
    }

    pub fn vertex_count(&self) -> usize {
        (self.a0 + self.a1 * (self.k - 1) + self.a2) as usize
    }
}

/// A matching over the clique-side vertices `0..half_n` of `G_{3,M}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<EdgeRef>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Validates disjointness and range against the clique side size.
    pub fn new(pairs: &[(u32, u32)], half_n: u32) -> Result<Self> {
        let mut seen = vec![false; half_n as usize];
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let e = EdgeRef::new(a, b)?;
            if e.v() >= half_n {
                return Err(Error::InvalidParams(format!(
                    "matching pair {e} out of range for clique side 0..{half_n}"
                )));
            }
            for w in [e.u(), e.v()] {
                if seen[w as usize] {
                    return Err(Error::InvalidParams(format!(
                        "vertex {w} appears twice in matching"
                    )));
                }
                seen[w as usize] = true;
            }
            edges.push(e);
        }
        edges.sort_unstable();
        Ok(Matching { pairs: edges })
    }

    pub fn pairs(&self) -> &[EdgeRef] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        EdgeRef::new(a, b).is_ok_and(|e| self.pairs.binary_search(&e).is_ok())
    }
}

/// Samples a random matching on `0..half_n`: a uniformly chosen size up to
/// `half_n / 2`, then a random disjoint pairing of that many pairs.
pub fn random_matching<R: Rng>(half_n: u32, rng: &mut R) -> Matching {
    let mut verts: Vec<u32> = (0..half_n).collect();
    verts.shuffle(rng);
    let r = rng.gen_range(0..=half_n / 2) as usize;
    let pairs: Vec<(u32, u32)> = (0..r).map(|i| (verts[2 * i], verts[2 * i + 1])).collect();
    Matching::new(&pairs, half_n).expect("sampled pairs are disjoint and in range")
}

/// The named elementary graph on vertices `0..n`.
pub fn gen_elementary(family: Elementary, n: u32) -> Result<Graph> {
    match family {
        Elementary::Cycle => {
            if n < 3 {
                return Err(Error::InvalidParams(format!("cycle requires n >= 3, got {n}")));
            }
            let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_pairs(n as usize, &pairs)
        }
        Elementary::Path => {
            if n < 1 {
                return Err(Error::InvalidParams("path requires n >= 1".into()));
            }
            let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_pairs(n as usize, &pairs)
        }
        Elementary::Complete => {
            if n < 1 {
                return Err(Error::InvalidParams("complete requires n >= 1".into()));
            }
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    pairs.push((i, j));
                }
            }
            Graph::from_pairs(n as usize, &pairs)
        }
    }
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn gen_complete_bipartite(a: u32, b: u32) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParams(format!(
            "bipartite parts must be positive, got {a}, {b}"
        )));
    }
    let mut pairs = Vec::with_capacity((a * b) as usize);
    for u in 0..a {
        for v in a..a + b {
            pairs.push((u, v));
        }
    }
    Graph::from_pairs((a + b) as usize, &pairs)
}

/// The balanced complete bipartite graph on `n` vertices.
pub fn gen_balanced_bipartite(n: u32) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "balanced bipartite requires n >= 2, got {n}"
        )));
    }
    gen_complete_bipartite(n / 2, n.div_ceil(2))
}

/// The hub-and-paths family. Layout: `a0` left hub vertices, then `a1`
/// internal paths of `k - 1` vertices each, then `a2` right hub vertices.
/// The hub vertices are shared across all paths: every left hub vertex is
/// adjacent to every path start, every right hub vertex to every path end.
pub fn gen_gk(p: GkParams) -> Result<Graph> {
    let GkParams { k, a0, a1, a2 } = p;
    GkParams::new(k, a0, a1, a2)?;
    let path_len = k - 1;
    let n = p.vertex_count();
    let first_path = a0;
    let first_right = a0 + a1 * path_len;
    let mut pairs = Vec::new();
    for i in 0..a1 {
        let start = first_path + i * path_len;
        for j in 0..path_len - 1 {
            pairs.push((start + j, start + j + 1));
        }
        for l in 0..a0 {
            pairs.push((l, start));
        }
        for r in 0..a2 {
            pairs.push((first_right + r, start + path_len - 1));
        }
    }
    let g = Graph::from_pairs(n, &pairs)?;
    debug_assert_eq!(g.edge_count() as u32, a1 * (k - 2) + a1 * (a0 + a2));
    Ok(g)
}

/// Integer stand-in for the asymptotic path-count choice `a1 ~ n / (2(k-1))`:
/// rounds to nearest, ties toward zero.
pub fn a1_star(k: u32, n: u32) -> u32 {
    let num = (n + k - 2) as u64;
    let den = (2 * (k - 1)) as u64;
    ((2 * num + den - 1) / (2 * den)) as u32
}

/// Clique plus pendant matching: vertices `0..n/2` form a clique, vertices
/// `n/2..n` are independent, and `i` is matched to `i + n/2`.
pub fn gen_g30(n: u32) -> Result<Graph> {
    gen_g3m(n, &Matching::empty())
}

/// The matching-twisted variant of [`gen_g30`]: for each `uv` in `M` the
/// clique edge `uv` is removed and the edge between the matched partners
/// `(u + n/2)(v + n/2)` is added. The edge count does not depend on `M`.
pub fn gen_g3m(n: u32, m: &Matching) -> Result<Graph> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "g3m requires even n >= 6, got {n}"
        )));
    }
    let half = n / 2;
    if let Some(e) = m.pairs().iter().find(|e| e.v() >= half) {
        return Err(Error::InvalidParams(format!(
            "matching pair {e} out of range for clique side 0..{half}"
        )));
    }
    let mut pairs = Vec::new();
    for u in 0..half {
        for v in u + 1..half {
            if m.contains(u, v) {
                pairs.push((u + half, v + half));
            } else {
                pairs.push((u, v));
            }
        }
    }
    for u in 0..half {
        pairs.push((u, u + half));
    }
    let g = Graph::from_pairs(n as usize, &pairs)?;
    debug_assert_eq!(g.edge_count() as u32, (n * n + 2 * n) / 8);
    Ok(g)
}
