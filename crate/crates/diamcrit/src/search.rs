//! Exhaustive small-n verification: isomorphism-class enumeration by
//! canonical (minimum) adjacency bitmaps and extremal search over
//! diameter-k-critical graphs.
//!
//! Labeled graphs on `n <= 8` vertices are 28-bit masks over the pairs
//! `(0,1), (0,2), (1,2), (0,3), ...`; the canonical form of a class is the
//! minimum mask over all vertex permutations. The extremal search scans all
//! labeled graphs in shards, keeps the diameter-k-critical ones (checked
//! with tiny bitset BFS), and deduplicates survivors by canonical form in a
//! deterministic merge.

use rayon::prelude::*;
use serde::Serialize;

use crate::criticality::is_diameter_k_critical;
use crate::graph::Graph;
use crate::{Error, Result};

const ENUM_MAX_N: usize = 8;
const DIRECT_SEARCH_MAX_N: usize = 6;
const EXHAUSTIVE_SEARCH_MAX_N: usize = 7;

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn pair_table(n: usize) -> Vec<(u8, u8)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            pairs.push((i as u8, j as u8));
        }
    }
    pairs
}

fn mask_from_graph(g: &Graph) -> u64 {
    let mut mask = 0u64;
    for e in g.edges() {
        mask |= 1 << pair_index(e.u() as usize, e.v() as usize);
    }
    mask
}

fn graph_from_mask(n: usize, mask: u64, pairs: &[(u8, u8)]) -> Graph {
    let mut edge_pairs = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        edge_pairs.push((pairs[p].0 as u32, pairs[p].1 as u32));
    }
    Graph::from_pairs(n, &edge_pairs).expect("mask pairs are in range")
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Per-permutation bit relocation tables: entry `p` is the mask position of
/// pair `p` after relabeling.
fn perm_bit_tables(perms: &[Vec<u8>], pairs: &[(u8, u8)]) -> Vec<Vec<u8>> {
    perms
        .iter()
        .map(|perm| {
            pairs
                .iter()
                .map(|&(i, j)| {
                    let a = perm[i as usize] as usize;
                    let b = perm[j as usize] as usize;
                    pair_index(a.min(b), a.max(b)) as u8
                })
                .collect()
        })
        .collect()
}

fn apply_bits(mask: u64, table: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << table[p];
    }
    out
}

/// Returns the automorphism count when `mask` is the minimum of its orbit,
/// `None` otherwise. Early-exits on the first smaller relabeling.
fn classify_mask(mask: u64, tables: &[Vec<u8>]) -> Option<u64> {
    let mut aut = 0u64;
    for table in tables {
        let relabeled = apply_bits(mask, table);
        if relabeled < mask {
            return None;
        }
        if relabeled == mask {
            aut += 1;
        }
    }
    Some(aut)
}

fn canonical_of_mask(mask: u64, tables: &[Vec<u8>]) -> u64 {
    tables
        .iter()
        .map(|t| apply_bits(mask, t))
        .min()
        .expect("at least the identity permutation")
}

/// Canonical form of an arbitrary graph on at most 8 vertices, as the
/// relabeled [`Graph`].
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let n = g.vertex_count();
    if n > ENUM_MAX_N {
        return Err(Error::TooLarge {
            what: "canonical labeling vertex count",
            value: n,
            limit: ENUM_MAX_N,
        });
    }
    let pairs = pair_table(n);
    let tables = perm_bit_tables(&permutations(n), &pairs);
    Ok(graph_from_mask(
        n,
        canonical_of_mask(mask_from_graph(g), &tables),
        &pairs,
    ))
}

/// One isomorphism class: the canonically labeled graph, its mask, and the
/// automorphism count (so `n! / automorphisms` is the labeled-orbit size).
#[derive(Debug, Clone)]
pub struct GraphClass {
    pub graph: Graph,
    pub canonical_mask: u64,
    pub automorphisms: u64,
}

/// Streams every isomorphism class on `n` vertices exactly once, in
/// increasing canonical-mask order.
pub fn enumerate_graphs(n: usize) -> Result<GraphEnumeration> {
    if n == 0 {
        return Err(Error::InvalidParams("enumeration requires n >= 1".into()));
    }
    if n > ENUM_MAX_N {
        return Err(Error::TooLarge {
            what: "enumeration vertex count",
            value: n,
            limit: ENUM_MAX_N,
        });
    }
    let pairs = pair_table(n);
    let tables = perm_bit_tables(&permutations(n), &pairs);
    Ok(GraphEnumeration {
        n,
        next_mask: 0,
        end: 1u64 << (n * (n - 1) / 2),
        pairs,
        tables,
    })
}

pub struct GraphEnumeration {
    n: usize,
    next_mask: u64,
    end: u64,
    pairs: Vec<(u8, u8)>,
    tables: Vec<Vec<u8>>,
}

impl Iterator for GraphEnumeration {
    type Item = GraphClass;

    fn next(&mut self) -> Option<GraphClass> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if let Some(aut) = classify_mask(mask, &self.tables) {
                return Some(GraphClass {
                    graph: graph_from_mask(self.n, mask, &self.pairs),
                    canonical_mask: mask,
                    automorphisms: aut,
                });
            }
        }
        None
    }
}

// ---- labeled-scan criticality over bitset rows --------------------------

fn rows_from_mask(mask: u64, pairs: &[(u8, u8)]) -> [u8; 8] {
    let mut rows = [0u8; 8];
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (i, j) = pairs[p];
        rows[i as usize] |= 1 << j;
        rows[j as usize] |= 1 << i;
    }
    rows
}

/// Whether `v` reaches every vertex within `k` hops.
fn ecc_at_most(rows: &[u8; 8], v: usize, full: u8, k: u32) -> bool {
    let mut reach = 1u8 << v;
    for _ in 0..k {
        if reach == full {
            return true;
        }
        let mut next = reach;
        let mut frontier = reach;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            next |= rows[u];
        }
        if next == reach {
            return false;
        }
        reach = next;
    }
    reach == full
}

fn mask_is_diameter_k_critical(n: usize, mask: u64, k: u32, pairs: &[(u8, u8)]) -> bool {
    let rows = rows_from_mask(mask, pairs);
    let full: u8 = if n == 8 { 0xff } else { (1u8 << n) - 1 };
    for v in 0..n {
        if !ecc_at_most(&rows, v, full, k) {
            return false;
        }
    }
    if k > 0 && (0..n).all(|v| ecc_at_most(&rows, v, full, k - 1)) {
        return false; // diameter below k
    }
    let mut bits = mask;
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (i, j) = pairs[p];
        let mut rows2 = rows;
        rows2[i as usize] &= !(1 << j);
        rows2[j as usize] &= !(1 << i);
        // deleting the edge must push some eccentricity beyond k; try the
        // endpoints first
        let mut order = [i as usize, j as usize, 0, 0, 0, 0, 0, 0];
        let mut len = 2;
        for v in 0..n {
            if v != i as usize && v != j as usize {
                order[len] = v;
                len += 1;
            }
        }
        if order[..len]
            .iter()
            .all(|&v| ecc_at_most(&rows2, v, full, k))
        {
            return false;
        }
    }
    true
}

/// Options for [`extremal_search_with`]. `n = 7` scans 2^21 labeled graphs
/// and must be opted into; the progress callback receives
/// `(masks done, masks total)` as shards complete.
#[derive(Default)]
pub struct SearchOptions<'a> {
    pub exhaustive: bool,
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

/// Extremal diameter-k-critical graphs on `n` vertices.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: u32,
    /// None when no diameter-k-critical graph on `n` vertices exists.
    pub max_edges: Option<usize>,
    pub extremal_graph6: Vec<String>,
    pub critical_count: u64,
    /// Canonically labeled extremal graphs, one per class.
    #[serde(skip)]
    pub extremal: Vec<Graph>,
}

pub fn extremal_search(n: usize, k: u32) -> Result<SearchResult> {
    extremal_search_with(n, k, &SearchOptions::default())
}

pub fn extremal_search_with(n: usize, k: u32, options: &SearchOptions) -> Result<SearchResult> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParams("search requires n >= 1 and k >= 1".into()));
    }
    let limit = if options.exhaustive {
        EXHAUSTIVE_SEARCH_MAX_N
    } else {
        DIRECT_SEARCH_MAX_N
    };
    if n > limit {
        return Err(Error::TooLarge {
            what: "exhaustive search vertex count",
            value: n,
            limit,
        });
    }

    let pairs = pair_table(n);
    let total = 1u64 << (n * (n - 1) / 2);
    let shard_bits = 14;
    let shard_count = (total >> shard_bits).max(1);
    let done = std::sync::atomic::AtomicU64::new(0);
    let survivors: Vec<Vec<u64>> = (0..shard_count)
        .into_par_iter()
        .map(|shard| {
            let lo = shard << shard_bits;
            let hi = ((shard + 1) << shard_bits).min(total);
            let mut found = Vec::new();
            for mask in lo..hi {
                if mask_is_diameter_k_critical(n, mask, k, &pairs) {
                    found.push(mask);
                }
            }
            if let Some(progress) = options.progress {
                let so_far = done.fetch_add(hi - lo, std::sync::atomic::Ordering::Relaxed);
                progress(so_far + (hi - lo), total);
            }
            found
        })
        .collect();

    // deterministic merge: survivors arrive in ascending mask order; each
    // class is canonicalized once and its whole orbit marked as seen
    let tables = perm_bit_tables(&permutations(n), &pairs);
    let mut seen: std::collections::HashSet<u64> = Default::default();
    let mut classes: Vec<u64> = Vec::new();
    for mask in survivors.into_iter().flatten() {
        if seen.contains(&mask) {
            continue;
        }
        let mut canonical = u64::MAX;
        for table in &tables {
            let relabeled = apply_bits(mask, table);
            canonical = canonical.min(relabeled);
            seen.insert(relabeled);
        }
        classes.push(canonical);
    }
    classes.sort_unstable();

    let max_edges = classes.iter().map(|m| m.count_ones() as usize).max();
    let extremal: Vec<Graph> = classes
        .iter()
        .filter(|m| Some(m.count_ones() as usize) == max_edges)
        .map(|&m| graph_from_mask(n, m, &pairs))
        .collect();
    debug_assert!(extremal
        .iter()
        .all(|g| is_diameter_k_critical(g, k).is_yes()));
    let extremal_graph6 = extremal
        .iter()
        .map(|g| crate::formats::write_graph6(g).expect("small graphs encode"))
        .collect();
    Ok(SearchResult {
        n,
        k,
        max_edges,
        extremal_graph6,
        critical_count: classes.len() as u64,
        extremal,
    })
}

/// Both sides of the degree-square inequality `sum d_v^2 <= n * e(G)`.
/// The inequality is only claimed for diameter-k-critical graphs with
/// `k >= 3`; the checker reports without judging applicability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeSquareCheck {
    pub lhs: u64,
    pub rhs: u64,
    pub ratio: Option<f64>,
    pub holds: bool,
}

pub fn degree_square_check(g: &Graph) -> DegreeSquareCheck {
    let lhs = g.degree_square_sum();
    let rhs = g.vertex_count() as u64 * g.edge_count() as u64;
    DegreeSquareCheck {
        lhs,
        rhs,
        ratio: (rhs > 0).then(|| lhs as f64 / rhs as f64),
        holds: lhs <= rhs,
    }
}
