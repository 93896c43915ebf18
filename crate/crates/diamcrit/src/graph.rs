//! Immutable simple undirected graphs with BFS-based distance queries.
//!
//! Vertices are dense integers `0..n`. The graph is immutable after
//! construction, so concurrent read-only queries are safe; every BFS call
//! uses its own scratch buffers.

use crate::{Error, Result};

/// Distance sentinel for unreachable pairs. Strictly greater than any finite
/// hop count under `u32` comparison, so `d > i` tests work uniformly.
pub const UNREACHABLE: u32 = u32::MAX;

/// A canonical undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    u: u32,
    v: u32,
}

impl EdgeRef {
    /// Normalizes the endpoint order; rejects self-loops.
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidEdge { u: a, v: b });
        }
        Ok(EdgeRef {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    /// Whether `w` is one of the endpoints.
    pub fn touches(&self, w: u32) -> bool {
        self.u == w || self.v == w
    }
}

impl std::fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Hop distances from a single source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: u32,
    pub dist: Vec<u32>,
}

/// An immutable simple undirected graph.
///
/// Adjacency lists are sorted and duplicate-free; `m` is the edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges are
    /// collapsed; endpoints are validated against `n`.
    pub fn build(n: usize, edges: &[EdgeRef]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for e in edges {
            for w in [e.u, e.v] {
                if w as usize >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            adj[e.u as usize].push(e.v);
            adj[e.v as usize].push(e.u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        debug_assert_eq!(m % 2, 0);
        Ok(Graph { n, adj, m: m / 2 })
    }

    /// Convenience constructor from raw endpoint pairs.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<Graph> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| EdgeRef::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Graph::build(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Sorted neighbor slice of `v`.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        if a as usize >= self.n || b as usize >= self.n || a == b {
            return false;
        }
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn contains(&self, e: EdgeRef) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Edges in canonical order (sorted by `(u, v)` with `u < v`).
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.n as u32).flat_map(move |u| {
            self.adj[u as usize]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| EdgeRef { u, v })
        })
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// BFS hop distances from `source`; unreachable vertices get
    /// [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: u32) -> Result<DistanceRow> {
        self.check_vertex(source)?;
        Ok(DistanceRow {
            source,
            dist: self.bfs_masked(source, None),
        })
    }

    /// BFS from `source` with one edge masked out of the traversal. The graph
    /// itself is not modified; masking is how `G - e` queries are answered.
    pub(crate) fn bfs_masked(&self, source: u32, masked: Option<EdgeRef>) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        dist[source as usize] = 0;
        let mut queue = std::collections::VecDeque::with_capacity(self.n);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in &self.adj[u as usize] {
                if let Some(e) = masked {
                    if (e.u == u && e.v == w) || (e.u == w && e.v == u) {
                        continue;
                    }
                }
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances, one BFS per source.
    pub fn all_pairs_distances(&self) -> Vec<Vec<u32>> {
        (0..self.n as u32)
            .map(|s| self.bfs_masked(s, None))
            .collect()
    }

    /// Graph diameter; [`UNREACHABLE`] iff the graph is disconnected, 0 for a
    /// single vertex.
    pub fn diameter(&self) -> u32 {
        self.diameter_masked(None)
    }

    fn diameter_masked(&self, masked: Option<EdgeRef>) -> u32 {
        let mut best = 0;
        for s in 0..self.n as u32 {
            for &d in &self.bfs_masked(s, masked) {
                if d == UNREACHABLE {
                    return UNREACHABLE;
                }
                best = best.max(d);
            }
        }
        best
    }

    fn check_edge(&self, e: EdgeRef) -> Result<()> {
        self.check_vertex(e.u)?;
        self.check_vertex(e.v)?;
        if !self.contains(e) {
            return Err(Error::MissingEdge(e));
        }
        Ok(())
    }

    /// Diameter of `G - e`, computed by masking `e` during traversal.
    pub fn diameter_without_edge(&self, e: EdgeRef) -> Result<u32> {
        self.check_edge(e)?;
        Ok(self.diameter_masked(Some(e)))
    }

    /// Whether `diam(G - e) > threshold`, short-circuiting as soon as a
    /// witness pair is found. Sources near the deleted edge are tried first
    /// since a witness pair must route every shortest path through `e`.
    pub fn diameter_without_edge_exceeds(&self, e: EdgeRef, threshold: u32) -> Result<bool> {
        self.check_edge(e)?;
        let mut order: Vec<u32> = Vec::with_capacity(self.n);
        order.push(e.u);
        order.push(e.v);
        order.extend((0..self.n as u32).filter(|&w| w != e.u && w != e.v));
        for s in order {
            if self
                .bfs_masked(s, Some(e))
                .iter()
                .any(|&d| d > threshold)
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sum of squared degrees.
    pub fn degree_square_sum(&self) -> u64 {
        self.adj.iter().map(|a| (a.len() as u64).pow(2)).sum()
    }

    /// Per-vertex neighbor bitsets (`words = ceil(n/64)` per row). Used by
    /// the disjoint-neighborhood scan, which is quadratic in `n`.
    pub(crate) fn adjacency_bitset(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                rows[u][v as usize / 64] |= 1 << (v % 64);
            }
        }
        rows
    }
}
