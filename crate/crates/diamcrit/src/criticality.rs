//! Criticality verification and the critical-pair machinery.
//!
//! For a graph of diameter `k` and levels `2 <= i <= k`, an edge `e` is
//! *i-associated* with a pair `{x,y}` when `d(x,y) <= i` and deleting `e`
//! pushes the pair's distance above `i`. A pair admitting an i-associated
//! edge is *i-critical*; its shortest paths are the i-critical paths, and
//! every i-associated edge lies on every one of them. Per critical pair one
//! shortest path is chosen deterministically (lexicographically smallest
//! vertex sequence, oriented from the smaller endpoint), and the
//! *multiplicity* `m(e)` of an edge counts, over all levels, the chosen
//! paths it is associated with.
//!
//! On top of that sit the qualifying length-i paths whose end edges are both
//! i-associated and light (multiplicity below a threshold `t`), their end
//! edges (*t-edges*), the reduced subgraph `G0` (drop heavy edges and
//! t-edges), disjoint-neighborhood pairs, and the inequality checkers used
//! by the analysis report.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::{EdgeRef, Graph, UNREACHABLE};
use crate::{Error, Result};

/// Analysis parameters: diameter level `k` and multiplicity threshold `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub k: u32,
    pub t: u32,
}

impl AnalysisConfig {
    pub fn new(k: u32, t: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "analysis requires k >= 2, got {k}"
            )));
        }
        if t < 1 {
            return Err(Error::InvalidParams("threshold t must be >= 1".into()));
        }
        Ok(AnalysisConfig { k, t })
    }

    /// Config with the documented default threshold `t = ceil(sqrt(n))`.
    pub fn with_default_t(k: u32, n: usize) -> Result<Self> {
        AnalysisConfig::new(k, default_t(n))
    }
}

/// Default multiplicity threshold: `ceil(sqrt(n))`. A heuristic stand-in for
/// the threshold the asymptotic argument draws from quantities that are not
/// computable at this scale.
pub fn default_t(n: usize) -> u32 {
    let mut t = 1u32;
    while (t as usize) * (t as usize) < n {
        t += 1;
    }
    t
}

/// Tuning switches that do not change the core definitions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Qualify a length-i path only if *every* graph edge incident with its
    /// endpoints is i-associated and light, instead of only the path's own
    /// two end edges. Off by default; kept for comparison runs.
    pub strict_p_membership: bool,
}

/// Outcome of the diameter-k-criticality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalityVerdict {
    Yes,
    /// Diameter is not `k`; carries the actual diameter ([`UNREACHABLE`]
    /// when disconnected).
    WrongDiameter(u32),
    /// Deleting this edge keeps the diameter at most `k`.
    NonCriticalEdge(EdgeRef),
}

impl CriticalityVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, CriticalityVerdict::Yes)
    }
}

impl std::fmt::Display for CriticalityVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CriticalityVerdict::Yes => write!(f, "yes"),
            CriticalityVerdict::WrongDiameter(d) if *d == UNREACHABLE => {
                write!(f, "wrong_diameter(unreachable)")
            }
            CriticalityVerdict::WrongDiameter(d) => write!(f, "wrong_diameter({d})"),
            CriticalityVerdict::NonCriticalEdge(e) => write!(f, "non_critical_edge({e})"),
        }
    }
}

/// Checks `diam(G) = k` and that every single-edge deletion raises the
/// diameter above `k`. Failures carry a concrete witness.
pub fn is_diameter_k_critical(g: &Graph, k: u32) -> CriticalityVerdict {
    let d = g.diameter();
    if d != k {
        return CriticalityVerdict::WrongDiameter(d);
    }
    for e in g.edges() {
        let exceeds = g
            .diameter_without_edge_exceeds(e, k)
            .expect("edge comes from the graph");
        if !exceeds {
            return CriticalityVerdict::NonCriticalEdge(e);
        }
    }
    CriticalityVerdict::Yes
}

/// The levels at which one pair is critical, with the associated edges per
/// level and the chosen shortest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPairRecord {
    /// `(x, y)` with `x < y`.
    pub pair: (u32, u32),
    pub base_distance: u32,
    /// Lexicographically smallest shortest path from `x` to `y`. All
    /// i-associated edges of the pair lie on it (and on every other shortest
    /// path of the pair).
    pub chosen_path: Vec<u32>,
    /// Sorted by level; only levels with at least one associated edge.
    pub levels: Vec<LevelRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub level: u32,
    /// Sorted i-associated edges.
    pub associated: Vec<EdgeRef>,
}

impl CriticalPairRecord {
    pub fn level(&self, i: u32) -> Option<&LevelRecord> {
        self.levels.iter().find(|l| l.level == i)
    }

    fn path_edges(&self) -> Vec<EdgeRef> {
        self.chosen_path
            .windows(2)
            .map(|w| EdgeRef::new(w[0], w[1]).expect("path steps are edges"))
            .collect()
    }
}

/// Per-edge multiplicity data: for each level, the pairs whose chosen path
/// is associated with the edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeMultiplicity {
    pub per_level: BTreeMap<u32, Vec<(u32, u32)>>,
}

impl EdgeMultiplicity {
    pub fn multiplicity(&self) -> u32 {
        self.per_level.values().map(|v| v.len() as u32).sum()
    }
}

/// Multiplicities for every edge of the analyzed graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub entries: BTreeMap<EdgeRef, EdgeMultiplicity>,
}

impl MultiplicityTable {
    pub fn multiplicity(&self, e: EdgeRef) -> u32 {
        self.entries.get(&e).map_or(0, EdgeMultiplicity::multiplicity)
    }

    pub fn total(&self) -> u64 {
        self.entries
            .values()
            .map(|e| e.multiplicity() as u64)
            .sum()
    }

    /// Histogram `multiplicity -> edge count` over all edges.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for e in self.entries.values() {
            *h.entry(e.multiplicity()).or_insert(0) += 1;
        }
        h
    }
}

/// A chosen critical path of length exactly `level` whose end edges are both
/// `level`-associated with it and have multiplicity below the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualifyingPath {
    pub pair: (u32, u32),
    pub level: u32,
    pub path: Vec<u32>,
    /// The path edges at `x` and at `y`; these are the t-edges it yields.
    pub end_edges: (EdgeRef, EdgeRef),
}

/// Qualifying paths per level and the union of their end edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TEdgeReport {
    pub per_level: BTreeMap<u32, Vec<QualifyingPath>>,
    /// Sorted, deduplicated t-edges.
    pub t_edges: Vec<EdgeRef>,
}

impl TEdgeReport {
    pub fn path_count(&self) -> u64 {
        self.per_level.values().map(|v| v.len() as u64).sum()
    }

    pub fn paths_at(&self, i: u32) -> &[QualifyingPath] {
        self.per_level.get(&i).map_or(&[], Vec::as_slice)
    }
}

/// One removed edge and why; an edge can be removed for both reasons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemovedEdge {
    pub edge: EdgeRef,
    pub heavy: bool,
    pub t_edge: bool,
}

/// The reduced subgraph and the removal bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct G0Result {
    pub g0: Graph,
    pub removed: Vec<RemovedEdge>,
    /// Edges with multiplicity at least `t`.
    pub heavy_count: u64,
    /// Distinct t-edges.
    pub t_edge_count: u64,
}

/// Shared engine: association structure, chosen paths, multiplicities,
/// qualifying paths, and `G0` for one `(graph, config)` instance.
///
/// All contents are deterministic functions of the inputs; the parallel
/// per-edge BFS sweep merges in canonical edge order regardless of
/// scheduling.
#[derive(Debug, Clone)]
pub struct Analysis {
    graph: Graph,
    cfg: AnalysisConfig,
    options: AnalysisOptions,
    dist: Vec<Vec<u32>>,
    records: Vec<CriticalPairRecord>,
    multiplicity: MultiplicityTable,
    t_report: TEdgeReport,
    g0: G0Result,
}

impl Analysis {
    pub fn new(g: &Graph, cfg: AnalysisConfig) -> Analysis {
        Analysis::with_options(g, cfg, AnalysisOptions::default())
    }

    pub fn with_options(g: &Graph, cfg: AnalysisConfig, options: AnalysisOptions) -> Analysis {
        let dist = g.all_pairs_distances();
        let records = association_records(g, &dist, cfg.k);
        let multiplicity = multiplicity_from_records(g, &records);
        let t_report = t_report_from_parts(g, &records, &multiplicity, cfg.t, options);
        let g0 = g0_from_parts(g, &multiplicity, &t_report, cfg.t);
        Analysis {
            graph: g.clone(),
            cfg,
            options,
            dist,
            records,
            multiplicity,
            t_report,
            g0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> AnalysisConfig {
        self.cfg
    }

    pub fn options(&self) -> AnalysisOptions {
        self.options
    }

    pub fn distances(&self) -> &[Vec<u32>] {
        &self.dist
    }

    /// All critical pairs, sorted by pair.
    pub fn records(&self) -> &[CriticalPairRecord] {
        &self.records
    }

    pub fn multiplicity(&self) -> &MultiplicityTable {
        &self.multiplicity
    }

    pub fn t_edge_report(&self) -> &TEdgeReport {
        &self.t_report
    }

    pub fn g0(&self) -> &G0Result {
        &self.g0
    }

    pub fn critical_pair_count(&self) -> u64 {
        self.records.len() as u64
    }
}

/// Lexicographically smallest shortest path from `x` to `y` (`x < y`),
/// greedy over the sorted adjacency: any prefix of a shortest path extends
/// to one, so taking the smallest feasible next vertex is optimal.
fn lex_min_shortest_path(g: &Graph, dist_from_y: &[u32], x: u32, y: u32) -> Vec<u32> {
    let mut path = vec![x];
    let mut cur = x;
    let mut remaining = dist_from_y[x as usize];
    while cur != y {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| dist_from_y[w as usize] == remaining - 1)
            .expect("finite distance implies a descending neighbor");
        path.push(next);
        cur = next;
        remaining -= 1;
    }
    path
}

/// Core association sweep. For each edge the deletion distances determine,
/// per pair, the contiguous level range `[max(2, d), min(k, d' - 1)]` at
/// which the edge is associated with the pair (`d'` the deletion distance,
/// with the whole upper tail when deletion disconnects the pair).
type PairLevelRange = ((u32, u32), u32, u32);

fn association_records(g: &Graph, dist: &[Vec<u32>], k: u32) -> Vec<CriticalPairRecord> {
    let n = g.vertex_count();
    let edges: Vec<EdgeRef> = g.edges().collect();
    let per_edge: Vec<Vec<PairLevelRange>> = edges
        .par_iter()
        .map(|&e| {
            let rows: Vec<Vec<u32>> = (0..n as u32).map(|s| g.bfs_masked(s, Some(e))).collect();
            let mut out = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    let d0 = dist[x][y];
                    if d0 > k {
                        continue; // unreachable pairs carry d0 = UNREACHABLE > k
                    }
                    let de = rows[x][y];
                    debug_assert!(de >= d0);
                    let lo = d0.max(2);
                    let hi = if de == UNREACHABLE { k } else { k.min(de - 1) };
                    if lo <= hi {
                        out.push(((x as u32, y as u32), lo, hi));
                    }
                }
            }
            out
        })
        .collect();

    let mut per_pair: BTreeMap<(u32, u32), BTreeMap<u32, Vec<EdgeRef>>> = BTreeMap::new();
    for (&e, ranges) in edges.iter().zip(&per_edge) {
        for &(pair, lo, hi) in ranges {
            let levels = per_pair.entry(pair).or_default();
            for i in lo..=hi {
                levels.entry(i).or_default().push(e);
            }
        }
    }

    per_pair
        .into_iter()
        .map(|((x, y), levels)| {
            let record = CriticalPairRecord {
                pair: (x, y),
                base_distance: dist[x as usize][y as usize],
                chosen_path: lex_min_shortest_path(g, &dist[y as usize], x, y),
                levels: levels
                    .into_iter()
                    .map(|(level, associated)| LevelRecord { level, associated })
                    .collect(),
            };
            let path_edges = record.path_edges();
            for lvl in &record.levels {
                for e in &lvl.associated {
                    assert!(
                        path_edges.contains(e),
                        "associated edge {e} must lie on every shortest path of {:?}",
                        record.pair
                    );
                }
            }
            record
        })
        .collect()
}

fn multiplicity_from_records(g: &Graph, records: &[CriticalPairRecord]) -> MultiplicityTable {
    let mut entries: BTreeMap<EdgeRef, EdgeMultiplicity> = g
        .edges()
        .map(|e| (e, EdgeMultiplicity::default()))
        .collect();
    for r in records {
        for lvl in &r.levels {
            for e in &lvl.associated {
                entries
                    .get_mut(e)
                    .expect("associated edges belong to the graph")
                    .per_level
                    .entry(lvl.level)
                    .or_default()
                    .push(r.pair);
            }
        }
    }
    MultiplicityTable { entries }
}

fn t_report_from_parts(
    g: &Graph,
    records: &[CriticalPairRecord],
    mult: &MultiplicityTable,
    t: u32,
    options: AnalysisOptions,
) -> TEdgeReport {
    let mut per_level: BTreeMap<u32, Vec<QualifyingPath>> = BTreeMap::new();
    let mut t_edges: std::collections::BTreeSet<EdgeRef> = Default::default();
    for r in records {
        let len = r.base_distance;
        if len < 2 {
            continue;
        }
        let Some(lvl) = r.level(len) else { continue };
        let first = EdgeRef::new(r.chosen_path[0], r.chosen_path[1]).unwrap();
        let tail = &r.chosen_path[r.chosen_path.len() - 2..];
        let last = EdgeRef::new(tail[0], tail[1]).unwrap();
        let qualified = if options.strict_p_membership {
            let (x, y) = r.pair;
            [x, y].iter().all(|&endpoint| {
                g.neighbors(endpoint).iter().all(|&w| {
                    let e = EdgeRef::new(endpoint, w).unwrap();
                    lvl.associated.binary_search(&e).is_ok() && mult.multiplicity(e) < t
                })
            })
        } else {
            [first, last]
                .iter()
                .all(|e| lvl.associated.binary_search(e).is_ok() && mult.multiplicity(*e) < t)
        };
        if qualified {
            per_level.entry(len).or_default().push(QualifyingPath {
                pair: r.pair,
                level: len,
                path: r.chosen_path.clone(),
                end_edges: (first, last),
            });
            t_edges.insert(first);
            t_edges.insert(last);
        }
    }
    TEdgeReport {
        per_level,
        t_edges: t_edges.into_iter().collect(),
    }
}

fn g0_from_parts(g: &Graph, mult: &MultiplicityTable, t_report: &TEdgeReport, t: u32) -> G0Result {
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    let mut heavy_count = 0;
    for e in g.edges() {
        let heavy = mult.multiplicity(e) >= t;
        let t_edge = t_report.t_edges.binary_search(&e).is_ok();
        if heavy {
            heavy_count += 1;
        }
        if heavy || t_edge {
            removed.push(RemovedEdge { edge: e, heavy, t_edge });
        } else {
            kept.push(e);
        }
    }
    let g0 = Graph::build(g.vertex_count(), &kept).expect("kept edges are valid");
    G0Result {
        g0,
        removed,
        heavy_count,
        t_edge_count: t_report.t_edges.len() as u64,
    }
}

/// Exactly the pairs i-associated with `e`: `d(x,y) <= i` and
/// `d_{G-e}(x,y) > i`.
pub fn associated_pairs(g: &Graph, e: EdgeRef, i: u32) -> Result<Vec<(u32, u32)>> {
    if i < 2 {
        return Err(Error::InvalidParams(format!(
            "association level must be >= 2, got {i}"
        )));
    }
    if !g.contains(e) {
        return Err(Error::MissingEdge(e));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    for x in 0..n as u32 {
        let base = g.bfs_masked(x, None);
        let masked = g.bfs_masked(x, Some(e));
        for y in x + 1..n as u32 {
            if base[y as usize] <= i && masked[y as usize] > i {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// All pairs critical at any level in `2..=k`, with per-level associated
/// edges and the chosen path.
pub fn critical_pairs(g: &Graph, k: u32) -> Vec<CriticalPairRecord> {
    let dist = g.all_pairs_distances();
    association_records(g, &dist, k)
}

/// Multiplicities `m(e)` against the chosen paths of [`critical_pairs`].
pub fn multiplicity_table(g: &Graph, k: u32) -> MultiplicityTable {
    let records = critical_pairs(g, k);
    let table = multiplicity_from_records(g, &records);
    debug_assert!(multiplicity_total_in_bound(g, k, &table));
    table
}

fn multiplicity_total_in_bound(g: &Graph, k: u32, table: &MultiplicityTable) -> bool {
    let n = g.vertex_count() as u64;
    table.total() * 2 <= (k as u64) * (k as u64 + 1) * (n * (n - 1) / 2)
}

/// Qualifying length-i paths and their t-edges for the given threshold.
pub fn t_edge_report(g: &Graph, cfg: AnalysisConfig) -> TEdgeReport {
    Analysis::new(g, cfg).t_report
}

/// The reduced subgraph `G0`: drop every edge with `m(e) >= t` and every
/// t-edge.
pub fn compute_g0(g: &Graph, cfg: AnalysisConfig) -> G0Result {
    Analysis::new(g, cfg).g0
}

/// All unordered pairs of distinct vertices with disjoint neighborhoods.
/// Adjacent pairs are included when they share no common neighbor.
pub fn disj(g: &Graph) -> Vec<(u32, u32)> {
    let rows = g.adjacency_bitset();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rows[x].iter().zip(&rows[y]).all(|(a, b)| a & b == 0) {
                out.push((x as u32, y as u32));
            }
        }
    }
    out
}

pub(crate) fn disj_count(g: &Graph) -> u64 {
    let rows = g.adjacency_bitset();
    let n = g.vertex_count();
    let mut count = 0u64;
    for x in 0..n {
        for y in x + 1..n {
            if rows[x].iter().zip(&rows[y]).all(|(a, b)| a & b == 0) {
                count += 1;
            }
        }
    }
    count
}

/// The edge-plus-disjoint-pairs inequality `e(F) + |Disj(F)| <= n^2 / 2`.
/// A theorem for every graph; a failure signals an implementation bug.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FurediCheck {
    pub edges: u64,
    pub disj_pairs: u64,
    pub lhs: u64,
    pub bound: f64,
    pub holds: bool,
}

pub fn check_furedi(g: &Graph) -> FurediCheck {
    let n = g.vertex_count() as u64;
    let edges = g.edge_count() as u64;
    let disj_pairs = disj_count(g);
    let lhs = edges + disj_pairs;
    FurediCheck {
        edges,
        disj_pairs,
        lhs,
        bound: (n * n) as f64 / 2.0,
        holds: 2 * lhs <= n * n,
    }
}

/// Heavy-edge counting bound: at most `k(k+1)/(2t) * C(n,2)` edges can have
/// multiplicity at least `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplicityCountCheck {
    pub heavy_edges: u64,
    pub bound: f64,
    pub holds: bool,
}

pub fn check_multiplicity_count(g: &Graph, cfg: AnalysisConfig) -> MultiplicityCountCheck {
    multiplicity_count_from_table(g, cfg, &multiplicity_table(g, cfg.k))
}

pub(crate) fn multiplicity_count_from_table(
    g: &Graph,
    cfg: AnalysisConfig,
    table: &MultiplicityTable,
) -> MultiplicityCountCheck {
    let heavy = table
        .entries
        .values()
        .filter(|e| e.multiplicity() >= cfg.t)
        .count() as u64;
    let n = g.vertex_count() as u64;
    let num = cfg.k as u64 * (cfg.k as u64 + 1) * (n * (n - 1) / 2);
    MultiplicityCountCheck {
        heavy_edges: heavy,
        bound: num as f64 / (2 * cfg.t as u64) as f64,
        holds: heavy * 2 * cfg.t as u64 <= num,
    }
}

/// Conclusions checked on `G0` of a diameter-k-critical graph.
///
/// - `l41`: no two `G0` edges are co-associated with the same chosen
///   critical path at any level.
/// - `l42`: the number of distinct critical pairs is at least
///   `(k-1)(e(G0) - n/2)`.
/// - `l43`: every critical pair has disjoint neighborhoods in `G0`.
/// - `e_g0_bound`: `e(G0) <= n^2/(2k) + n/2`.
/// - `matching_property`: the `G0` edges whose k-associated pairs all lie
///   at distance at most `k - 2` form a matching.
///
/// The booleans are computed for any input; `applicable` records whether
/// the graph actually verified as diameter-k-critical, which is what the
/// conclusions are claimed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G0LemmaReport {
    pub verdict: CriticalityVerdict,
    pub applicable: bool,
    pub l41: bool,
    pub l42: bool,
    pub l43: bool,
    pub e_g0_bound: bool,
    pub matching_property: bool,
    pub critical_pair_count: u64,
    pub g0_edge_count: u64,
}

impl G0LemmaReport {
    /// The four lemma-level conclusions at once.
    pub fn all_hold(&self) -> bool {
        self.l41 && self.l42 && self.l43 && self.e_g0_bound
    }
}

pub fn check_g0_lemmas(g: &Graph, cfg: AnalysisConfig) -> G0LemmaReport {
    g0_lemmas_from_analysis(&Analysis::new(g, cfg))
}

pub fn g0_lemmas_from_analysis(analysis: &Analysis) -> G0LemmaReport {
    let g = analysis.graph();
    let cfg = analysis.config();
    let n = g.vertex_count();
    let verdict = is_diameter_k_critical(g, cfg.k);
    let g0 = &analysis.g0().g0;
    let g0_edges: std::collections::BTreeSet<EdgeRef> = g0.edges().collect();

    let l41 = analysis.records().iter().all(|r| {
        r.levels.iter().all(|lvl| {
            lvl.associated
                .iter()
                .filter(|e| g0_edges.contains(e))
                .count()
                <= 1
        })
    });

    let cpc = analysis.critical_pair_count();
    let e0 = g0.edge_count() as i64;
    let l42 = 2 * cpc as i64 >= (cfg.k as i64 - 1) * (2 * e0 - n as i64);

    let g0_rows = g0.adjacency_bitset();
    let l43 = analysis.records().iter().all(|r| {
        let (x, y) = r.pair;
        g0_rows[x as usize]
            .iter()
            .zip(&g0_rows[y as usize])
            .all(|(a, b)| a & b == 0)
    });

    let e_g0_bound =
        2 * cfg.k as u64 * e0 as u64 <= (n as u64) * (n as u64) + cfg.k as u64 * n as u64;

    // G0 edges k-associated with at least one pair, every such pair at
    // distance <= k - 2
    let mut short_only: Vec<EdgeRef> = Vec::new();
    for r in analysis.records() {
        if r.base_distance + 2 > cfg.k {
            continue;
        }
        if let Some(lvl) = r.level(cfg.k) {
            short_only.extend(lvl.associated.iter().filter(|e| g0_edges.contains(e)));
        }
    }
    short_only.sort_unstable();
    short_only.dedup();
    short_only.retain(|e| {
        !analysis.records().iter().any(|r| {
            r.base_distance + 2 > cfg.k
                && r.level(cfg.k)
                    .is_some_and(|lvl| lvl.associated.binary_search(e).is_ok())
        })
    });
    let mut seen = vec![false; n];
    let mut matching_property = true;
    for e in &short_only {
        for w in [e.u(), e.v()] {
            if seen[w as usize] {
                matching_property = false;
            }
            seen[w as usize] = true;
        }
    }

    G0LemmaReport {
        verdict,
        applicable: verdict.is_yes(),
        l41,
        l42,
        l43,
        e_g0_bound,
        matching_property,
        critical_pair_count: cpc,
        g0_edge_count: e0 as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_complete_bipartite, gen_elementary, gen_g3m, Elementary, Matching};

    fn cycle(n: u32) -> Graph {
        gen_elementary(Elementary::Cycle, n).unwrap()
    }

    fn e(u: u32, v: u32) -> EdgeRef {
        EdgeRef::new(u, v).unwrap()
    }

    #[test]
    fn criticality_verdicts() {
        assert_eq!(is_diameter_k_critical(&cycle(6), 3), CriticalityVerdict::Yes);
        assert_eq!(
            is_diameter_k_critical(&cycle(5), 3),
            CriticalityVerdict::WrongDiameter(2)
        );
        assert_eq!(
            is_diameter_k_critical(&gen_elementary(Elementary::Complete, 4).unwrap(), 2),
            CriticalityVerdict::WrongDiameter(1)
        );
        let chorded = Graph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(matches!(
            is_diameter_k_critical(&chorded, 2),
            CriticalityVerdict::NonCriticalEdge(_)
        ));
        assert_eq!(
            format!("{}", CriticalityVerdict::WrongDiameter(3)),
            "wrong_diameter(3)"
        );
        assert_eq!(
            format!("{}", CriticalityVerdict::NonCriticalEdge(e(0, 2))),
            "non_critical_edge(0-2)"
        );
    }

    #[test]
    fn associated_pairs_examples() {
        assert_eq!(
            associated_pairs(&cycle(5), e(0, 1), 2).unwrap(),
            vec![(0, 1), (0, 2), (1, 4)]
        );
        assert_eq!(associated_pairs(&cycle(4), e(0, 1), 2).unwrap(), vec![(0, 1)]);
        let k4 = gen_elementary(Elementary::Complete, 4).unwrap();
        assert!(associated_pairs(&k4, e(0, 1), 2).unwrap().is_empty());
        assert!(associated_pairs(&cycle(4), e(0, 2), 2).is_err());
    }

    #[test]
    fn critical_pairs_on_c4() {
        let records = critical_pairs(&cycle(4), 2);
        let pairs: Vec<_> = records.iter().map(|r| r.pair).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        for r in &records {
            assert_eq!(r.base_distance, 1);
            assert_eq!(r.chosen_path, vec![r.pair.0, r.pair.1]);
            assert_eq!(r.levels.len(), 1);
            assert_eq!(r.levels[0].level, 2);
            assert_eq!(r.levels[0].associated, vec![e(r.pair.0, r.pair.1)]);
        }
    }

    #[test]
    fn critical_pairs_on_k23() {
        let k23 = gen_complete_bipartite(2, 3).unwrap();
        let records = critical_pairs(&k23, 2);
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.base_distance == 1));
    }

    #[test]
    fn critical_pairs_on_c6() {
        let records = critical_pairs(&cycle(6), 3);
        assert_eq!(records.len(), 12);
        for r in &records {
            assert!(r.base_distance <= 2);
            let levels: Vec<u32> = r.levels.iter().map(|l| l.level).collect();
            assert_eq!(levels, vec![2, 3]);
        }
        // antipodal pairs are not critical
        assert!(!records.iter().any(|r| r.base_distance == 3));
    }

    #[test]
    fn multiplicity_examples() {
        let t = multiplicity_table(&cycle(4), 2);
        assert!(t.entries.values().all(|e| e.multiplicity() == 1));
        assert_eq!(t.total(), 4);

        let t = multiplicity_table(&cycle(5), 2);
        assert!(t.entries.values().all(|e| e.multiplicity() == 3));
        assert_eq!(t.total(), 15);

        let t = multiplicity_table(&cycle(6), 3);
        assert!(t.entries.values().all(|e| e.multiplicity() == 6));
        assert_eq!(t.total(), 36);
    }

    #[test]
    fn t_edge_report_examples() {
        let c5 = cycle(5);
        let report = t_edge_report(&c5, AnalysisConfig::new(2, 4).unwrap());
        assert_eq!(report.paths_at(2).len(), 5);
        assert_eq!(report.t_edges.len(), 5);

        let report = t_edge_report(&c5, AnalysisConfig::new(2, 2).unwrap());
        assert!(report.per_level.is_empty());
        assert!(report.t_edges.is_empty());

        let k23 = gen_complete_bipartite(2, 3).unwrap();
        let report = t_edge_report(&k23, AnalysisConfig::new(2, 2).unwrap());
        assert!(report.per_level.is_empty());
        assert!(report.t_edges.is_empty());
    }

    #[test]
    fn strict_membership_empties_c5() {
        // under the wider reading the off-path edges at the endpoints are
        // not associated, so no length-2 path qualifies
        let analysis = Analysis::with_options(
            &cycle(5),
            AnalysisConfig::new(2, 4).unwrap(),
            AnalysisOptions {
                strict_p_membership: true,
            },
        );
        assert!(analysis.t_edge_report().per_level.is_empty());
    }

    #[test]
    fn g0_examples() {
        let r = compute_g0(&cycle(5), AnalysisConfig::new(2, 4).unwrap());
        assert_eq!(r.g0.edge_count(), 0);
        assert_eq!(r.heavy_count, 0);
        assert_eq!(r.t_edge_count, 5);

        let k23 = gen_complete_bipartite(2, 3).unwrap();
        let r = compute_g0(&k23, AnalysisConfig::new(2, 2).unwrap());
        assert_eq!(r.g0.edge_count(), 6);
        assert!(r.removed.is_empty());

        // with t = 1 every edge of a critical graph is heavy
        for (g, k) in [(cycle(4), 2), (cycle(6), 3)] {
            let r = compute_g0(&g, AnalysisConfig::new(k, 1).unwrap());
            assert_eq!(r.g0.edge_count(), 0);
            assert!(r.removed.iter().all(|d| d.heavy));
        }
    }

    #[test]
    fn disj_examples() {
        let d5 = disj(&cycle(5));
        assert_eq!(d5.len(), 5);
        assert!(d5
            .iter()
            .all(|&(x, y)| (y + 5 - x) % 5 == 1 || (y + 5 - x) % 5 == 4));
        let k33 = gen_complete_bipartite(3, 3).unwrap();
        let d = disj(&k33);
        assert_eq!(d.len(), 9);
        assert!(d.iter().all(|&(x, y)| x < 3 && y >= 3));
        let empty = Graph::from_pairs(5, &[]).unwrap();
        assert_eq!(disj(&empty).len(), 10);
    }

    #[test]
    fn furedi_examples() {
        let c = check_furedi(&cycle(5));
        assert_eq!((c.lhs, c.holds), (10, true));
        let c = check_furedi(&gen_complete_bipartite(3, 3).unwrap());
        assert_eq!((c.lhs, c.bound, c.holds), (18, 18.0, true));
        let c = check_furedi(&gen_elementary(Elementary::Complete, 4).unwrap());
        assert_eq!((c.lhs, c.holds), (6, true));
    }

    #[test]
    fn multiplicity_count_examples() {
        let c5 = cycle(5);
        let c = check_multiplicity_count(&c5, AnalysisConfig::new(2, 4).unwrap());
        assert_eq!((c.heavy_edges, c.holds), (0, true));
        let c = check_multiplicity_count(&c5, AnalysisConfig::new(2, 3).unwrap());
        assert_eq!((c.heavy_edges, c.bound, c.holds), (5, 10.0, true));
        let c = check_multiplicity_count(&cycle(6), AnalysisConfig::new(3, 7).unwrap());
        assert_eq!((c.heavy_edges, c.holds), (0, true));
    }

    #[test]
    fn g0_lemmas_examples() {
        let rep = check_g0_lemmas(&cycle(6), AnalysisConfig::new(3, 7).unwrap());
        assert!(rep.applicable);
        assert!(rep.all_hold());
        assert!(rep.matching_property);
        assert_eq!(rep.g0_edge_count, 0);
        assert_eq!(rep.critical_pair_count, 12);

        let k23 = gen_complete_bipartite(2, 3).unwrap();
        let rep = check_g0_lemmas(&k23, AnalysisConfig::new(2, 2).unwrap());
        assert!(rep.applicable);
        assert!(rep.all_hold());
        assert_eq!(rep.g0_edge_count, 6);

        let m = Matching::new(&[(0, 1)], 4).unwrap();
        let g = gen_g3m(8, &m).unwrap();
        let rep = check_g0_lemmas(&g, AnalysisConfig::new(3, 3).unwrap());
        assert!(rep.applicable);
        assert!(rep.all_hold());
    }

    #[test]
    fn non_critical_graphs_are_flagged_not_applicable() {
        let rep = check_g0_lemmas(&cycle(5), AnalysisConfig::new(3, 2).unwrap());
        assert!(!rep.applicable);
        assert!(matches!(rep.verdict, CriticalityVerdict::WrongDiameter(2)));
    }

    #[test]
    fn association_levels_form_the_stated_range() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..40 {
            let n = rng.gen_range(3..=7usize);
            let mut pairs = Vec::new();
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if rng.gen_bool(0.5) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::from_pairs(n, &pairs).unwrap();
            let k = 4;
            let records = critical_pairs(&g, k);
            let dist = g.all_pairs_distances();
            for edge in g.edges().collect::<Vec<_>>() {
                for x in 0..n as u32 {
                    let masked = g.bfs_masked(x, Some(edge));
                    for y in x + 1..n as u32 {
                        let d0 = dist[x as usize][y as usize];
                        let de = masked[y as usize];
                        for i in 2..=k {
                            let expected = d0 <= i && de > i;
                            let got = records
                                .iter()
                                .find(|r| r.pair == (x, y))
                                .and_then(|r| r.level(i))
                                .is_some_and(|lvl| lvl.associated.binary_search(&edge).is_ok());
                            assert_eq!(expected, got, "edge {edge} pair ({x},{y}) level {i}");
                        }
                    }
                }
            }
        }
    }

    /// Independent enumeration of all shortest (x, y)-paths by DFS over the
    /// distance gradient.
    fn all_shortest_paths(g: &Graph, x: u32, y: u32) -> Vec<Vec<u32>> {
        let dist_y = g.bfs_masked(y, None);
        let mut out = Vec::new();
        let mut stack = vec![vec![x]];
        while let Some(path) = stack.pop() {
            let cur = *path.last().unwrap();
            if cur == y {
                out.push(path);
                continue;
            }
            for &w in g.neighbors(cur) {
                if dist_y[w as usize] + 1 == dist_y[cur as usize] {
                    let mut next = path.clone();
                    next.push(w);
                    stack.push(next);
                }
            }
        }
        out
    }

    #[test]
    fn associated_edges_lie_on_every_shortest_path() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let n = rng.gen_range(4..=7usize);
            let mut pairs = Vec::new();
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if rng.gen_bool(0.5) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::from_pairs(n, &pairs).unwrap();
            for r in critical_pairs(&g, 4) {
                let (x, y) = r.pair;
                let paths = all_shortest_paths(&g, x, y);
                assert!(paths.contains(&r.chosen_path));
                assert_eq!(r.chosen_path, *paths.iter().min().unwrap());
                for lvl in &r.levels {
                    for e in &lvl.associated {
                        for p in &paths {
                            let on_path = p
                                .windows(2)
                                .any(|w| EdgeRef::new(w[0], w[1]).unwrap() == *e);
                            assert!(on_path, "edge {e} missing from a shortest path of {:?}", r.pair);
                        }
                    }
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn furedi_holds_on_random_graphs(n in 5usize..=50, seed in proptest::prelude::any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut pairs = Vec::new();
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if rng.gen_bool(0.5) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::from_pairs(n, &pairs).unwrap();
            proptest::prop_assert!(check_furedi(&g).holds);
        }
    }

    #[test]
    fn analysis_is_deterministic_across_thread_counts() {
        let g = gen_g3m(12, &Matching::new(&[(0, 1), (2, 3)], 6).unwrap()).unwrap();
        let cfg = AnalysisConfig::new(3, 3).unwrap();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| Analysis::new(&g, cfg))
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.records(), b.records());
        assert_eq!(a.multiplicity(), b.multiplicity());
        assert_eq!(a.t_edge_report(), b.t_edge_report());
        assert_eq!(a.g0().g0, b.g0().g0);
    }

    #[test]
    fn default_t_is_ceil_sqrt() {
        assert_eq!(default_t(1), 1);
        assert_eq!(default_t(4), 2);
        assert_eq!(default_t(5), 3);
        assert_eq!(default_t(8), 3);
        assert_eq!(default_t(9), 3);
        assert_eq!(default_t(10), 4);
    }
}
