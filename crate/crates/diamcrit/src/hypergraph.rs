//! 3-uniform hypergraphs and the reduction pipeline over qualifying
//! critical paths.
//!
//! The pipeline encodes each qualifying length-i critical path as a 3-edge
//! (endpoints plus one end's interior neighbor, tagged with a *handle*
//! endpoint and its *center* neighbor), then linearizes (H2), extracts a
//! 3-partite subhypergraph by derandomized conditional expectation (H3),
//! and keeps the largest handle-part/center-part orientation class (H4).
//! H4 must be triangle-free whenever the 3-edges came from a graph's
//! qualifying paths; a triangle would contradict the association of an end
//! edge with its path.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criticality::{Analysis, AnalysisConfig};
use crate::graph::Graph;
use crate::{Error, Result};

/// Partition class of the 3-partite extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Part {
    V1,
    V2,
    V3,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::V1, Part::V2, Part::V3];

    fn index(self) -> usize {
        match self {
            Part::V1 => 0,
            Part::V2 => 1,
            Part::V3 => 2,
        }
    }
}

/// Handle/center annotation of a 3-edge built from a critical path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HandleCenter {
    pub handle: u32,
    pub center: u32,
}

/// A 3-uniform hypergraph with optional per-edge handle/center annotations
/// and an optional vertex partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: BTreeMap<[u32; 3], Option<HandleCenter>>,
    partition: Vec<Option<Part>>,
}

impl Hypergraph3 {
    pub fn new(n: usize) -> Hypergraph3 {
        Hypergraph3 {
            n,
            edges: BTreeMap::new(),
            partition: vec![None; n],
        }
    }

    fn normalize(&self, tri: [u32; 3]) -> Result<[u32; 3]> {
        let mut t = tri;
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::InvalidParams(format!(
                "3-edge vertices must be distinct, got {tri:?}"
            )));
        }
        if t[2] as usize >= self.n {
            return Err(Error::InvalidVertex {
                vertex: t[2],
                n: self.n,
            });
        }
        Ok(t)
    }

    /// Inserts a 3-edge; returns false if it was already present.
    pub fn insert(&mut self, tri: [u32; 3]) -> Result<bool> {
        let t = self.normalize(tri)?;
        Ok(self.edges.insert(t, None).is_none())
    }

    /// Inserts an annotated 3-edge. Handle and center must be distinct
    /// members of the edge.
    pub fn insert_annotated(&mut self, tri: [u32; 3], handle: u32, center: u32) -> Result<bool> {
        let t = self.normalize(tri)?;
        if handle == center || !t.contains(&handle) || !t.contains(&center) {
            return Err(Error::InvalidParams(format!(
                "handle {handle} / center {center} must be distinct members of {t:?}"
            )));
        }
        Ok(self
            .edges
            .insert(t, Some(HandleCenter { handle, center }))
            .is_none())
    }

    pub fn contains(&self, tri: [u32; 3]) -> bool {
        self.normalize(tri)
            .is_ok_and(|t| self.edges.contains_key(&t))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sorted triples.
    pub fn edges(&self) -> impl Iterator<Item = [u32; 3]> + '_ {
        self.edges.keys().copied()
    }

    pub fn annotation(&self, tri: [u32; 3]) -> Option<HandleCenter> {
        self.normalize(tri)
            .ok()
            .and_then(|t| self.edges.get(&t).copied().flatten())
    }

    pub fn part_of(&self, v: u32) -> Option<Part> {
        self.partition.get(v as usize).copied().flatten()
    }

    pub fn set_part(&mut self, v: u32, part: Part) -> Result<()> {
        if v as usize >= self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        self.partition[v as usize] = Some(part);
        Ok(())
    }

    /// Text serialization: `n m` then one `a b c` line per 3-edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for tri in self.edges.keys() {
            out.push_str(&format!("{} {} {}\n", tri[0], tri[1], tri[2]));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Hypergraph3> {
        let mut tokens = text.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut h = Hypergraph3::new(n);
        for i in 0..m {
            let a = next(&format!("edge {i}"))? as u32;
            let b = next(&format!("edge {i}"))? as u32;
            let c = next(&format!("edge {i}"))? as u32;
            h.insert([a, b, c])?;
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens after declared 3-edges".into()));
        }
        Ok(h)
    }

    /// Annotations and partition for the JSON sidecar.
    pub fn sidecar(&self) -> HypergraphSidecar {
        let annotations = self
            .edges
            .iter()
            .filter_map(|(tri, hc)| {
                hc.map(|hc| EdgeAnnotation {
                    edge: *tri,
                    handle: hc.handle,
                    center: hc.center,
                })
            })
            .collect();
        let partition = if self.partition.iter().any(Option::is_some) {
            Some(
                self.partition
                    .iter()
                    .map(|p| p.map(|p| p.index() as u8 + 1))
                    .collect(),
            )
        } else {
            None
        };
        HypergraphSidecar {
            annotations,
            partition,
        }
    }
}

/// JSON sidecar carrying the annotations the text format cannot express.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphSidecar {
    pub annotations: Vec<EdgeAnnotation>,
    /// Per-vertex part label 1..=3, when a partition has been assigned.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Option<u8>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeAnnotation {
    pub edge: [u32; 3],
    pub handle: u32,
    pub center: u32,
}

/// Result of the H1 construction: the hypergraph plus the count of paths
/// dropped because both candidate triples were already taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Build {
    pub hypergraph: Hypergraph3,
    pub dropped_paths: u64,
}

/// Encodes the qualifying length-i critical paths as annotated 3-edges: for
/// a path `x a1 .. a_{i-1} y` the triple `{x, a1, y}` with handle `x` and
/// center `a1`; on collision the alternate `{x, a_{i-1}, y}` with handle
/// `y`, center `a_{i-1}`; a path whose both triples are taken is dropped
/// and counted. Paths are oriented from the smaller endpoint, so for
/// `i = 2` the handle is the smaller endpoint and the center the midpoint.
pub fn build_h1(g: &Graph, cfg: AnalysisConfig, i: u32) -> Result<H1Build> {
    h1_from_analysis(&Analysis::new(g, cfg), i)
}

pub fn h1_from_analysis(analysis: &Analysis, i: u32) -> Result<H1Build> {
    let cfg = analysis.config();
    if i < 2 || i > cfg.k {
        return Err(Error::InvalidParams(format!(
            "pipeline level must lie in 2..={}, got {i}",
            cfg.k
        )));
    }
    let mut h = Hypergraph3::new(analysis.graph().vertex_count());
    let mut dropped = 0;
    for q in analysis.t_edge_report().paths_at(i) {
        let p = &q.path;
        let len = p.len() - 1;
        let primary = [p[0], p[1], p[len]];
        let alternate = [p[0], p[len - 1], p[len]];
        if !h.contains(primary) {
            h.insert_annotated(primary, p[0], p[1])?;
        } else if !h.contains(alternate) {
            h.insert_annotated(alternate, p[len], p[len - 1])?;
        } else {
            dropped += 1;
        }
    }
    Ok(H1Build {
        hypergraph: h,
        dropped_paths: dropped,
    })
}

/// Whether any two distinct 3-edges share at most one vertex.
pub fn is_linear(h: &Hypergraph3) -> bool {
    let mut pair_used = std::collections::HashSet::new();
    for tri in h.edges() {
        for (a, b) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
            if !pair_used.insert((a, b)) {
                return false;
            }
        }
    }
    true
}

fn shared_vertices(a: [u32; 3], b: [u32; 3]) -> Vec<u32> {
    a.iter().filter(|v| b.contains(v)).copied().collect()
}

/// All triangles of a linear hypergraph: unordered triples of 3-edges with
/// pairwise intersections of size one, three distinct shared vertices, six
/// vertices in total. Rejects non-linear input.
pub fn find_triangles(h: &Hypergraph3) -> Result<Vec<[[u32; 3]; 3]>> {
    if !is_linear(h) {
        return Err(Error::NonLinearInput);
    }
    let edges: Vec<[u32; 3]> = h.edges().collect();
    let m = edges.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let sab = shared_vertices(edges[a], edges[b]);
            if sab.len() != 1 {
                continue;
            }
            for c in b + 1..m {
                let sac = shared_vertices(edges[a], edges[c]);
                let sbc = shared_vertices(edges[b], edges[c]);
                if sac.len() != 1 || sbc.len() != 1 {
                    continue;
                }
                if sab[0] != sac[0] && sab[0] != sbc[0] && sac[0] != sbc[0] {
                    out.push([edges[a], edges[b], edges[c]]);
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of [`linearize`] with the statistics the reduction ratio
/// argument is stated in terms of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizeOutcome {
    pub hypergraph: Hypergraph3,
    pub steps: u64,
    /// Largest number of edges deleted by a single step.
    pub max_step_deletions: u64,
    /// `|E(out)| * 2t >= |E(in)|`; guaranteed when the input came from
    /// [`build_h1`] with the same threshold.
    pub ratio_ok: bool,
}

/// Repeatedly picks the lexicographically smallest 3-edge that meets some
/// other edge in two vertices and deletes all those mates (keeping the
/// picked edge) until the hypergraph is linear.
pub fn linearize(h: &Hypergraph3, t: u32) -> LinearizeOutcome {
    let mut edges: Vec<[u32; 3]> = h.edges().collect();
    let mut steps = 0u64;
    let mut max_step_deletions = 0u64;
    loop {
        let mut picked: Option<usize> = None;
        'outer: for (i, &a) in edges.iter().enumerate() {
            for (j, &b) in edges.iter().enumerate() {
                if i != j && shared_vertices(a, b).len() == 2 {
                    picked = Some(i);
                    break 'outer;
                }
            }
        }
        let Some(i) = picked else { break };
        let keep = edges[i];
        let before = edges.len();
        edges.retain(|&b| b == keep || shared_vertices(keep, b).len() != 2);
        steps += 1;
        max_step_deletions = max_step_deletions.max((before - edges.len()) as u64);
    }
    let mut out = Hypergraph3::new(h.vertex_count());
    for tri in edges {
        match h.annotation(tri) {
            Some(hc) => out.insert_annotated(tri, hc.handle, hc.center),
            None => out.insert(tri),
        }
        .expect("edges come from a valid hypergraph");
    }
    debug_assert!(is_linear(&out));
    let ratio_ok = out.edge_count() as u64 * 2 * t as u64 >= h.edge_count() as u64;
    LinearizeOutcome {
        hypergraph: out,
        steps,
        max_step_deletions,
        ratio_ok,
    }
}

// expected rainbow weight scaled by 27, unassigned vertices uniform
fn edge_score(tri: [u32; 3], assignment: &[Option<Part>]) -> u64 {
    let parts: Vec<Part> = tri
        .iter()
        .filter_map(|&v| assignment[v as usize])
        .collect();
    match parts.len() {
        3 => {
            if parts[0] != parts[1] && parts[0] != parts[2] && parts[1] != parts[2] {
                27
            } else {
                0
            }
        }
        2 => {
            if parts[0] != parts[1] {
                9
            } else {
                0
            }
        }
        _ => 6,
    }
}

/// Derandomized 3-partition by conditional expectation: vertices are
/// assigned in id order to the part maximizing the expected number of
/// rainbow edges (unassigned vertices uniform over the three parts, ties to
/// the smallest part). Keeps exactly the edges with one vertex per part,
/// which is at least `ceil(2/9 * |E|)` of them.
pub fn extract_3partite(h: &Hypergraph3) -> Hypergraph3 {
    let n = h.vertex_count();
    let edges: Vec<[u32; 3]> = h.edges().collect();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, tri) in edges.iter().enumerate() {
        for &v in tri {
            touching[v as usize].push(i);
        }
    }
    let mut assignment: Vec<Option<Part>> = vec![None; n];
    for v in 0..n {
        let mut best = Part::V1;
        let mut best_score = 0u64;
        for (idx, part) in Part::ALL.into_iter().enumerate() {
            assignment[v] = Some(part);
            let score: u64 = touching[v]
                .iter()
                .map(|&i| edge_score(edges[i], &assignment))
                .sum();
            if idx == 0 || score > best_score {
                best = part;
                best_score = score;
            }
        }
        assignment[v] = Some(best);
    }
    let mut out = Hypergraph3::new(n);
    for (v, part) in assignment.iter().enumerate() {
        out.set_part(v as u32, part.expect("every vertex was assigned"))
            .unwrap();
    }
    for tri in &edges {
        let parts: Vec<Part> = tri
            .iter()
            .map(|&v| assignment[v as usize].unwrap())
            .collect();
        if parts[0] != parts[1] && parts[0] != parts[2] && parts[1] != parts[2] {
            match h.annotation(*tri) {
                Some(hc) => out.insert_annotated(*tri, hc.handle, hc.center),
                None => out.insert(*tri),
            }
            .expect("edges come from a valid hypergraph");
        }
    }
    debug_assert!(out.edge_count() as u64 * 9 >= h.edge_count() as u64 * 2);
    out
}

/// Selects the largest of the six (handle part, center part) orientation
/// classes of an annotated, partitioned hypergraph; ties go to the first
/// class in part order.
pub fn largest_orientation_class(h: &Hypergraph3) -> Hypergraph3 {
    let mut counts = [[0u64; 3]; 3];
    for tri in h.edges() {
        let hc = h
            .annotation(tri)
            .expect("orientation classes need annotated edges");
        let hp = h.part_of(hc.handle).expect("partition assigned").index();
        let cp = h.part_of(hc.center).expect("partition assigned").index();
        counts[hp][cp] += 1;
    }
    let mut best = (0usize, 1usize);
    for hp in 0..3 {
        for cp in 0..3 {
            if hp != cp && counts[hp][cp] > counts[best.0][best.1] {
                best = (hp, cp);
            }
        }
    }
    let mut out = Hypergraph3::new(h.vertex_count());
    for v in 0..h.vertex_count() as u32 {
        if let Some(p) = h.part_of(v) {
            out.set_part(v, p).unwrap();
        }
    }
    for tri in h.edges() {
        let hc = h.annotation(tri).unwrap();
        if h.part_of(hc.handle).unwrap().index() == best.0
            && h.part_of(hc.center).unwrap().index() == best.1
        {
            out.insert_annotated(tri, hc.handle, hc.center).unwrap();
        }
    }
    out
}

/// Sizes and sanity flags of one pipeline run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PipelineReport {
    pub level: u32,
    pub t: u32,
    pub h1_size: usize,
    pub h2_size: usize,
    pub h3_size: usize,
    pub h4_size: usize,
    pub dropped_collisions: u64,
    pub linearize_steps: u64,
    pub max_linearize_step_deletions: u64,
    pub h2_linear: bool,
    pub h2_ratio_ok: bool,
    pub h3_ratio_ok: bool,
    pub h4_ratio_ok: bool,
    pub h4_triangle_free: bool,
}

impl PipelineReport {
    pub fn all_flags_hold(&self) -> bool {
        self.h2_linear
            && self.h2_ratio_ok
            && self.h3_ratio_ok
            && self.h4_ratio_ok
            && self.h4_triangle_free
    }
}

/// A full H1 -> H4 run with all intermediate hypergraphs.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub h1: Hypergraph3,
    pub h2: Hypergraph3,
    pub h3: Hypergraph3,
    pub h4: Hypergraph3,
    pub report: PipelineReport,
}

pub fn pipeline(g: &Graph, cfg: AnalysisConfig, i: u32) -> Result<PipelineRun> {
    pipeline_from_analysis(&Analysis::new(g, cfg), i)
}

pub fn pipeline_from_analysis(analysis: &Analysis, i: u32) -> Result<PipelineRun> {
    let t = analysis.config().t;
    let H1Build {
        hypergraph: h1,
        dropped_paths,
    } = h1_from_analysis(analysis, i)?;
    let lin = linearize(&h1, t);
    let h2 = lin.hypergraph;
    let h3 = extract_3partite(&h2);
    let h4 = largest_orientation_class(&h3);
    let triangles = find_triangles(&h4)?;
    let report = PipelineReport {
        level: i,
        t,
        h1_size: h1.edge_count(),
        h2_size: h2.edge_count(),
        h3_size: h3.edge_count(),
        h4_size: h4.edge_count(),
        dropped_collisions: dropped_paths,
        linearize_steps: lin.steps,
        max_linearize_step_deletions: lin.max_step_deletions,
        h2_linear: is_linear(&h2),
        h2_ratio_ok: lin.ratio_ok,
        h3_ratio_ok: h3.edge_count() as u64 * 9 >= h2.edge_count() as u64 * 2,
        h4_ratio_ok: h4.edge_count() as u64 * 6 >= h3.edge_count() as u64,
        h4_triangle_free: triangles.is_empty(),
    };
    Ok(PipelineRun { h1, h2, h3, h4, report })
}

const RSZ_MAX_N: usize = 7;

/// An optimum of the tiny exhaustive search: the maximum 3-edge count of a
/// triangle-free linear 3-uniform hypergraph, plus one witness.
#[derive(Debug, Clone)]
pub struct RszResult {
    pub value: usize,
    pub witness: Hypergraph3,
}

/// Exhaustive maximum over canonical 3-edge sets by backtracking with
/// linearity and triangle-freeness pruning. Guarded to `n <= 7`.
pub fn rsz_exhaustive(n: u32) -> Result<RszResult> {
    if n as usize > RSZ_MAX_N {
        return Err(Error::TooLarge {
            what: "exhaustive hypergraph search vertex count",
            value: n as usize,
            limit: RSZ_MAX_N,
        });
    }
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    let mut best: Vec<[u32; 3]> = Vec::new();
    let mut current: Vec<[u32; 3]> = Vec::new();
    let mut pair_used = vec![false; (n as usize) * (n as usize)];
    search_rsz(&triples, 0, n, &mut current, &mut pair_used, &mut best);
    let mut witness = Hypergraph3::new(n as usize);
    for tri in &best {
        witness.insert(*tri).unwrap();
    }
    Ok(RszResult {
        value: best.len(),
        witness,
    })
}

fn forms_triangle(a: [u32; 3], b: [u32; 3], c: [u32; 3]) -> bool {
    let sab = shared_vertices(a, b);
    let sac = shared_vertices(a, c);
    let sbc = shared_vertices(b, c);
    sab.len() == 1
        && sac.len() == 1
        && sbc.len() == 1
        && sab[0] != sac[0]
        && sab[0] != sbc[0]
        && sac[0] != sbc[0]
}

fn search_rsz(
    triples: &[[u32; 3]],
    start: usize,
    n: u32,
    current: &mut Vec<[u32; 3]>,
    pair_used: &mut [bool],
    best: &mut Vec<[u32; 3]>,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() + (triples.len() - start) <= best.len() {
        return;
    }
    for idx in start..triples.len() {
        let tri = triples[idx];
        let pairs = [
            (tri[0] * n + tri[1]) as usize,
            (tri[0] * n + tri[2]) as usize,
            (tri[1] * n + tri[2]) as usize,
        ];
        if pairs.iter().any(|&p| pair_used[p]) {
            continue; // linearity
        }
        let triangle = current.iter().enumerate().any(|(i, &a)| {
            current[i + 1..]
                .iter()
                .any(|&b| forms_triangle(a, b, tri))
        });
        if triangle {
            continue;
        }
        for &p in &pairs {
            pair_used[p] = true;
        }
        current.push(tri);
        search_rsz(triples, idx + 1, n, current, pair_used, best);
        current.pop();
        for &p in &pairs {
            pair_used[p] = false;
        }
    }
}
