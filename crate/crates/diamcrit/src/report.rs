//! The machine-readable analysis report.
//!
//! One JSON document per analyzed graph, stable across runs and thread
//! counts: map keys are ordered and no timestamps are embedded. The lemma
//! conclusions proved for diameter-k-critical graphs are `null` when the
//! input did not verify as critical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criticality::{
    g0_lemmas_from_analysis, multiplicity_count_from_table, Analysis, AnalysisConfig,
    AnalysisOptions, CriticalityVerdict,
};
use crate::graph::{Graph, UNREACHABLE};
use crate::search::degree_square_check;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub k: u32,
    pub t: u32,
    /// `null` when the graph is disconnected.
    pub diameter: Option<u32>,
    pub is_critical: bool,
    /// `null` when critical, otherwise the concrete failure.
    pub witness: Option<Witness>,
    pub critical_pair_count: u64,
    /// multiplicity value -> number of edges with that multiplicity
    pub multiplicity_histogram: BTreeMap<u32, u64>,
    pub heavy_edge_count: u64,
    pub t_edge_count: u64,
    pub g0_edge_count: u64,
    pub lemma_checks: LemmaChecks,
    pub degree_square_sum: u64,
    /// `null` for edgeless graphs.
    pub degree_square_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    WrongDiameter { actual: Option<u32> },
    NonCriticalEdge { edge: (u32, u32) },
}

/// The counting bound holds unconditionally (`l31`); the G0 conclusions are
/// reported only for verified diameter-k-critical inputs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct LemmaChecks {
    pub l31: bool,
    pub l41: Option<bool>,
    pub l42: Option<bool>,
    pub l43: Option<bool>,
    pub e_g0_bound: Option<bool>,
}

pub fn analysis_report(g: &Graph, cfg: AnalysisConfig, options: AnalysisOptions) -> AnalysisReport {
    report_from_analysis(&Analysis::with_options(g, cfg, options))
}

pub fn report_from_analysis(analysis: &Analysis) -> AnalysisReport {
    let g = analysis.graph();
    let cfg = analysis.config();
    let lemmas = g0_lemmas_from_analysis(analysis);
    let witness = match lemmas.verdict {
        CriticalityVerdict::Yes => None,
        CriticalityVerdict::WrongDiameter(d) => Some(Witness::WrongDiameter {
            actual: (d != UNREACHABLE).then_some(d),
        }),
        CriticalityVerdict::NonCriticalEdge(e) => Some(Witness::NonCriticalEdge {
            edge: e.endpoints(),
        }),
    };
    let applicable = lemmas.applicable;
    let mult_check = multiplicity_count_from_table(g, cfg, analysis.multiplicity());
    let ds = degree_square_check(g);
    let diameter = g.diameter();
    AnalysisReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        k: cfg.k,
        t: cfg.t,
        diameter: (diameter != UNREACHABLE).then_some(diameter),
        is_critical: applicable,
        witness,
        critical_pair_count: analysis.critical_pair_count(),
        multiplicity_histogram: analysis.multiplicity().histogram(),
        heavy_edge_count: analysis.g0().heavy_count,
        t_edge_count: analysis.g0().t_edge_count,
        g0_edge_count: analysis.g0().g0.edge_count() as u64,
        lemma_checks: LemmaChecks {
            l31: mult_check.holds,
            l41: applicable.then_some(lemmas.l41),
            l42: applicable.then_some(lemmas.l42),
            l43: applicable.then_some(lemmas.l43),
            e_g0_bound: applicable.then_some(lemmas.e_g0_bound),
        },
        degree_square_sum: ds.lhs,
        degree_square_ratio: ds.ratio,
    }
}
