//! Batched experiments over generators, seeds and inputs, with stable CSV
//! output. Rows run in a worker pool but are emitted in input order, so a
//! fixed seed list gives byte-identical CSV (timings are opt-in because
//! they are inherently nondeterministic).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berge::{self, ForbiddenFamily, Mode};
use crate::girth::{deg_pipeline, incidence_gq, incidence_pp};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::indep::alpha_exact;
use crate::peel::{pipeline, PipelineConfig};
use crate::randbuild::{build_stars, default_multiplicity};

#[derive(Clone, Debug)]
pub enum SweepInput {
    /// Generator order: projective plane for k = 2, generalized quadrangle
    /// for k = 3.
    Q(u64),
    /// Pre-built high-girth graph for any other k.
    File { name: String, graph: Graph },
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub k: usize,
    pub r: usize,
    pub m: Option<usize>,
    pub seeds: Vec<u64>,
    pub detect_budget: u64,
    pub alpha_budget: u64,
    pub maxcut_restarts: usize,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepRow {
    pub generator: String,
    pub input: String,
    pub k: usize,
    pub r: usize,
    pub m: usize,
    pub seed: u64,
    pub v_h: usize,
    pub edges_h: usize,
    pub alpha_lower: usize,
    pub alpha_upper: usize,
    pub alpha_exact: bool,
    pub freeness: String,
    pub wall_ms: Option<u128>,
    pub error: Option<String>,
}

fn generator_for(k: usize, input: &SweepInput) -> Result<(String, String, Graph), String> {
    match input {
        SweepInput::Q(q) => match k {
            2 => incidence_pp(*q)
                .map(|g| ("pp".to_string(), q.to_string(), g))
                .map_err(|e| e.to_string()),
            3 => incidence_gq(*q)
                .map(|g| ("gq".to_string(), q.to_string(), g))
                .map_err(|e| e.to_string()),
            _ => Err(format!(
                "no generator for k = {k}; supply a girth > {} graph file",
                2 * k
            )),
        },
        SweepInput::File { name, graph } => Ok(("file".to_string(), name.clone(), graph.clone())),
    }
}

fn run_star_row(input: &SweepInput, seed: u64, cfg: &SweepConfig) -> SweepRow {
    let start = std::time::Instant::now();
    let mut row = SweepRow {
        generator: String::new(),
        input: String::new(),
        k: cfg.k,
        r: cfg.r,
        m: 0,
        seed,
        v_h: 0,
        edges_h: 0,
        alpha_lower: 0,
        alpha_upper: 0,
        alpha_exact: false,
        freeness: String::new(),
        wall_ms: None,
        error: None,
    };
    let outcome = (|| -> Result<(), String> {
        let (gen, name, g) = generator_for(cfg.k, input)?;
        row.generator = gen;
        row.input = name;
        let pipe = deg_pipeline(&g, cfg.k, seed, cfg.maxcut_restarts).map_err(|e| e.to_string())?;
        let m = cfg
            .m
            .unwrap_or_else(|| default_multiplicity(g.n(), pipe.report.c, cfg.k));
        row.m = m;
        let built = build_stars(
            &pipe.gprime,
            &pipe.bipartition,
            cfg.k,
            cfg.r,
            m,
            seed,
            Some(pipe.report.c),
        )
        .map_err(|e| e.to_string())?;
        let h = &built.hypergraph;
        row.v_h = h.n();
        row.edges_h = h.edge_count();
        let fam = ForbiddenFamily::new(cfg.r, vec![cfg.k], Mode::NontrivialOnly)
            .map_err(|e| e.to_string())?;
        row.freeness = match berge::is_free(h, &fam, cfg.detect_budget).map_err(|e| e.to_string())?
        {
            berge::FreenessOutcome::Free { .. } => "free".into(),
            berge::FreenessOutcome::Witness { .. } => "witness".into(),
            berge::FreenessOutcome::Exhausted { .. } => "inconclusive".into(),
        };
        let alpha = alpha_exact(h, cfg.alpha_budget);
        row.alpha_lower = alpha.lower;
        row.alpha_upper = alpha.upper;
        row.alpha_exact = alpha.exact;
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e);
    }
    if cfg.timings {
        row.wall_ms = Some(start.elapsed().as_millis());
    }
    row
}

/// One row per (input, seed). Failures are recorded per row and do not
/// abort the sweep.
pub fn sweep_star_builds(inputs: &[SweepInput], cfg: &SweepConfig) -> Vec<SweepRow> {
    let jobs: Vec<(usize, &SweepInput, u64)> = inputs
        .iter()
        .flat_map(|i| cfg.seeds.iter().map(move |&s| (i, s)))
        .enumerate()
        .map(|(idx, (i, s))| (idx, i, s))
        .collect();
    let mut rows: Vec<(usize, SweepRow)> = jobs
        .par_iter()
        .map(|&(idx, input, seed)| (idx, run_star_row(input, seed, cfg)))
        .collect();
    rows.sort_by_key(|(idx, _)| *idx);
    rows.into_iter().map(|(_, r)| r).collect()
}

pub const SWEEP_CSV_HEADER: &str =
    "generator,input,k,r,m,seed,v_h,edges_h,alpha_lower,alpha_upper,alpha_exact,freeness,wall_ms,error";

pub fn sweep_rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.generator,
            r.input,
            r.k,
            r.r,
            r.m,
            r.seed,
            r.v_h,
            r.edges_h,
            r.alpha_lower,
            r.alpha_upper,
            r.alpha_exact,
            r.freeness,
            r.wall_ms.map_or(String::new(), |w| w.to_string()),
            r.error.clone().unwrap_or_default().replace(',', ";"),
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineSweepRow {
    pub input: String,
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub seed: u64,
    pub case: Option<u8>,
    pub outcome: String,
    pub indep_size: usize,
    pub floor: Option<f64>,
    pub floor_ok: Option<bool>,
    pub wall_ms: Option<u128>,
    pub error: Option<String>,
}

/// Runs the two-case pipeline over hypergraph inputs; records the returned
/// independent-set size against the probabilistic floor when Case 2 ran.
pub fn sweep_pipeline(
    inputs: &[(String, Hypergraph)],
    k: usize,
    seeds: &[u64],
    timings: bool,
) -> Vec<PipelineSweepRow> {
    let jobs: Vec<(usize, &(String, Hypergraph), u64)> = inputs
        .iter()
        .flat_map(|i| seeds.iter().map(move |&s| (i, s)))
        .enumerate()
        .map(|(idx, (i, s))| (idx, i, s))
        .collect();
    let mut rows: Vec<(usize, PipelineSweepRow)> = jobs
        .par_iter()
        .map(|&(idx, (name, h), seed)| {
            let start = std::time::Instant::now();
            let mut row = PipelineSweepRow {
                input: name.clone(),
                n: h.n(),
                edges: h.edge_count(),
                k,
                seed,
                case: None,
                outcome: String::new(),
                indep_size: 0,
                floor: None,
                floor_ok: None,
                wall_ms: None,
                error: None,
            };
            match pipeline(
                h,
                k,
                &PipelineConfig {
                    seed,
                    ..Default::default()
                },
            ) {
                Ok(out) => {
                    row.case = out.report.case;
                    row.outcome = out.report.outcome.clone();
                    row.indep_size = out.independent_set.len();
                    row.floor = out.report.alphabound_floor;
                    row.floor_ok = out
                        .report
                        .alphabound_floor
                        .map(|f| out.independent_set.len() as f64 >= f);
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            if timings {
                row.wall_ms = Some(start.elapsed().as_millis());
            }
            (idx, row)
        })
        .collect();
    rows.sort_by_key(|(idx, _)| *idx);
    rows.into_iter().map(|(_, r)| r).collect()
}

pub const PIPELINE_CSV_HEADER: &str =
    "input,n,edges,k,seed,case,outcome,indep_size,floor,floor_ok,wall_ms,error";

pub fn pipeline_rows_to_csv(rows: &[PipelineSweepRow]) -> String {
    let mut out = String::from(PIPELINE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.input,
            r.n,
            r.edges,
            r.k,
            r.seed,
            r.case.map_or(String::new(), |c| c.to_string()),
            r.outcome,
            r.indep_size,
            r.floor.map_or(String::new(), |f| format!("{f:.4}")),
            r.floor_ok.map_or(String::new(), |b| b.to_string()),
            r.wall_ms.map_or(String::new(), |w| w.to_string()),
            r.error.clone().unwrap_or_default().replace(',', ";"),
        ));
    }
    out
}
