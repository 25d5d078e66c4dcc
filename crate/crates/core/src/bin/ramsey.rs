use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use berge_ramsey::berge::{
    self, ForbiddenFamily, Mode, SearchOutcome, DEFAULT_DETECT_BUDGET,
};
use berge_ramsey::census;
use berge_ramsey::certify;
use berge_ramsey::girth::{deg_pipeline, girth, incidence_gq, incidence_pp};
use berge_ramsey::graph::Graph;
use berge_ramsey::hypergraph::Hypergraph;
use berge_ramsey::indep::{alpha_exact, indep_prob_mc, DEFAULT_ALPHA_BUDGET};
use berge_ramsey::peel;
use berge_ramsey::randbuild;
use berge_ramsey::sweep;
use berge_ramsey::textio;

/// Exit codes: 0 success or claim, 1 witness found (not free), 2
/// inconclusive (budget exhausted), 3 input error.
const EXIT_OK: u8 = 0;
const EXIT_WITNESS: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ramsey",
    about = "Construction and verification toolkit for Ramsey-type problems on Berge cycles in uniform hypergraphs",
    version
)]
struct Cli {
    /// Root seed for randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for exhaustive searches (detector, census, solver).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the primary output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Nontrivial,
    TrivialAllowed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Nontrivial => Mode::NontrivialOnly,
            ModeArg::TrivialAllowed => Mode::TrivialAllowed,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate incidence graphs of small generalized polygons.
    Gen {
        #[command(subcommand)]
        which: GenCmd,
    },
    /// Exact girth of a graph.
    Girth { file: PathBuf },
    /// Max-cut bipartization and min-degree peeling with degree bounds.
    Degpipe {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Local-search restarts for the max cut.
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Randomized hypergraph constructions.
    Build {
        #[command(subcommand)]
        which: BuildCmd,
    },
    /// Search for a Berge k-cycle.
    Detect {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Nontrivial)]
        mode: ModeArg,
    },
    /// Exact independence number (branch and bound).
    Alpha { file: PathBuf },
    /// Monte Carlo estimate of the s-set independence probability.
    IndepProb {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Exact cycle census, optionally through a fixed edge.
    Census {
        file: PathBuf,
        #[arg(long)]
        len: usize,
        /// Fixed edge "u,v" for the through-edge count and union subgraph.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Peeling stages.
    Peel {
        #[command(subcommand)]
        which: PeelCmd,
    },
    /// The composed two-case pipeline for Berge cycles of length 2k.
    Pipeline {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Override the ratio parameter (default exp(-sqrt(log2 n))).
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Emit a certificate for a hypergraph against a forbidden family.
    Certify {
        file: PathBuf,
        /// Comma-separated cycle lengths, e.g. "2,3,4".
        #[arg(long)]
        lengths: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Nontrivial)]
        mode: ModeArg,
    },
    /// Re-verify a certificate from its inline edge list.
    Verify { file: PathBuf },
    /// Batched experiments with CSV output.
    Sweep {
        #[command(subcommand)]
        which: SweepCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Point-line incidence graph of PG(2, q), girth 6.
    Pp {
        #[arg(long)]
        q: u64,
    },
    /// Incidence graph of the symplectic quadrangle W(q), girth 8.
    Gq {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Star placement on a high-girth graph (runs the degree pipeline
    /// first).
    T2 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Star multiplicity; default 8 ln(n) / c^k from the pipeline.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Placement of short-cycle-free linear 3-graphs (girth > 8 source).
    T3 {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
    },
    /// Greedy linear 3-graph free of Berge 2-, 3- and 4-cycles.
    Jn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PeelCmd {
    /// Bounded degree-ratio extraction.
    Ratio {
        file: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Light-pair peeling and codegree-1 subgraph selection.
    Heavy {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Star builds over generator orders (pp for k = 2, gq for k = 3) or
    /// over high-girth graph files (any k).
    T2 {
        /// Comma-separated generator orders, e.g. "2,3".
        #[arg(long)]
        q: Option<String>,
        /// Comma-separated graph files for k outside the generator range.
        #[arg(long)]
        graphs: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Comma-separated seeds.
        #[arg(long)]
        seeds: String,
        /// Record wall times (makes the CSV nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Two-case pipeline over hypergraph files.
    Pipeline {
        /// Comma-separated hypergraph files.
        #[arg(long)]
        inputs: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seeds: String,
        #[arg(long)]
        timings: bool,
    },
}

fn read_graph(path: &PathBuf) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    Ok(textio::parse_graph(&text)?)
}

fn read_hypergraph(path: &PathBuf) -> anyhow::Result<Hypergraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    Ok(textio::parse_hypergraph(&text)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {path:?}"))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn report<T: serde::Serialize>(cli_format: Format, value: &T, text: String) -> String {
    match cli_format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).unwrap()),
        _ => text,
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|e| anyhow!("invalid list item {t:?}: {e}"))
        })
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let detect_budget = cli.budget.unwrap_or(DEFAULT_DETECT_BUDGET);
    let alpha_budget = cli.budget.unwrap_or(DEFAULT_ALPHA_BUDGET);
    let census_budget = cli.budget.unwrap_or(census::DEFAULT_CENSUS_BUDGET);

    match cli.cmd {
        Cmd::Gen { which } => {
            let g = match which {
                GenCmd::Pp { q } => incidence_pp(q)?,
                GenCmd::Gq { q } => incidence_gq(q)?,
            };
            emit(&cli.out, &textio::serialize_graph(&g))?;
            Ok(EXIT_OK)
        }
        Cmd::Girth { file } => {
            let g = read_graph(&file)?;
            let rep = girth(&g);
            let text = match rep.girth {
                Some(girth) => format!("girth {girth}\n"),
                None => "girth infinite (acyclic)\n".to_string(),
            };
            emit(&cli.out, &report(cli.format, &rep, text))?;
            Ok(EXIT_OK)
        }
        Cmd::Degpipe { file, k, restarts } => {
            let g = read_graph(&file)?;
            let pipe = deg_pipeline(&g, k, cli.seed, restarts)?;
            let text = format!(
                "c = {:.6}, survivors = {}, min degree = {} (bound {:.3}), max degree = {} (bound {:.3})\n",
                pipe.report.c,
                pipe.report.survivors,
                pipe.report.min_degree,
                pipe.report.min_degree_bound,
                pipe.report.max_degree,
                pipe.report.max_degree_bound
            );
            emit(&cli.out, &report(cli.format, &pipe.report, text))?;
            Ok(EXIT_OK)
        }
        Cmd::Build { which } => {
            let (construction, trace_path) = match which {
                BuildCmd::T2 {
                    graph,
                    k,
                    r,
                    m,
                    trace,
                    restarts,
                } => {
                    let g = read_graph(&graph)?;
                    let pipe = deg_pipeline(&g, k, cli.seed, restarts)?;
                    let m = m.unwrap_or_else(|| {
                        randbuild::default_multiplicity(g.n(), pipe.report.c, k)
                    });
                    let built = randbuild::build_stars(
                        &pipe.gprime,
                        &pipe.bipartition,
                        k,
                        r,
                        m,
                        cli.seed,
                        Some(pipe.report.c),
                    )?;
                    (built, trace)
                }
                BuildCmd::T3 {
                    graph,
                    trace,
                    restarts,
                } => {
                    let g = read_graph(&graph)?;
                    let pipe = deg_pipeline(&g, 4, cli.seed, restarts)?;
                    let built = randbuild::build_jn_cover(
                        &pipe.gprime,
                        &pipe.bipartition,
                        cli.seed,
                        Some(pipe.report.c),
                    )?;
                    (built, trace)
                }
                BuildCmd::Jn { n } => {
                    let jn = randbuild::jn_supplier(n, cli.seed);
                    eprintln!(
                        "# edges = {}, target = {:.1}, degree cap = {}, scanned = {}{}",
                        jn.report.edges,
                        jn.report.target_edges,
                        jn.report.degree_cap,
                        jn.report.candidates_scanned,
                        if jn.report.exhaustive { "" } else { " (sampled)" }
                    );
                    emit(&cli.out, &textio::serialize_hypergraph(&jn.hypergraph))?;
                    return Ok(EXIT_OK);
                }
            };
            emit(
                &cli.out,
                &textio::serialize_hypergraph(&construction.hypergraph),
            )?;
            if let Some(path) = trace_path {
                std::fs::write(
                    &path,
                    serde_json::to_string_pretty(&construction.trace)?,
                )
                .with_context(|| format!("writing {path:?}"))?;
            }
            Ok(EXIT_OK)
        }
        Cmd::Detect { file, k, mode } => {
            let h = read_hypergraph(&file)?;
            match berge::find_berge_cycle(&h, k, mode.into(), detect_budget)? {
                SearchOutcome::Found(w) => {
                    let json = w.to_json(&h, mode.into());
                    let text = format!(
                        "witness: edges {:?}, sdr {:?}\n",
                        json.edges, json.sdr
                    );
                    emit(&cli.out, &report(cli.format, &json, text))?;
                    Ok(EXIT_WITNESS)
                }
                SearchOutcome::Absent { nodes } => {
                    emit(
                        &cli.out,
                        &format!("no Berge {k}-cycle ({nodes} nodes searched)\n"),
                    )?;
                    Ok(EXIT_OK)
                }
                SearchOutcome::BudgetExhausted { nodes } => {
                    emit(
                        &cli.out,
                        &format!("inconclusive: budget exhausted after {nodes} nodes\n"),
                    )?;
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Cmd::Alpha { file } => {
            let h = read_hypergraph(&file)?;
            let res = alpha_exact(&h, alpha_budget);
            let text = if res.exact {
                format!("alpha = {} ({} nodes)\n", res.lower, res.nodes)
            } else {
                format!(
                    "alpha in [{}, {}] (budget exhausted at {} nodes)\n",
                    res.lower, res.upper, res.nodes
                )
            };
            emit(&cli.out, &report(cli.format, &res, text))?;
            Ok(if res.exact { EXIT_OK } else { EXIT_INCONCLUSIVE })
        }
        Cmd::IndepProb { file, s, trials } => {
            let h = read_hypergraph(&file)?;
            let est = indep_prob_mc(&h, s, trials, cli.seed)?;
            let text = format!(
                "P(independent {s}-set) ~ {:.6} +- {:.6} ({} / {} trials)\n",
                est.estimate, est.half_width, est.hits, est.trials
            );
            emit(&cli.out, &report(cli.format, &est, text))?;
            Ok(EXIT_OK)
        }
        Cmd::Census { file, len, edge } => {
            let g = read_graph(&file)?;
            match edge {
                None => {
                    let c = census::census(&g, len, census_budget)?;
                    let text = format!("{} cycles of length {len}\n", c.total);
                    emit(&cli.out, &report(cli.format, &c, text))?;
                }
                Some(spec) => {
                    let parts: Vec<usize> = parse_list(&spec)?;
                    let [u, v] = parts[..] else {
                        return Err(anyhow!("--edge expects \"u,v\""));
                    };
                    let (m, union) = census::cycles_through_edge(&g, (u, v), len, census_budget)?;
                    #[derive(serde::Serialize)]
                    struct ThroughEdge {
                        edge: (usize, usize),
                        len: usize,
                        count: u64,
                        union_edges: usize,
                    }
                    let rep = ThroughEdge {
                        edge: (u.min(v), u.max(v)),
                        len,
                        count: m,
                        union_edges: union.edge_count(),
                    };
                    let text = format!(
                        "{m} cycles of length {len} through ({u},{v}); union has {} edges\n",
                        union.edge_count()
                    );
                    emit(&cli.out, &report(cli.format, &rep, text))?;
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::Peel { which } => match which {
            PeelCmd::Ratio { file, eps } => {
                let h = read_hypergraph(&file)?;
                let (_, _, rep) = peel::bounded_ratio_subgraph(&h, eps)?;
                let text = format!(
                    "{} stages: {} vertices, {} edges, max degree {} (avg {:.3})\n",
                    rep.stages, rep.out_n, rep.out_edges, rep.max_degree, rep.avg_degree
                );
                emit(&cli.out, &report(cli.format, &rep, text))?;
                Ok(EXIT_OK)
            }
            PeelCmd::Heavy { file, k } => {
                let h = read_hypergraph(&file)?;
                let trace = match peel::light_pair_peel(&h, k)? {
                    peel::PeelOutcome::TightPath(path) => {
                        let w = berge::tight_path_to_witness(&path, &h, k)?;
                        let json = w.to_json(
                            &h,
                            if w.nontrivial {
                                Mode::NontrivialOnly
                            } else {
                                Mode::TrivialAllowed
                            },
                        );
                        let text = format!("tight path {path:?} converts to a Berge witness\n");
                        emit(&cli.out, &report(cli.format, &json, text))?;
                        return Ok(EXIT_WITNESS);
                    }
                    peel::PeelOutcome::Partition(trace) => trace,
                };
                let peel::HeavyOutcome::Heavy(hs) = peel::heavy_subgraph(&h, k)? else {
                    unreachable!("partitioned input cannot surface a path");
                };
                #[derive(serde::Serialize)]
                struct HeavyReport {
                    kept_edges: usize,
                    layer_index: usize,
                    layer_size: usize,
                    conflict_max_degree: usize,
                    designated: Vec<(usize, usize)>,
                    trace: peel::LightPairTrace,
                }
                let rep = HeavyReport {
                    kept_edges: hs.hypergraph.edge_count(),
                    layer_index: hs.layer_index,
                    layer_size: hs.layer_size,
                    conflict_max_degree: hs.conflict_max_degree,
                    designated: hs.designated.clone(),
                    trace,
                };
                let text = format!(
                    "kept {} of {} edges (layer {}, conflict degree {})\n",
                    rep.kept_edges,
                    h.edge_count(),
                    rep.layer_index,
                    rep.conflict_max_degree
                );
                emit(&cli.out, &report(cli.format, &rep, text))?;
                Ok(EXIT_OK)
            }
        },
        Cmd::Pipeline { file, k, eps } => {
            let h = read_hypergraph(&file)?;
            let out = peel::pipeline(
                &h,
                k,
                &peel::PipelineConfig {
                    seed: cli.seed,
                    eps,
                    census_budget,
                    ..Default::default()
                },
            )?;
            let text = format!(
                "case {:?}: {} (independent set of size {})\n",
                out.report.case,
                out.report.outcome,
                out.independent_set.len()
            );
            emit(&cli.out, &report(cli.format, &out.report, text))?;
            Ok(match out.report.outcome.as_str() {
                "witness" => EXIT_WITNESS,
                "census-budget-exhausted" => EXIT_INCONCLUSIVE,
                _ => EXIT_OK,
            })
        }
        Cmd::Certify {
            file,
            lengths,
            mode,
        } => {
            let h = read_hypergraph(&file)?;
            let lengths: Vec<usize> = parse_list(&lengths)?;
            let family = ForbiddenFamily::new(h.r(), lengths, mode.into())?;
            let cert = certify::certify(&h, &family, detect_budget, alpha_budget)?;
            let json = format!("{}\n", serde_json::to_string_pretty(&cert)?);
            emit(&cli.out, &json)?;
            Ok(match cert.freeness.status.as_str() {
                "free" => EXIT_OK,
                "witness" => EXIT_WITNESS,
                _ => EXIT_INCONCLUSIVE,
            })
        }
        Cmd::Verify { file } => {
            let text =
                std::fs::read_to_string(&file).with_context(|| format!("reading {file:?}"))?;
            let cert: certify::Certificate = serde_json::from_str(&text)?;
            let rep = certify::verify(&cert);
            let text = if rep.ok {
                "certificate verifies\n".to_string()
            } else {
                format!("certificate REJECTED: {}\n", rep.detail.join("; "))
            };
            emit(&cli.out, &report(cli.format, &rep, text))?;
            Ok(if rep.ok { EXIT_OK } else { EXIT_WITNESS })
        }
        Cmd::Sweep { which } => match which {
            SweepCmd::T2 {
                q,
                graphs,
                k,
                r,
                m,
                seeds,
                timings,
            } => {
                let seeds: Vec<u64> = parse_list(&seeds)?;
                let mut inputs: Vec<sweep::SweepInput> = Vec::new();
                if let Some(q) = q {
                    let qs: Vec<u64> = parse_list(&q)?;
                    inputs.extend(qs.into_iter().map(sweep::SweepInput::Q));
                }
                if let Some(files) = graphs {
                    for p in parse_list::<String>(&files)? {
                        let path = PathBuf::from(&p);
                        inputs.push(sweep::SweepInput::File {
                            name: p,
                            graph: read_graph(&path)?,
                        });
                    }
                }
                if inputs.is_empty() {
                    return Err(anyhow!("sweep t2 needs --q and/or --graphs"));
                }
                let rows = sweep::sweep_star_builds(
                    &inputs,
                    &sweep::SweepConfig {
                        k,
                        r,
                        m,
                        seeds,
                        detect_budget,
                        alpha_budget,
                        maxcut_restarts: 8,
                        timings,
                    },
                );
                emit(&cli.out, &sweep::sweep_rows_to_csv(&rows))?;
                Ok(EXIT_OK)
            }
            SweepCmd::Pipeline {
                inputs,
                k,
                seeds,
                timings,
            } => {
                let paths: Vec<String> = parse_list(&inputs)?;
                let seeds: Vec<u64> = parse_list(&seeds)?;
                let mut loaded = Vec::new();
                for p in paths {
                    let path = PathBuf::from(&p);
                    loaded.push((p, read_hypergraph(&path)?));
                }
                let rows = sweep::sweep_pipeline(&loaded, k, &seeds, timings);
                emit(&cli.out, &sweep::pipeline_rows_to_csv(&rows))?;
                Ok(EXIT_OK)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
