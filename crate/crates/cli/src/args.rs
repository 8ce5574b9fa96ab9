use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degdiff_core::robustness::PercolationOrder;
use degdiff_core::{Measure, Model};
use serde::Serialize;

use crate::UsageError;

#[derive(Debug, Parser, Serialize)]
#[command(name = "degdiff", version, about = "Degree difference and related edge measures")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Base seed for generators, tie-breaking shuffles and rewiring.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Ensemble size (default 50) or number of graphs to generate (default 1).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory. Without it the main table goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Sample graphs from a random model and write them as edge lists.
    Generate(ModelArgs),
    /// Empirical DD (or diDD) distribution of an edge list.
    DdDist {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: DdOpts,
    },
    /// Analytic DD distribution of an ER or BA ensemble.
    AnalyticDd(AnalyticArgs),
    /// Per-edge table of DD, Forman-Ricci, Ollivier-Ricci and betweenness.
    Measures {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: MeasureOpts,
    },
    /// Pearson and Spearman correlations between edge measures.
    Correlate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: MeasureOpts,
    },
    /// Global assortativity, its decomposition, and local node assortativity.
    Assort {
        #[command(flatten)]
        input: InputArgs,
    },
    /// LCC size while removing edges in measure order.
    Percolate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: PercolateOpts,
    },
    /// Percentiles of minimum-edge-cut edges under each measure.
    MecPercentile {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: MeasureOpts,
    },
    /// Degree-preserving rewiring.
    Rewire {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        opts: RewireOpts,
    },
    /// Run a task over a seeded model ensemble and aggregate mean and std.
    Ensemble {
        #[command(flatten)]
        model: ModelArgs,
        #[command(subcommand)]
        task: EnsembleTask,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleTask {
    DdDist,
    Measures(MeasureOpts),
    Correlate(MeasureOpts),
    Assort,
    Percolate(PercolateOpts),
    MecPercentile(MeasureOpts),
    Rewire(RewireOpts),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// Whitespace-separated edge list; `#` and `%` lines are comments.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Treat each line as a directed edge.
    #[arg(long)]
    pub directed: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DdOpts {
    /// Directed degree difference (requires --directed).
    #[arg(long)]
    pub didd: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeasureOpts {
    /// Comma-separated measures (dd, didd, forman_ricci, ollivier_ricci,
    /// edge_betweenness). Defaults to the four undirected ones.
    #[arg(long, value_delimiter = ',')]
    pub measures: Vec<Measure>,
    /// Ollivier-Ricci walk idleness.
    #[arg(long, default_value_t = 0.0)]
    pub idleness: f64,
}

impl MeasureOpts {
    pub fn selected(&self) -> Vec<Measure> {
        if self.measures.is_empty() {
            Measure::UNDIRECTED.to_vec()
        } else {
            self.measures.clone()
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PercolateOpts {
    /// Comma-separated orderings (dd_asc, dd_desc, rf_asc, ro_asc,
    /// ebw_desc, random). Defaults to all.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<PercolationOrder>,
    /// Spacing of the removed-fraction checkpoints.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Re-rank remaining edges after every removal.
    #[arg(long)]
    pub recompute: bool,
}

impl PercolateOpts {
    pub fn selected(&self) -> Vec<PercolationOrder> {
        if self.orders.is_empty() {
            PercolationOrder::ALL.to_vec()
        } else {
            self.orders.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RewireMode {
    /// Greedy swaps that only ever raise assortativity.
    Assortative,
    /// Random swaps keeping assortativity within --tolerance.
    Constrained,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RewireOpts {
    #[arg(long, value_enum, default_value_t = RewireMode::Assortative)]
    pub mode: RewireMode,
    /// Attempted steps (assortative) or target accepted swaps (constrained).
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Number of logged stages for the assortative mode.
    #[arg(long, default_value_t = 8)]
    pub stages: usize,
    #[arg(long, default_value_t = 0.025)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Er,
    Ws,
    Ba,
    Rg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// ER edge probability.
    #[arg(long, conflicts_with = "c")]
    pub p: Option<f64>,
    /// ER mean degree, used as p = c / (n - 1).
    #[arg(long)]
    pub c: Option<f64>,
    /// WS neighbors per vertex (even).
    #[arg(long)]
    pub k: Option<usize>,
    /// WS rewiring probability, or BA edges per new vertex.
    #[arg(long)]
    pub beta: Option<f64>,
    /// RG connection radius.
    #[arg(long, visible_alias = "epsilon")]
    pub radius: Option<f64>,
}

fn required<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, UsageError> {
    value.ok_or_else(|| UsageError(format!("--{flag} is required for --family {family}")))
}

impl ModelArgs {
    pub fn model(&self) -> Result<Model, UsageError> {
        let n = self.n;
        Ok(match self.family {
            Family::Er => {
                let p = match (self.p, self.c) {
                    (Some(p), _) => p,
                    (None, Some(c)) if n > 1 => c / (n - 1) as f64,
                    (None, Some(_)) => return Err(UsageError("--c needs n >= 2".into())),
                    (None, None) => return Err(UsageError("--family er needs --p or --c".into())),
                };
                Model::Er { n, p }
            }
            Family::Ws => Model::Ws {
                n,
                k: required(self.k, "k", "ws")?,
                beta: required(self.beta, "beta", "ws")?,
            },
            Family::Ba => {
                let beta = required(self.beta, "beta", "ba")?;
                if beta.fract() != 0.0 || beta < 1.0 {
                    return Err(UsageError(format!(
                        "--beta for --family ba must be a positive integer, got {beta}"
                    )));
                }
                Model::Ba { n, beta: beta as usize }
            }
            Family::Rg => Model::Rg {
                n,
                radius: required(self.radius, "radius", "rg")?,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalyticModel {
    /// Exact finite-n ER distribution.
    Er,
    /// Large-n Poisson limit of ER.
    ErPoisson,
    /// BA joint-degree distribution folded over |k - l|.
    Ba,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalyticArgs {
    #[arg(long, value_enum)]
    pub model: AnalyticModel,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, conflicts_with = "p")]
    pub c: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub beta: Option<usize>,
    /// Largest degree kept in the BA sums.
    #[arg(long, default_value_t = 2000)]
    pub k_max: usize,
    /// Largest d reported (default 18 for ER, the full support for BA).
    #[arg(long)]
    pub d_max: Option<usize>,
}
