use anyhow::{Context, Result};
use degdiff_core::analytic::{ba_dd_pmf, er_dd_exact_pmf, er_dd_poisson_pmf};
use degdiff_core::assortativity::{decomposition_report, global_assortativity, lna_vector};
use degdiff_core::io::{load_edge_list, write_edge_list, LoadedGraph};
use degdiff_core::measures::{
    dd_distribution, didd_distribution, measure_correlation, measure_tables,
};
use degdiff_core::rewiring::{assortative_rewire, constrained_randomize};
use degdiff_core::robustness::{
    mec_percentiles, percolate, PercolationOptions, PercolationOrder, PercolationTrace,
    TraceSummary,
};
use degdiff_core::stats::mean_std;
use degdiff_core::{
    CorrelationKind, EdgeMeasureTable, EnsembleSpec, Graph, Measure, MeasureOptions, PmfSummary,
};
use serde_json::json;

use crate::args::{
    AnalyticArgs, AnalyticModel, Cli, Command, DdOpts, EnsembleTask, GlobalArgs, InputArgs,
    MeasureOpts, ModelArgs, PercolateOpts, RewireMode, RewireOpts,
};
use crate::output::{Cell, Report, Table};
use crate::UsageError;

const DEFAULT_ENSEMBLE_SIZE: usize = 50;
const CORRELATION_KINDS: [CorrelationKind; 2] = [CorrelationKind::Pearson, CorrelationKind::Spearman];

pub fn run(cli: &Cli) -> Result<Report> {
    let global = &cli.global;
    match &cli.command {
        Command::Generate(model) => generate(model, global),
        Command::DdDist { input, opts } => {
            let loaded = load(input)?;
            Ok(with_input(dd_dist(&loaded.graph, opts)?, &loaded))
        }
        Command::AnalyticDd(args) => analytic(args),
        Command::Measures { input, opts } => {
            let loaded = load(input)?;
            Ok(with_input(edge_measures(&loaded, opts)?, &loaded))
        }
        Command::Correlate { input, opts } => {
            let loaded = load(input)?;
            let tables = correlation_table(&measure_tables_for(&loaded.graph, opts)?)?;
            Ok(with_input(Report::new("measure_correlations", vec![tables]), &loaded))
        }
        Command::Assort { input } => {
            let loaded = load(input)?;
            Ok(with_input(assort(&loaded)?, &loaded))
        }
        Command::Percolate { input, opts } => {
            let loaded = load(input)?;
            let runs = percolation_runs(&loaded.graph, opts, global.seed)?;
            let table = percolation_table(&runs.into_iter().map(|r| vec![r]).collect::<Vec<_>>())?;
            Ok(with_input(Report::new("percolation_traces", vec![table]), &loaded))
        }
        Command::MecPercentile { input, opts } => {
            let loaded = load(input)?;
            let pools = mec_pools(&loaded.graph, opts)?;
            Ok(with_input(mec_report(vec![pools]), &loaded))
        }
        Command::Rewire { input, opts } => {
            let loaded = load(input)?;
            let (stages, graph) = rewire_stages(&loaded.graph, opts, global.seed)?;
            let mut table = Table::new("rewiring", ["stage", "steps", "accepted", "ga"]);
            for s in &stages {
                table.push(vec![s.stage.into(), s.steps.into(), s.accepted.into(), s.ga.into()]);
            }
            let report = Report::new("rewiring_trajectory", vec![table])
                .file("rewired.txt", edge_list_text(&graph)?);
            Ok(with_input(report, &loaded))
        }
        Command::Ensemble { model, task } => ensemble(model, task, global),
    }
}

fn load(input: &InputArgs) -> Result<LoadedGraph> {
    let loaded = load_edge_list(&input.input, input.directed)
        .with_context(|| format!("reading {}", input.input.display()))?;
    let d = loaded.dropped;
    if d.self_loops + d.duplicates > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges from {}",
            d.self_loops,
            d.duplicates,
            input.input.display()
        );
    }
    Ok(loaded)
}

/// Records input statistics in the manifest and appends the label map.
fn with_input(mut report: Report, loaded: &LoadedGraph) -> Report {
    let mut labels = Table::new("labels", ["id", "label"]);
    for (i, l) in loaded.labels.iter().enumerate() {
        labels.push(vec![i.into(), l.as_str().into()]);
    }
    report.tables.push(labels);
    report.note(
        "input",
        json!({
            "vertices": loaded.graph.vertex_count(),
            "edges": loaded.graph.edge_count(),
            "directed": loaded.graph.is_directed(),
            "dropped_self_loops": loaded.dropped.self_loops,
            "dropped_duplicates": loaded.dropped.duplicates,
        }),
    )
}

fn edge_list_text(g: &Graph) -> Result<String> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}

/// Decorrelates per-member seeds for tie-breaking and rewiring.
fn member_seed(base: u64, index: usize) -> u64 {
    base ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn generate(model: &ModelArgs, global: &GlobalArgs) -> Result<Report> {
    let samples = global.samples.unwrap_or(1);
    if samples > 1 && global.out.is_none() {
        return Err(UsageError("generating several graphs needs --out".into()).into());
    }
    let spec = EnsembleSpec::new(model.model()?, samples, global.seed)?;
    let graphs = spec.map(|_, g| Ok(edge_list_text(&g).expect("in-memory write")))?;
    let mut report = Report::new("graph", Vec::new()).note("model", spec.model);
    for (i, text) in graphs.into_iter().enumerate() {
        let name = if samples == 1 {
            "graph.txt".to_owned()
        } else {
            format!("graph_{i:04}.txt")
        };
        report = report.file(name, text);
    }
    Ok(report)
}

fn pmf_table(pmf: &degdiff_core::Pmf) -> Table {
    let mut t = Table::new("dd_distribution", ["d", "probability"]);
    for (d, p) in pmf.iter() {
        t.push(vec![d.into(), p.into()]);
    }
    t
}

fn dd_dist(g: &Graph, opts: &DdOpts) -> Result<Report> {
    let pmf = if opts.didd {
        didd_distribution(g)?
    } else {
        dd_distribution(g)?
    };
    let target = if opts.didd { "didd_distribution" } else { "dd_distribution" };
    Ok(Report::new(target, vec![pmf_table(&pmf)]))
}

fn analytic(args: &AnalyticArgs) -> Result<Report> {
    let need_n = || args.n.ok_or_else(|| UsageError("--n is required".into()));
    let (pmf, default_d_max) = match args.model {
        AnalyticModel::Er => {
            let n = need_n()?;
            let p = match (args.p, args.c) {
                (Some(p), _) => p,
                (None, Some(c)) if n > 1 => c / (n - 1) as f64,
                _ => return Err(UsageError("--model er needs --p or --c (and n >= 2)".into()).into()),
            };
            (er_dd_exact_pmf(n, p)?, 18)
        }
        AnalyticModel::ErPoisson => {
            let c = match (args.c, args.p, args.n) {
                (Some(c), _, _) => c,
                (None, Some(p), Some(n)) if n > 0 => p * (n - 1) as f64,
                _ => return Err(UsageError("--model er-poisson needs --c, or --p with --n".into()).into()),
            };
            (er_dd_poisson_pmf(c)?, 18)
        }
        AnalyticModel::Ba => {
            let beta = args
                .beta
                .ok_or_else(|| UsageError("--model ba needs --beta".into()))?;
            let pmf = ba_dd_pmf(beta, args.k_max)?;
            let full = pmf.probabilities.len().saturating_sub(1);
            (pmf, full)
        }
    };
    let d_max = args.d_max.unwrap_or(default_d_max);
    let mut table = Table::new("analytic_dd", ["d", "probability"]);
    for d in 0..=d_max {
        table.push(vec![d.into(), pmf.prob(d).into()]);
    }
    Ok(Report::new("analytic_dd_distribution", vec![table])
        .note("evaluation", pmf.mode)
        .note("truncation_mass", pmf.truncation_mass))
}

fn selected_measures(g: &Graph, opts: &MeasureOpts) -> Vec<Measure> {
    if opts.measures.is_empty() && g.is_directed() {
        vec![Measure::Didd]
    } else {
        opts.selected()
    }
}

fn measure_tables_for(g: &Graph, opts: &MeasureOpts) -> Result<Vec<EdgeMeasureTable>> {
    let measures = selected_measures(g, opts);
    Ok(measure_tables(g, &measures, MeasureOptions { idleness: opts.idleness })?)
}

fn edge_measures(loaded: &LoadedGraph, opts: &MeasureOpts) -> Result<Report> {
    let g = &loaded.graph;
    let tables = measure_tables_for(g, opts)?;
    let columns = ["u", "v"]
        .into_iter()
        .map(str::to_owned)
        .chain(tables.iter().map(|t| t.measure.name().to_owned()));
    let mut out = Table::new("edge_measures", columns);
    for (i, e) in g.edges().iter().enumerate() {
        let mut row: Vec<Cell> = vec![
            loaded.labels[e.0].as_str().into(),
            loaded.labels[e.1].as_str().into(),
        ];
        row.extend(tables.iter().map(|t| Cell::Float(t.values[i])));
        out.push(row);
    }
    Ok(Report::new("edge_measures", vec![out]))
}

/// `(measure_a, measure_b, kind)` for every unordered pair and kind.
fn correlation_keys(tables: &[EdgeMeasureTable]) -> Vec<(usize, usize, CorrelationKind)> {
    let mut keys = Vec::new();
    for a in 0..tables.len() {
        for b in a + 1..tables.len() {
            for kind in CORRELATION_KINDS {
                keys.push((a, b, kind));
            }
        }
    }
    keys
}

fn correlations(tables: &[EdgeMeasureTable]) -> Result<Vec<Option<f64>>> {
    correlation_keys(tables)
        .into_iter()
        .map(|(a, b, kind)| Ok(measure_correlation(&tables[a], &tables[b], kind)?))
        .collect()
}

fn correlation_table(tables: &[EdgeMeasureTable]) -> Result<Table> {
    let values = correlations(tables)?;
    let mut out = Table::new("correlations", ["measure_a", "measure_b", "kind", "value"]);
    for ((a, b, kind), v) in correlation_keys(tables).into_iter().zip(values) {
        out.push(vec![
            tables[a].measure.name().into(),
            tables[b].measure.name().into(),
            kind.name().into(),
            v.into(),
        ]);
    }
    Ok(out)
}

const ASSORT_QUANTITIES: [&str; 6] = [
    "ga",
    "excess_variance",
    "covariance",
    "half_mean_dd",
    "residual",
    "lna_sum",
];

fn assort_values(g: &Graph) -> Result<[Option<f64>; 6]> {
    Ok(match decomposition_report(g)? {
        Some(r) => [
            Some(r.assortativity),
            Some(r.excess_variance),
            Some(r.covariance),
            Some(r.half_mean_dd),
            Some(r.residual),
            Some(r.lna_sum),
        ],
        None => {
            let half = 0.5 * dd_distribution(g)?.mean();
            [None, Some(0.0), None, Some(half), None, None]
        }
    })
}

fn assort(loaded: &LoadedGraph) -> Result<Report> {
    let g = &loaded.graph;
    let mut summary = Table::new("assortativity", ["quantity", "value"]);
    for (name, v) in ASSORT_QUANTITIES.iter().zip(assort_values(g)?) {
        summary.push(vec![(*name).into(), v.into()]);
    }
    let mut lna = Table::new("lna", ["vertex", "label", "lna"]);
    let values = lna_vector(g)?;
    for (v, label) in loaded.labels.iter().enumerate() {
        let x = values.as_ref().map(|xs| xs[v]);
        lna.push(vec![v.into(), label.as_str().into(), x.into()]);
    }
    Ok(Report::new("assortativity", vec![summary, lna]))
}

fn percolation_options(opts: &PercolateOpts, seed: u64) -> Result<PercolationOptions> {
    if !(opts.step > 0.0 && opts.step <= 1.0) {
        return Err(UsageError(format!("--step must lie in (0, 1], got {}", opts.step)).into());
    }
    let mut p = PercolationOptions::evenly_spaced(opts.step, seed);
    p.recompute = opts.recompute;
    Ok(p)
}

fn percolation_runs(g: &Graph, opts: &PercolateOpts, seed: u64) -> Result<Vec<PercolationTrace>> {
    let popts = percolation_options(opts, seed)?;
    opts.selected()
        .into_iter()
        .map(|o| Ok(percolate(g, o, &popts)?))
        .collect()
}

/// `runs[order][sample]`.
fn percolation_table(runs: &[Vec<PercolationTrace>]) -> Result<Table> {
    let mut out = Table::new("percolation", ["order", "fraction", "mean_lcc", "std_lcc"]);
    for per_order in runs {
        let s = TraceSummary::from_runs(per_order)?;
        for i in 0..s.removed_fraction.len() {
            out.push(vec![
                s.order.name().into(),
                s.removed_fraction[i].into(),
                s.mean[i].into(),
                s.std[i].into(),
            ]);
        }
    }
    Ok(out)
}

fn mec_pools(g: &Graph, opts: &MeasureOpts) -> Result<Vec<(Measure, Vec<f64>)>> {
    let measure_opts = MeasureOptions { idleness: opts.idleness };
    opts.selected()
        .into_iter()
        .map(|m| {
            let cut = mec_percentiles(g, m, measure_opts)?;
            Ok((m, cut.into_iter().map(|(_, p)| p).collect()))
        })
        .collect()
}

/// `pools[sample][measure]`, pooled per measure across samples.
fn mec_report(pools: Vec<Vec<(Measure, Vec<f64>)>>) -> Report {
    let mut out = Table::new("mec_percentiles", ["measure", "percentile"]);
    let measures: Vec<Measure> = pools.first().map(|p| p.iter().map(|x| x.0).collect()).unwrap_or_default();
    let mut medians = serde_json::Map::new();
    for (k, m) in measures.iter().enumerate() {
        let mut pool = degdiff_core::robustness::CutPercentilePool::new(*m);
        for sample in &pools {
            pool.extend(sample[k].1.iter().copied());
        }
        for &p in &pool.percentiles {
            out.push(vec![m.name().into(), p.into()]);
        }
        medians.insert(m.name().to_owned(), json!(pool.median()));
    }
    Report::new("mec_percentiles", vec![out]).note("median_percentile", medians)
}

struct Stage {
    stage: usize,
    steps: usize,
    accepted: usize,
    ga: f64,
}

fn rewire_stages(g: &Graph, opts: &RewireOpts, seed: u64) -> Result<(Vec<Stage>, Graph)> {
    if opts.steps == 0 {
        return Err(UsageError("--steps must be positive".into()).into());
    }
    let ga0 = global_assortativity(g)?.ok_or(degdiff_core::Error::UndefinedAssortativity)?;
    let mut stages = vec![Stage {
        stage: 0,
        steps: 0,
        accepted: 0,
        ga: ga0,
    }];
    match opts.mode {
        RewireMode::Constrained => {
            let out = constrained_randomize(g, opts.steps, opts.tolerance, seed)?;
            let ga = global_assortativity(&out.graph)?.expect("degrees unchanged");
            stages.push(Stage {
                stage: 1,
                steps: out.attempted_steps,
                accepted: out.accepted_steps,
                ga,
            });
            Ok((stages, out.graph))
        }
        RewireMode::Assortative => {
            let count = opts.stages.clamp(1, opts.steps);
            let mut current = g.clone();
            let (mut steps, mut accepted) = (0, 0);
            for s in 0..count {
                let chunk = opts.steps / count + usize::from(s < opts.steps % count);
                let out = assortative_rewire(&current, chunk, member_seed(seed, s))?;
                steps += out.attempted_steps;
                accepted += out.accepted_steps;
                current = out.graph;
                let ga = global_assortativity(&current)?.expect("degrees unchanged");
                stages.push(Stage {
                    stage: s + 1,
                    steps,
                    accepted,
                    ga,
                });
            }
            Ok((stages, current))
        }
    }
}

fn mean_std_defined(xs: impl Iterator<Item = Option<f64>>) -> (Cell, Cell, usize) {
    let defined: Vec<f64> = xs.flatten().collect();
    if defined.is_empty() {
        return (Cell::Undefined, Cell::Undefined, 0);
    }
    let (m, s) = mean_std(&defined);
    (m.into(), s.into(), defined.len())
}

fn ensemble(model: &ModelArgs, task: &EnsembleTask, global: &GlobalArgs) -> Result<Report> {
    let samples = global.samples.unwrap_or(DEFAULT_ENSEMBLE_SIZE);
    let spec = EnsembleSpec::new(model.model()?, samples, global.seed)?;
    let report = match task {
        EnsembleTask::DdDist => {
            let pmfs = spec.map(|_, g| dd_distribution(&g))?;
            let summary = PmfSummary::from_samples(&pmfs);
            let mut t = Table::new("dd_distribution", ["d", "probability", "std"]);
            for (i, &d) in summary.support.iter().enumerate() {
                t.push(vec![d.into(), summary.mean[i].into(), summary.std[i].into()]);
            }
            Report::new("dd_distribution", vec![t])
        }
        EnsembleTask::Measures(opts) => {
            let per_graph = spec.map(|_, g| {
                let tables = measure_tables(&g, &opts.selected(), MeasureOptions { idleness: opts.idleness })?;
                Ok(tables
                    .iter()
                    .map(|t| mean_std(&t.values).0)
                    .collect::<Vec<f64>>())
            })?;
            let mut t = Table::new("measure_summary", ["measure", "mean", "std"]);
            for (k, m) in opts.selected().iter().enumerate() {
                let (mean, std, _) = mean_std_defined(per_graph.iter().map(|r| Some(r[k])));
                t.push(vec![m.name().into(), mean, std]);
            }
            Report::new("edge_measure_summary", vec![t])
        }
        EnsembleTask::Correlate(opts) => {
            let per_graph = spec.map(|_, g| {
                let tables = measure_tables_for(&g, opts).map_err(to_core)?;
                correlations(&tables).map_err(to_core)
            })?;
            let names: Vec<&str> = opts.selected().iter().map(Measure::name).collect();
            let keys: Vec<(usize, usize, CorrelationKind)> = {
                let mut keys = Vec::new();
                for a in 0..names.len() {
                    for b in a + 1..names.len() {
                        for kind in CORRELATION_KINDS {
                            keys.push((a, b, kind));
                        }
                    }
                }
                keys
            };
            let mut t = Table::new(
                "correlations",
                ["measure_a", "measure_b", "kind", "value", "std", "samples_defined"],
            );
            for (k, (a, b, kind)) in keys.into_iter().enumerate() {
                let (mean, std, n) = mean_std_defined(per_graph.iter().map(|r| r[k]));
                t.push(vec![names[a].into(), names[b].into(), kind.name().into(), mean, std, n.into()]);
            }
            Report::new("measure_correlations", vec![t])
        }
        EnsembleTask::Assort => {
            let per_graph = spec.map(|_, g| assort_values(&g).map_err(to_core))?;
            let mut t = Table::new("assortativity", ["quantity", "value", "std", "samples_defined"]);
            for (k, name) in ASSORT_QUANTITIES.iter().enumerate() {
                let (mean, std, n) = mean_std_defined(per_graph.iter().map(|r| r[k]));
                t.push(vec![(*name).into(), mean, std, n.into()]);
            }
            Report::new("assortativity", vec![t])
        }
        EnsembleTask::Percolate(opts) => {
            let orders: Vec<PercolationOrder> = opts.selected();
            percolation_options(opts, global.seed)?;
            let per_graph = spec.map(|i, g| {
                percolation_runs(&g, opts, member_seed(global.seed, i)).map_err(to_core)
            })?;
            let by_order: Vec<Vec<PercolationTrace>> = (0..orders.len())
                .map(|k| per_graph.iter().map(|runs| runs[k].clone()).collect())
                .collect();
            Report::new("percolation_traces", vec![percolation_table(&by_order)?])
        }
        EnsembleTask::MecPercentile(opts) => {
            let pools = spec.map(|_, g| mec_pools(&g, opts).map_err(to_core))?;
            mec_report(pools)
        }
        EnsembleTask::Rewire(opts) => {
            if opts.steps == 0 {
                return Err(UsageError("--steps must be positive".into()).into());
            }
            let per_graph = spec.map(|i, g| {
                rewire_stages(&g, opts, member_seed(global.seed, i))
                    .map(|(stages, _)| stages)
                    .map_err(to_core)
            })?;
            let mut t = Table::new("rewiring", ["stage", "steps", "mean_ga", "std_ga"]);
            for (k, first) in per_graph[0].iter().enumerate() {
                let (mean, std, _) = mean_std_defined(per_graph.iter().map(|r| Some(r[k].ga)));
                t.push(vec![first.stage.into(), first.steps.into(), mean, std]);
            }
            Report::new("rewiring_trajectory", vec![t])
        }
    };
    Ok(report.note("ensemble", spec))
}

/// Carries a CLI-level error through the library's ensemble runner.
fn to_core(e: anyhow::Error) -> degdiff_core::Error {
    match e.downcast::<degdiff_core::Error>() {
        Ok(core) => core,
        Err(other) => degdiff_core::Error::InvalidParameter(other.to_string()),
    }
}
