//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured numbers. Exits nonzero if any criterion fails.
//!
//! Run a subset with `cargo test --test acceptance -- <substring>`.

mod common;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use degdiff_core::analytic::{
    ba_dd_pmf, ba_endpoint_tail, er_dd_exact, er_dd_exact_pmf, er_dd_poisson_pmf,
};
use degdiff_core::assortativity::{
    assortativity_from_joint, assortativity_summation, global_assortativity, joint_degree_pmf,
    lna_vector,
};
use degdiff_core::generators::sample_rng;
use degdiff_core::measures::{dd_distribution, measure_correlation, measure_table, measure_tables};
use degdiff_core::rewiring::{assortative_rewire, constrained_randomize};
use degdiff_core::robustness::{
    min_edge_cut, percolate, PercolationOptions, PercolationOrder, TraceSummary,
};
use degdiff_core::stats::mean_std;
use degdiff_core::{
    CorrelationKind, EnsembleSpec, Graph, Measure, MeasureOptions, Model, Pmf, PmfSummary,
};
use rand::seq::index::sample;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    ("er_exact_concordance", er_exact_concordance),
    ("er_poisson_limit", er_poisson_limit),
    ("ba_concordance", ba_concordance),
    ("normalization", normalization),
    ("assortativity_identities", assortativity_identities),
    ("same_degrees_and_ga_different_dd", same_degrees_and_ga_different_dd),
    ("oracle_suites", oracle_suites),
    ("rg_and_er_assortativity", rg_and_er_assortativity),
    ("percolation_dominance", percolation_dominance),
    ("rewiring", rewiring),
    ("correlation_signs", correlation_signs),
];

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected: Vec<&Criterion> = CRITERIA
        .iter()
        .filter(|(name, _)| filters.is_empty() || filters.iter().any(|f| name.contains(f.as_str())))
        .collect();

    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for &(name, run) in selected {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "{tag} {name} [{:.1}s]: {}",
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
        if !outcome.pass {
            failed.push(name);
        }
    }
    let _ = panic::take_hook();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
    } else {
        println!("acceptance: {} failed: {}", failed.len(), failed.join(", "));
        std::process::exit(1);
    }
}

fn ensemble(model: Model, samples: usize, seed: u64) -> EnsembleSpec {
    EnsembleSpec::new(model, samples, seed).unwrap()
}

/// Mean of per-sample DD distributions.
fn mean_dd_pmf(spec: &EnsembleSpec) -> Pmf {
    let pmfs = spec.map(|_, g| dd_distribution(&g)).unwrap();
    PmfSummary::from_samples(&pmfs).mean_pmf()
}

fn er_exact_concordance() -> Outcome {
    let (n, p) = (200, 6.0 / 199.0);
    let empirical = mean_dd_pmf(&ensemble(Model::Er { n, p }, 2000, 1));
    let exact = er_dd_exact_pmf(n, p).unwrap().to_pmf();
    let tv = empirical.total_variation_where(&exact, |d| d <= 18);
    Outcome::new(tv <= 0.02, format!("TV(d <= 18) = {tv:.5} (limit 0.02)"))
}

fn er_poisson_limit() -> Outcome {
    let n = 1000;
    let c = 6.0;
    let p = c / (n - 1) as f64;
    let empirical = mean_dd_pmf(&ensemble(Model::Er { n, p }, 500, 2));
    let poisson = er_dd_poisson_pmf(c).unwrap();
    let tv = empirical.total_variation_where(&poisson.to_pmf(), |d| d <= 18);

    let (mut worst, mut worst_d) = (0.0f64, 0);
    let mut over = Vec::new();
    for d in 0..=12 {
        let exact = er_dd_exact(n, p, d).unwrap();
        let rel = (poisson.prob(d) - exact).abs() / exact;
        if rel > worst {
            (worst, worst_d) = (rel, d);
        }
        if rel > 0.02 {
            over.push(d);
        }
    }
    Outcome::new(
        tv <= 0.02 && over.is_empty(),
        format!(
            "TV(d <= 18) = {tv:.5} (limit 0.02); max relative error vs exact for d <= 12 = {:.2}% at d = {worst_d} (limit 2%), d over limit: {over:?}",
            100.0 * worst
        ),
    )
}

fn ba_concordance() -> Outcome {
    let (n, beta, k_max) = (10_000, 5, 2000);
    let empirical = mean_dd_pmf(&ensemble(Model::Ba { n, beta }, 20, 3));
    let analytic = ba_dd_pmf(beta, k_max).unwrap();
    let keep: HashSet<i64> = empirical.iter().filter(|&(_, p)| p >= 1e-4).map(|(d, _)| d).collect();
    let tv = empirical.total_variation_where(&analytic.to_pmf(), |d| keep.contains(&d));
    Outcome::new(
        tv <= 0.05,
        format!(
            "TV over {} support points = {tv:.5} (limit 0.05), analytic truncation mass {:.4}",
            keep.len(),
            analytic.truncation_mass
        ),
    )
}

fn normalization() -> Outcome {
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (n, c) in [(50, 3.0), (200, 6.0), (1000, 6.0), (5000, 10.0)] {
        let pmf = er_dd_exact_pmf(n, c / (n - 1) as f64).unwrap();
        worst = worst.max((pmf.total() + pmf.truncation_mass - 1.0).abs());
        worst = worst.max(pmf.truncation_mass);
    }
    for c in [0.5, 6.0, 20.0] {
        let pmf = er_dd_poisson_pmf(c).unwrap();
        worst = worst.max((pmf.total() + pmf.truncation_mass - 1.0).abs());
        worst = worst.max(pmf.truncation_mass);
    }
    notes.push(format!("ER exact/Poisson max |sum - 1| = {worst:.2e}"));
    // BA: the reported truncation mass must match the analytic bound
    // T <= mass <= 2T, T being the endpoint tail beyond k_max.
    let mut ba_ok = true;
    for beta in [1, 3, 5] {
        let k_max = 2000;
        let pmf = ba_dd_pmf(beta, k_max).unwrap();
        let t = ba_endpoint_tail(beta, k_max);
        let mass = pmf.truncation_mass;
        let sum_ok = (pmf.total() + mass - 1.0).abs() <= 1e-6;
        let bound_ok = mass >= t - 1e-6 && mass <= 2.0 * t + 1e-6;
        ba_ok &= sum_ok && bound_ok;
        notes.push(format!("BA beta={beta}: truncation {mass:.5} in [{t:.5}, {:.5}]", 2.0 * t));
    }
    Outcome::new(worst <= 1e-6 && ba_ok, notes.join("; "))
}

fn mixed_small_graph(i: u64) -> Graph {
    let mut rng = sample_rng(404, i);
    let n = rng.random_range(8..=50);
    let model = match i % 4 {
        0 => Model::Er { n, p: rng.random_range(0.05..0.4) },
        1 => {
            let k = 2 * rng.random_range(1..=3usize.min((n - 1) / 2));
            Model::Ws { n, k, beta: rng.random_range(0.0..0.5) }
        }
        2 => Model::Ba { n, beta: rng.random_range(1..=4) },
        _ => Model::Rg { n, radius: rng.random_range(0.15..0.45) },
    };
    model.generate(&mut rng).unwrap()
}

fn assortativity_identities() -> Outcome {
    let (mut route_err, mut lna_err) = (0.0f64, 0.0f64);
    let (mut defined, mut undefined, mut mismatched) = (0, 0, 0);
    let mut graphs = 0;
    let mut i = 0;
    while graphs < 200 {
        let g = mixed_small_graph(i);
        i += 1;
        if g.edge_count() == 0 {
            continue;
        }
        graphs += 1;
        let stats = joint_degree_pmf(&g).unwrap();
        let direct = global_assortativity(&g).unwrap();
        let matrix = assortativity_from_joint(&stats);
        let summed = assortativity_summation(&stats);
        let lna = lna_vector(&g).unwrap();
        match (direct, matrix, summed, lna) {
            (Some(a), Some(b), Some(c), Some(l)) => {
                defined += 1;
                route_err = route_err.max((a - b).abs()).max((a - c).abs());
                lna_err = lna_err.max((l.iter().sum::<f64>() - a).abs());
            }
            (None, None, None, None) => undefined += 1,
            _ => mismatched += 1,
        }
    }
    Outcome::new(
        route_err <= 1e-9 && lna_err <= 1e-6 && mismatched == 0,
        format!(
            "{defined} defined, {undefined} undefined, {mismatched} inconsistent; max route gap {route_err:.2e} (limit 1e-9), max |sum LNA - GA| {lna_err:.2e} (limit 1e-6)"
        ),
    )
}

fn same_degrees_and_ga_different_dd() -> Outcome {
    const N: usize = 7;
    const M: usize = 9;
    const TARGET: f64 = -0.358;
    let pairs: Vec<(usize, usize)> = (0..N)
        .flat_map(|a| (a + 1..N).map(move |b| (a, b)))
        .collect();
    let mut rng = sample_rng(2, 0);

    // Degree multiset plus the exact integer cross term fixes GA.
    type Key = (Vec<usize>, i64);
    type Realizations = BTreeMap<Vec<(usize, usize)>, Vec<(i64, u64)>>;
    let mut groups: HashMap<Key, Realizations> = HashMap::new();
    for _ in 0..50_000 {
        let mut edges: Vec<(usize, usize)> =
            sample(&mut rng, pairs.len(), M).into_iter().map(|i| pairs[i]).collect();
        edges.sort_unstable();
        let mut deg = [0usize; N];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let cross: i64 = edges.iter().map(|&(a, b)| (deg[a] as i64 - 1) * (deg[b] as i64 - 1)).sum();
        let mut sorted = deg.to_vec();
        sorted.sort_unstable();
        let mut dd: BTreeMap<i64, u64> = BTreeMap::new();
        for &(a, b) in &edges {
            *dd.entry(deg[a].abs_diff(deg[b]) as i64).or_default() += 1;
        }
        groups
            .entry((sorted, cross))
            .or_default()
            .insert(edges, dd.into_iter().collect());
    }

    let mut best: Option<(f64, [Graph; 3])> = None;
    for members in groups.values() {
        let distinct: HashSet<&Vec<(i64, u64)>> = members.values().collect();
        if members.len() < 3 || distinct.len() < 2 {
            continue;
        }
        // First member, one with a different DD PMF, then any third.
        let mut it = members.iter();
        let (e0, d0) = it.next().unwrap();
        let (e1, _) = members.iter().find(|(_, d)| *d != d0).unwrap();
        let (e2, _) = members.iter().find(|(e, _)| *e != e0 && *e != e1).unwrap();
        let graphs = [e0, e1, e2].map(|e| Graph::from_edges(N, false, e.iter().copied()).unwrap());
        let Some(ga) = global_assortativity(&graphs[0]).unwrap() else {
            continue;
        };
        if best.as_ref().is_none_or(|(b, _)| (ga - TARGET).abs() < (b - TARGET).abs()) {
            best = Some((ga, graphs));
        }
    }
    let Some((ga, graphs)) = best else {
        return Outcome::new(false, "no qualifying triple found");
    };

    // Re-verify the chosen triple with library calls only.
    let degs: Vec<Vec<usize>> = graphs.iter().map(|g| g.degree_vector().sorted()).collect();
    let gas: Vec<f64> = graphs.iter().map(|g| global_assortativity(g).unwrap().unwrap()).collect();
    let pmfs: Vec<Pmf> = graphs.iter().map(|g| dd_distribution(g).unwrap()).collect();
    let same_degrees = degs.windows(2).all(|w| w[0] == w[1]);
    let max_gap = gas
        .iter()
        .flat_map(|a| gas.iter().map(move |b| (a - b).abs()))
        .fold(0.0, f64::max);
    let distinct_pmfs = (0..3)
        .filter(|&i| (0..i).all(|j| pmfs[j].total_variation(&pmfs[i]) > 0.0))
        .count();
    Outcome::new(
        same_degrees && max_gap < 1e-9 && distinct_pmfs >= 2,
        format!(
            "degrees {:?}, GA = {ga:.4} (target {TARGET}), pairwise GA gap {max_gap:.1e}, {distinct_pmfs} distinct DD PMFs",
            degs[0]
        ),
    )
}

fn oracle_suites() -> Outcome {
    let mut notes = Vec::new();

    // Betweenness on every connected labeled graph with n <= 6.
    let (mut checked, mut bad) = (0usize, 0usize);
    for n in 2..=6 {
        for es in common::all_graphs(n) {
            if !common::connected(n, &es) {
                continue;
            }
            let g = Graph::from_edges(n, false, es).unwrap();
            let fast = measure_table(&g, Measure::EdgeBetweenness, MeasureOptions::default()).unwrap();
            let slow = common::brute_force_edge_betweenness(&g);
            checked += 1;
            if fast.values.iter().zip(&slow).any(|(x, y)| (x - y).abs() > 1e-9) {
                bad += 1;
            }
        }
    }
    notes.push(format!("betweenness: {bad} mismatches over {checked} graphs"));
    let mut pass = bad == 0;

    // Minimum edge cuts on random connected graphs with n <= 7.
    let (mut checked, mut bad) = (0usize, 0usize);
    let mut rng = sample_rng(7, 0);
    while checked < 2000 {
        let n = rng.random_range(2..=7);
        let p = rng.random_range(0.2..0.9);
        let g = Model::Er { n, p }.generate(&mut rng).unwrap();
        if !g.is_connected() {
            continue;
        }
        checked += 1;
        let cut = min_edge_cut(&g).unwrap();
        if cut.len() != common::brute_force_min_cut(&g) {
            bad += 1;
        }
    }
    notes.push(format!("min cut: {bad} mismatches over {checked} graphs"));
    pass &= bad == 0;

    // W1 inside Ollivier-Ricci on edges whose endpoint supports have <= 4 vertices.
    let (mut checked, mut worst) = (0usize, 0.0f64);
    for i in 0..300 {
        let g = Model::Er { n: 12, p: 0.25 }.generate(&mut sample_rng(8, i)).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let table = measure_table(&g, Measure::OllivierRicci, MeasureOptions::default()).unwrap();
        for (e, curvature) in table.iter() {
            let (sv, su) = (g.neighbors(e.0), g.neighbors(e.1));
            if sv.len() > 4 || su.len() > 4 {
                continue;
            }
            let cost: Vec<Vec<f64>> = sv
                .iter()
                .map(|&a| {
                    let dist = g.bfs_distances(a).unwrap();
                    su.iter().map(|&b| dist[b] as f64).collect()
                })
                .collect();
            let supply = vec![1.0 / sv.len() as f64; sv.len()];
            let demand = vec![1.0 / su.len() as f64; su.len()];
            let w1 = common::brute_force_transport(&supply, &demand, &cost);
            worst = worst.max((1.0 - w1 - curvature).abs());
            checked += 1;
        }
    }
    notes.push(format!("W1: max error {worst:.1e} over {checked} edges"));
    pass &= worst <= 1e-9 && checked > 0;

    Outcome::new(pass, notes.join("; "))
}

fn mean_ga(spec: &EnsembleSpec) -> f64 {
    let gas = spec
        .map(|_, g| Ok(global_assortativity(&g)?.unwrap_or(f64::NAN)))
        .unwrap();
    mean_std(&gas).0
}

fn rg_and_er_assortativity() -> Outcome {
    let rg = mean_ga(&ensemble(Model::Rg { n: 1000, radius: 0.06 }, 20, 5));
    let er = mean_ga(&ensemble(Model::Er { n: 1000, p: 6.0 / 999.0 }, 20, 6));
    Outcome::new(
        (0.40..=0.70).contains(&rg) && (-0.05..=0.05).contains(&er),
        format!("RG(1000, 0.06) mean GA = {rg:.4} (want [0.40, 0.70]); ER(1000, c=6) mean GA = {er:.4} (want [-0.05, 0.05])"),
    )
}

fn percolation_dominance() -> Outcome {
    let spec = ensemble(Model::Ba { n: 1000, beta: 5 }, 50, 9);
    let orders = [PercolationOrder::DdDesc, PercolationOrder::Random, PercolationOrder::EbwDesc];
    let runs = spec
        .map(|i, g| {
            let opts = PercolationOptions::evenly_spaced(0.05, i as u64);
            orders.iter().map(|&o| percolate(&g, o, &opts)).collect::<Result<Vec<_>, _>>()
        })
        .unwrap();
    let summaries: Vec<TraceSummary> = (0..orders.len())
        .map(|k| {
            let traces: Vec<_> = runs.iter().map(|r| r[k].clone()).collect();
            TraceSummary::from_runs(&traces).unwrap()
        })
        .collect();
    let [dd, random, ebw] = [0, 1, 2].map(|k| summaries[k].mean_at(0.5));
    let first_gap = summaries[0]
        .removed_fraction
        .iter()
        .zip(summaries[0].mean.iter().zip(&summaries[1].mean))
        .find(|(_, (d, r))| **d <= **r - 0.05)
        .map(|(f, _)| *f);
    Outcome::new(
        dd <= random - 0.05 && (dd - ebw).abs() <= 0.10,
        format!(
            "LCC at 50% removed: dd_desc {dd:.4}, random {random:.4}, ebw_desc {ebw:.4}; dd_desc first trails random by 0.05 at fraction {first_gap:?}"
        ),
    )
}

fn rewiring() -> Outcome {
    let tol = 0.025;
    let constrained = ensemble(Model::Ba { n: 500, beta: 5 }, 10, 10)
        .map(|i, g| {
            let ga0 = global_assortativity(&g)?.unwrap();
            let out = constrained_randomize(&g, 5000, tol, 100 + i as u64)?;
            let end = global_assortativity(&out.graph)?.unwrap();
            let worst = out
                .ga_trajectory
                .iter()
                .chain([&end])
                .map(|ga| (ga - ga0).abs())
                .fold(0.0, f64::max);
            Ok((worst, out.accepted_steps))
        })
        .unwrap();
    let worst = constrained.iter().map(|r| r.0).fold(0.0, f64::max);
    let min_accepted = constrained.iter().map(|r| r.1).min().unwrap();

    let greedy = ensemble(Model::Ba { n: 100, beta: 5 }, 20, 11)
        .map(|i, g| {
            let before = global_assortativity(&g)?.unwrap();
            let out = assortative_rewire(&g, 10_000, 200 + i as u64)?;
            Ok((before, global_assortativity(&out.graph)?.unwrap()))
        })
        .unwrap();
    let before = mean_std(&greedy.iter().map(|r| r.0).collect::<Vec<_>>()).0;
    let after = mean_std(&greedy.iter().map(|r| r.1).collect::<Vec<_>>()).0;
    Outcome::new(
        worst <= tol && after - before >= 0.3,
        format!(
            "constrained: max |dGA| {worst:.4} (limit {tol}), min accepted swaps {min_accepted}; greedy BA(100,5): mean GA {before:.4} -> {after:.4} (rise {:.4}, want >= 0.3)",
            after - before
        ),
    )
}

fn mean_pearson(spec: &EnsembleSpec, other: Measure) -> f64 {
    let rs = spec
        .map(|_, g| {
            let t = measure_tables(&g, &[Measure::Dd, other], MeasureOptions::default())?;
            Ok(measure_correlation(&t[0], &t[1], CorrelationKind::Pearson)?.unwrap_or(f64::NAN))
        })
        .unwrap();
    mean_std(&rs).0
}

fn correlation_signs() -> Outcome {
    let ba = ensemble(Model::Ba { n: 1000, beta: 5 }, 20, 12);
    let rf = mean_pearson(&ba, Measure::FormanRicci);
    let ebw = mean_pearson(&ba, Measure::EdgeBetweenness);
    let mut pass = rf < 0.0 && ebw > 0.0;
    let mut notes = vec![format!("BA(1000,5): r(DD,RF) = {rf:.4}, r(DD,EBW) = {ebw:.4}")];
    for (name, model) in [
        ("ER(1000, c=6)", Model::Er { n: 1000, p: 6.0 / 999.0 }),
        ("WS(1000, 6, 0.01)", Model::Ws { n: 1000, k: 6, beta: 0.01 }),
        ("RG(1000, 0.06)", Model::Rg { n: 1000, radius: 0.06 }),
    ] {
        let ro = mean_pearson(&ensemble(model, 10, 13), Measure::OllivierRicci);
        pass &= ro.abs() <= 0.15;
        notes.push(format!("{name}: r(DD,RO) = {ro:.4}"));
    }
    Outcome::new(pass, notes.join("; "))
}
