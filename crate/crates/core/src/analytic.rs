//! Closed-form DD distributions for Erdős–Rényi and Barabási–Albert
//! ensembles.
//!
//! Binomials and factorials are handled as logarithms (log-gamma) and only
//! exponentiated once a whole term is assembled, so `n`, `k`, `l` up to 10^4
//! stay finite. Infinite sums are truncated; the mass lost to truncation is
//! reported alongside every PMF.

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};
use crate::pmf::Pmf;

/// Per-term cutoff for adaptive truncation of the Poisson-limit sums.
pub const TERM_TOLERANCE: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluationMode {
    ErExact,
    ErPoisson,
    Ba,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPmf {
    pub mode: EvaluationMode,
    /// `d = 0, 1, ..., d_max`.
    pub probabilities: Vec<f64>,
    /// `1 - sum(probabilities)`, clamped at zero.
    pub truncation_mass: f64,
}

impl AnalyticPmf {
    fn new(mode: EvaluationMode, probabilities: Vec<f64>) -> Self {
        let total: f64 = probabilities.iter().sum();
        Self {
            mode,
            probabilities,
            truncation_mass: (1.0 - total).max(0.0),
        }
    }

    pub fn prob(&self, d: usize) -> f64 {
        self.probabilities.get(d).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn to_pmf(&self) -> Pmf {
        Pmf {
            support: (0..self.probabilities.len() as i64).collect(),
            probabilities: self.probabilities.clone(),
        }
    }
}

/// `ln(i!)` for `i = 0..len`.
struct LnFactorials(Vec<f64>);

impl LnFactorials {
    fn up_to(max: usize) -> Self {
        Self((0..=max as u64).map(ln_factorial).collect())
    }

    fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.0[n] - self.0[k] - self.0[n - k]
    }
}

fn check_er(n: usize, p: f64) -> Result<()> {
    if n < 2 {
        return Err(invalid("ER DD distribution needs n >= 2"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!(
            "ER DD distribution needs 0 < p < 1, got {p}"
        )));
    }
    Ok(())
}

/// Excess-degree distribution of `G(n, p)`: Binomial(n - 2, p).
fn er_excess(n: usize, p: f64, lf: &LnFactorials) -> Vec<f64> {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    (0..=n - 2)
        .map(|k| (lf.ln_binomial(n - 2, k) + k as f64 * lp + (n - 2 - k) as f64 * lq).exp())
        .collect()
}

fn dd_from_excess(q: &[f64], d: usize) -> f64 {
    if d >= q.len() {
        return 0.0;
    }
    let s: f64 = q.iter().zip(&q[d..]).map(|(a, b)| a * b).sum();
    if d == 0 {
        s
    } else {
        2.0 * s
    }
}

/// Exact DD probability `P(d)` for `G(n, p)`, as the double sum over
/// endpoint excess degrees `|k - l| = d` of `q_k q_l`.
pub fn er_dd_exact(n: usize, p: f64, d: usize) -> Result<f64> {
    check_er(n, p)?;
    if d > n - 2 {
        return Err(invalid(format!("d = {d} exceeds n - 2 = {}", n - 2)));
    }
    let lf = LnFactorials::up_to(n);
    Ok(dd_from_excess(&er_excess(n, p, &lf), d))
}

/// The whole exact ER DD distribution, `d = 0..=n-2`.
pub fn er_dd_exact_pmf(n: usize, p: f64) -> Result<AnalyticPmf> {
    check_er(n, p)?;
    let lf = LnFactorials::up_to(n);
    let q = er_excess(n, p, &lf);
    let probs = (0..=n - 2).map(|d| dd_from_excess(&q, d)).collect();
    Ok(AnalyticPmf::new(EvaluationMode::ErExact, probs))
}

/// Exact ER DD probability through the single-sum closed form
/// `(2 - [d = 0]) p^(d-2) (1-p)^(2(n-1)-d) sum_l B(n-2, d+l-1) B(n-2, l-1) (p/(1-p))^(2l)`,
/// each term assembled in log space.
pub fn er_dd_closed_form(n: usize, p: f64, d: usize) -> Result<f64> {
    check_er(n, p)?;
    if d > n - 2 {
        return Err(invalid(format!("d = {d} exceeds n - 2 = {}", n - 2)));
    }
    let lf = LnFactorials::up_to(n);
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let prefix = (d as f64 - 2.0) * lp + (2.0 * (n as f64 - 1.0) - d as f64) * lq;
    let ratio = lp - lq;
    let sum: f64 = (1..=n - 1 - d)
        .map(|l| {
            (prefix
                + lf.ln_binomial(n - 2, d + l - 1)
                + lf.ln_binomial(n - 2, l - 1)
                + 2.0 * l as f64 * ratio)
                .exp()
        })
        .sum();
    Ok(if d == 0 { sum } else { 2.0 * sum })
}

fn poisson_term(c: f64, d: usize, l: usize) -> f64 {
    let lc = c.ln();
    (-2.0 * c + (d as f64 - 2.0 + 2.0 * l as f64) * lc
        - ln_gamma((d + l) as f64)
        - ln_gamma(l as f64))
    .exp()
}

/// Smallest `l_max` past the peak of the Poisson-limit summand with a term
/// below [`TERM_TOLERANCE`].
pub fn poisson_l_max(c: f64, d: usize) -> usize {
    let mut l = 1;
    loop {
        // Terms shrink once c^2 < (d + l) l.
        let past_peak = ((d + l) * l) as f64 > c * c;
        if past_peak && poisson_term(c, d, l) < TERM_TOLERANCE {
            return l;
        }
        l += 1;
    }
}

/// Poisson-limit DD probability for mean degree `c`:
/// `(2 - [d = 0]) e^(-2c) c^(d-2) sum_{l=1}^{l_max} c^(2l) / ((d+l-1)! (l-1)!)`.
pub fn er_dd_poisson(c: f64, d: usize, l_max: usize) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(format!("mean degree must be positive, got {c}")));
    }
    if l_max == 0 {
        return Err(invalid("l_max must be positive"));
    }
    let s: f64 = (1..=l_max).map(|l| poisson_term(c, d, l)).sum();
    Ok(if d == 0 { s } else { 2.0 * s })
}

/// Poisson-limit DD distribution, each `P(d)` summed to its own adaptive
/// `l_max`, and `d` extended until the terms fall below [`TERM_TOLERANCE`].
pub fn er_dd_poisson_pmf(c: f64) -> Result<AnalyticPmf> {
    let mut probs = Vec::new();
    let mut d = 0;
    loop {
        let pd = er_dd_poisson(c, d, poisson_l_max(c, d))?;
        probs.push(pd);
        if d as f64 > 2.0 * c && pd < TERM_TOLERANCE {
            break;
        }
        d += 1;
    }
    Ok(AnalyticPmf::new(EvaluationMode::ErPoisson, probs))
}

fn ba_cell(beta: usize, k: usize, l: usize, lf: &LnFactorials) -> f64 {
    let (b, kf, lf_) = (beta as f64, k as f64, l as f64);
    let prefactor = b * (b + 1.0) / (kf * (kf + 1.0) * lf_ * (lf_ + 1.0));
    let ln_ratio = lf.ln_binomial(2 * beta + 2, beta + 1)
        + lf.ln_binomial(k + l - 2 * beta, l - beta)
        - lf.ln_binomial(k + l + 2, l + 1);
    // 1 - ratio, accurate near ratio = 1.
    prefactor * -ln_ratio.exp_m1()
}

/// Probability that an ordered pair of edge endpoints in an infinite BA
/// network has degrees `(k, l)`:
/// `beta (beta + 1) / (k (k+1) l (l+1)) [1 - B(2beta+2, beta+1) B(k+l-2beta, l-beta) / B(k+l+2, l+1)]`.
///
/// This is half of the frequently quoted form with prefactor
/// `2 beta (beta + 1)`; that form sums to 2 over all `(k, l)`, this one to 1.
pub fn ba_joint_degree(beta: usize, k: usize, l: usize) -> Result<f64> {
    if beta == 0 {
        return Err(invalid("beta must be positive"));
    }
    if k < beta || l < beta {
        return Err(invalid(format!(
            "degrees ({k}, {l}) below the BA minimum degree {beta}"
        )));
    }
    let lf = LnFactorials::up_to(k + l + 2);
    Ok(ba_cell(beta, k, l, &lf))
}

/// BA DD probability: `sum_{|k - l| = d; beta <= k, l <= k_max}` of
/// [`ba_joint_degree`].
pub fn ba_dd_dist(beta: usize, d: usize, k_max: usize) -> Result<f64> {
    check_ba(beta, k_max)?;
    let lf = LnFactorials::up_to(2 * k_max + 2);
    Ok(ba_dd_with(beta, d, k_max, &lf))
}

fn check_ba(beta: usize, k_max: usize) -> Result<()> {
    if beta == 0 {
        return Err(invalid("beta must be positive"));
    }
    if k_max < beta {
        return Err(invalid(format!("k_max {k_max} below beta {beta}")));
    }
    Ok(())
}

fn ba_dd_with(beta: usize, d: usize, k_max: usize, lf: &LnFactorials) -> f64 {
    if d > k_max - beta {
        return 0.0;
    }
    let s: f64 = (beta..=k_max - d).map(|k| ba_cell(beta, k, k + d, lf)).sum();
    if d == 0 {
        s
    } else {
        2.0 * s
    }
}

/// BA DD distribution over `d = 0..=k_max - beta`, truncated to degrees at
/// most `k_max`. The endpoint degree tail beyond `K` carries mass
/// `(beta + 1) / (K + 2)`, so the truncation mass lies between that and
/// twice that.
pub fn ba_dd_pmf(beta: usize, k_max: usize) -> Result<AnalyticPmf> {
    check_ba(beta, k_max)?;
    let lf = LnFactorials::up_to(2 * k_max + 2);
    let probs = (0..=k_max - beta)
        .map(|d| ba_dd_with(beta, d, k_max, &lf))
        .collect();
    Ok(AnalyticPmf::new(EvaluationMode::Ba, probs))
}

/// Mass of the BA endpoint degree distribution `(beta+1)/((k+1)(k+2))`
/// above `k_max`.
pub fn ba_endpoint_tail(beta: usize, k_max: usize) -> f64 {
    (beta + 1) as f64 / (k_max + 2) as f64
}
