use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::stats;

/// Probability mass function over integers, support kept ascending.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Pmf {
    pub support: Vec<i64>,
    pub probabilities: Vec<f64>,
}

impl Pmf {
    /// Empirical PMF with weight `count / total` per value.
    pub fn from_counts(counts: &BTreeMap<i64, u64>) -> Self {
        let total: u64 = counts.values().sum();
        let (support, probabilities) = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&d, &c)| (d, c as f64 / total as f64))
            .unzip();
        Self {
            support,
            probabilities,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Self {
        let map: BTreeMap<i64, f64> = pairs.into_iter().collect();
        let (support, probabilities) = map.into_iter().unzip();
        Self {
            support,
            probabilities,
        }
    }

    pub fn prob(&self, value: i64) -> f64 {
        self.support
            .binary_search(&value)
            .map(|i| self.probabilities[i])
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.support.iter().copied().zip(self.probabilities.iter().copied())
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(d, p)| d as f64 * p).sum()
    }

    /// Half the L1 distance, over the union of both supports.
    pub fn total_variation(&self, other: &Pmf) -> f64 {
        self.total_variation_where(other, |_| true)
    }

    /// Half the L1 distance restricted to values accepted by `keep`.
    pub fn total_variation_where<F: Fn(i64) -> bool>(&self, other: &Pmf, keep: F) -> f64 {
        let mut keys: Vec<i64> = self.support.iter().chain(&other.support).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        0.5 * keys
            .into_iter()
            .filter(|&d| keep(d))
            .map(|d| (self.prob(d) - other.prob(d)).abs())
            .sum::<f64>()
    }
}

/// Pointwise mean and standard deviation of several PMFs; a value missing from
/// one PMF counts as probability zero there.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PmfSummary {
    pub support: Vec<i64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl PmfSummary {
    pub fn from_samples(pmfs: &[Pmf]) -> Self {
        let mut keys: Vec<i64> = pmfs.iter().flat_map(|p| p.support.iter().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        let mut mean = Vec::with_capacity(keys.len());
        let mut std = Vec::with_capacity(keys.len());
        for &d in &keys {
            let xs: Vec<f64> = pmfs.iter().map(|p| p.prob(d)).collect();
            let (m, s) = stats::mean_std(&xs);
            mean.push(m);
            std.push(s);
        }
        Self {
            support: keys,
            mean,
            std,
        }
    }

    pub fn mean_pmf(&self) -> Pmf {
        Pmf {
            support: self.support.clone(),
            probabilities: self.mean.clone(),
        }
    }
}
