//! Fixed-seed graphs shared by the benchmarks.

use degdiff_core::generators::{gen_ba, gen_er, gen_rg, gen_ws};
use degdiff_core::Graph;

pub const FIXTURE_SEED: u64 = 0xDD;

pub fn ba(n: usize, beta: usize) -> Graph {
    gen_ba(n, beta, FIXTURE_SEED).expect("valid BA parameters")
}

/// ER graph with mean degree `c`.
pub fn er(n: usize, c: f64) -> Graph {
    gen_er(n, c / (n - 1) as f64, FIXTURE_SEED).expect("valid ER parameters")
}

pub fn ws(n: usize, k: usize, beta: f64) -> Graph {
    gen_ws(n, k, beta, FIXTURE_SEED).expect("valid WS parameters")
}

pub fn rg(n: usize, radius: f64) -> Graph {
    gen_rg(n, radius, FIXTURE_SEED).expect("valid RG parameters")
}

/// One graph per model family at comparable mean degree.
pub fn families(n: usize) -> Vec<(&'static str, Graph)> {
    vec![
        ("ba", ba(n, 3)),
        ("er", er(n, 6.0)),
        ("ws", ws(n, 6, 0.01)),
        ("rg", rg(n, (6.0 / (std::f64::consts::PI * n as f64)).sqrt())),
    ]
}
