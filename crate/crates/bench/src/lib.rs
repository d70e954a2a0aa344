//! Shared benchmark inputs.

use sphfn_core::{GroupRank1, SpectralParam};

/// `(p, q)` multiplicities of the route-agreement groups.
pub const GROUPS: [(u32, u32); 4] = [(1, 0), (2, 0), (2, 1), (4, 3)];

pub fn groups() -> Vec<GroupRank1> {
    GROUPS
        .iter()
        .map(|&(p, q)| GroupRank1::new(format!("g{p}{q}"), p, q).expect("valid multiplicities"))
        .collect()
}

pub fn spectral_params() -> [SpectralParam; 4] {
    [
        SpectralParam::real(0.3),
        SpectralParam::real(0.7),
        SpectralParam::real(1.5),
        SpectralParam::new(2.0, 1.0),
    ]
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// The 20-point grid on `[0.01, 2]`.
pub fn t_grid() -> Vec<f64> {
    linspace(0.01, 2.0, 20)
}
