use super::capacity::capacity;
use super::deviation::{deviation_profile, DeviationProfile, OrdSource};
use crate::error::{Error, Result};
use crate::generators::random_hypergraph;
use crate::rng::derive_seed;
use crate::structures::{Hypergraph, Structure};
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// One (n, seed) cell of a concentration sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepCell {
    pub n: usize,
    pub seed: u64,
    pub n_ind: u64,
    /// |n_ind / capacity - 1|.
    pub capacity_dev: f64,
    pub max_dev: f64,
    pub tv_bound: f64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub k: usize,
    pub r: usize,
    pub orders: usize,
    pub cells: Vec<SweepCell>,
    /// (n, median of max_dev over seeds), in the order the sizes were given.
    pub medians: Vec<(usize, f64)>,
}

/// Canonical connected k-vertex r-uniform pattern: consecutive windows
/// {i, ..., i+r-1}. For r = 2 this is the path graph.
pub fn tight_path_pattern(k: usize, r: usize) -> Result<Hypergraph> {
    if r < 2 || k < r {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= r <= k, got r={r}, k={k}"
        )));
    }
    Hypergraph::new(k, r, (0..=k - r).map(|i| (i..i + r).collect()))
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("deviations are finite"));
    let m = values.len();
    if m % 2 == 1 {
        values[m / 2]
    } else {
        (values[m / 2 - 1] + values[m / 2]) / 2.0
    }
}

/// For each size n and seed, draws a density-1/2 host, measures how far the
/// embedding count sits from its expectation, and profiles order deviations
/// over `orders` sampled host orders. Cells run in parallel and are reported
/// in deterministic (n, seed) order.
pub fn concentration_sweep(
    k: usize,
    r: usize,
    ns: &[usize],
    seeds: &[u64],
    orders: usize,
) -> Result<SweepReport> {
    let pattern = Structure::Hypergraph(tight_path_pattern(k, r)?);
    if ns.is_empty() || seeds.is_empty() {
        return Err(Error::InvalidArgument("empty sweep grid".into()));
    }
    let grid: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| seeds.iter().map(move |&s| (n, s)))
        .collect();
    let cells: Vec<SweepCell> = grid
        .par_iter()
        .map(|&(n, seed)| -> Result<SweepCell> {
            let host_seed = derive_seed(seed, &format!("sweep/host/n{n}"));
            let host = Structure::Hypergraph(random_hypergraph(n, r, 0.5, host_seed)?);
            let profile: DeviationProfile = deviation_profile(
                &pattern,
                &host,
                OrdSource::Sampled {
                    orders,
                    seed: derive_seed(seed, "sweep/orders"),
                },
            )?;
            let cap = capacity(n as u64, k as u64, r as u64)?
                .to_f64()
                .unwrap_or(f64::NAN);
            Ok(SweepCell {
                n,
                seed,
                n_ind: profile.n_ind,
                capacity_dev: (profile.n_ind as f64 / cap - 1.0).abs(),
                max_dev: profile.max_dev_f64(),
                tv_bound: profile.tv_bound_f64(),
            })
        })
        .collect::<Result<_>>()?;

    let medians = ns
        .iter()
        .map(|&n| {
            let mut devs: Vec<f64> = cells
                .iter()
                .filter(|c| c.n == n)
                .map(|c| c.max_dev)
                .collect();
            (n, median(&mut devs))
        })
        .collect();
    Ok(SweepReport {
        k,
        r,
        orders,
        cells,
        medians,
    })
}

/// True when each successive median stays below `band` times its
/// predecessor (a noise-tolerant "nonincreasing").
pub fn medians_within_noise(medians: &[(usize, f64)], band: f64) -> bool {
    medians
        .windows(2)
        .all(|w| w[1].1 <= band * w[0].1 || w[1].1 <= f64::EPSILON)
}

/// CSV rendering: one row per cell, header included.
pub fn sweep_csv(report: &SweepReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for cell in &report.cells {
        w.serialize(cell)
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}
