//! Batch experiment: every nonempty type combination at every size, with
//! per-size aggregates written as CSV.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::affine1d::decide;
use crate::cert::{check_system, find_witness};
use crate::error::Result;
use crate::generator::{gen_random, Combo};
use crate::par::{self, Execution};

pub const DEFAULT_SIZES: [u64; 8] = [8, 16, 32, 64, 128, 256, 512, 1024];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<u64>,
    pub per_combo: u64,
    pub seed: u64,
    /// Node budget for witness search on reachable instances; 0 skips it.
    pub witness_budget: usize,
    pub execution: Execution,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: DEFAULT_SIZES.to_vec(),
            per_combo: 10,
            seed: 0,
            witness_budget: 100_000,
            execution: Execution::Parallel,
        }
    }
}

/// Outcome for one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub size: u64,
    pub combo: Combo,
    pub index: u64,
    pub build_time: f64,
    pub proof_time: f64,
    pub reachable: bool,
    pub certificate_valid: bool,
    pub witness_found: bool,
    pub witness_time: f64,
}

/// One CSV line: aggregates over all instances of one size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub size: u64,
    pub instances: u64,
    pub build_time_avg: f64,
    pub build_time_max: f64,
    pub build_time_median: f64,
    pub unreachable_count: u64,
    pub unreachable_pct: f64,
    pub proof_time_avg: f64,
    pub proof_time_max: f64,
    pub reachable_count: u64,
    pub reachable_pct: f64,
    pub witness_found_count: u64,
    pub witness_found_pct: f64,
    pub witness_time_avg: f64,
    pub certificates_valid: u64,
    pub cumulative_instances: u64,
    pub cumulative_unreachable: u64,
}

/// Per-instance seed: instances of one combo and size differ by `index`.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(index)
}

pub fn run_instance(size: u64, combo: Combo, index: u64, seed: u64, witness_budget: usize) -> Result<InstanceResult> {
    let sys = gen_random(instance_seed(seed, index), size, combo)?;
    let t = Instant::now();
    let decision = decide(&sys);
    let build_time = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let certificate_valid = check_system(&decision.invariant, &sys, !decision.reachable).is_ok();
    let proof_time = t.elapsed().as_secs_f64();
    let (witness_found, witness_time) = if decision.reachable && witness_budget > 0 {
        let t = Instant::now();
        let found = find_witness(&sys, witness_budget).is_some_and(|w| w.replays(&sys));
        (found, t.elapsed().as_secs_f64())
    } else {
        (false, 0.0)
    };
    Ok(InstanceResult {
        size,
        combo,
        index,
        build_time,
        proof_time,
        reachable: decision.reachable,
        certificate_valid,
        witness_found,
        witness_time,
    })
}

/// Run every instance of the configuration.
pub fn run_instances(cfg: &BenchConfig) -> Result<Vec<InstanceResult>> {
    let jobs: Vec<(u64, Combo, u64)> = cfg
        .sizes
        .iter()
        .flat_map(|&s| Combo::all().flat_map(move |c| (0..cfg.per_combo).map(move |i| (s, c, i))))
        .collect();
    par::map(&jobs, cfg.execution, |&(s, c, i)| {
        run_instance(s, c, i, cfg.seed, cfg.witness_budget)
    })
    .into_iter()
    .collect()
}

pub fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn pct(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Per-size rows, in the order of `sizes`.
pub fn aggregate(sizes: &[u64], results: &[InstanceResult]) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    let (mut cum_n, mut cum_u) = (0, 0);
    for &size in sizes {
        let rs: Vec<&InstanceResult> = results.iter().filter(|r| r.size == size).collect();
        let n = rs.len() as u64;
        let avg = |f: &dyn Fn(&InstanceResult) -> f64, sel: &dyn Fn(&InstanceResult) -> bool| {
            let xs: Vec<f64> = rs.iter().filter(|r| sel(r)).map(|r| f(r)).collect();
            if xs.is_empty() {
                0.0
            } else {
                xs.iter().sum::<f64>() / xs.len() as f64
            }
        };
        let max = |f: &dyn Fn(&InstanceResult) -> f64| rs.iter().map(|r| f(r)).fold(0.0, f64::max);
        let unreachable = rs.iter().filter(|r| !r.reachable).count() as u64;
        let reachable = n - unreachable;
        let witnesses = rs.iter().filter(|r| r.witness_found).count() as u64;
        let mut builds: Vec<f64> = rs.iter().map(|r| r.build_time).collect();
        cum_n += n;
        cum_u += unreachable;
        rows.push(BenchRow {
            size,
            instances: n,
            build_time_avg: avg(&|r| r.build_time, &|_| true),
            build_time_max: max(&|r| r.build_time),
            build_time_median: median(&mut builds),
            unreachable_count: unreachable,
            unreachable_pct: pct(unreachable, n),
            proof_time_avg: avg(&|r| r.proof_time, &|_| true),
            proof_time_max: max(&|r| r.proof_time),
            reachable_count: reachable,
            reachable_pct: pct(reachable, n),
            witness_found_count: witnesses,
            witness_found_pct: pct(witnesses, reachable),
            witness_time_avg: avg(&|r| r.witness_time, &|r| r.reachable),
            certificates_valid: rs.iter().filter(|r| r.certificate_valid).count() as u64,
            cumulative_instances: cum_n,
            cumulative_unreachable: cum_u,
        });
    }
    rows
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Run the experiment and aggregate it per size.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let results = run_instances(cfg)?;
    Ok(aggregate(&cfg.sizes, &results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_size_one_each() {
        let cfg = BenchConfig {
            sizes: vec![8],
            per_combo: 1,
            seed: 3,
            witness_budget: 1000,
            execution: Execution::Sequential,
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(r.instances, 127);
        assert_eq!(r.unreachable_count + r.reachable_count, 127);
        assert_eq!(r.certificates_valid, 127);
        assert!(r.witness_found_count <= r.reachable_count);

        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("size,instances,build_time_avg,"));
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn parallel_matches_sequential_verdicts() {
        let mut cfg = BenchConfig {
            sizes: vec![8, 16],
            per_combo: 1,
            seed: 11,
            witness_budget: 0,
            execution: Execution::Sequential,
        };
        let seq = run_instances(&cfg).unwrap();
        cfg.execution = Execution::Parallel;
        let par = run_instances(&cfg).unwrap();
        let key = |rs: &[InstanceResult]| -> Vec<(u64, u8, bool, bool)> {
            rs.iter()
                .map(|r| (r.size, r.combo.mask(), r.reachable, r.certificate_valid))
                .collect()
        };
        assert_eq!(key(&seq), key(&par));
        let rows = aggregate(&cfg.sizes, &par);
        assert!(rows[1].cumulative_instances >= rows[0].cumulative_instances);
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&mut []), 0.0);
    }
}
