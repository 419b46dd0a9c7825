//! Timing suite for the translation paths (direct and slab sweep) and the rigid solver.

use crate::annulus::PointCloud;
use crate::error::{Error, Result};
use crate::polytope::{ConvexPolytope, Rotation};
use crate::rotation::mwa_rigid;
use crate::sampler::{random_boundary_cloud, GeneratorSpec};
use crate::shapes;
use crate::translation::{mwa_translation, SolverConfig};
use std::time::Instant;

pub const CSV_HEADER: &str = "n,epsilon,dim,mode,ms,evaluations,width";

#[derive(Clone, Debug)]
pub struct BenchSuite {
    pub shape: ConvexPolytope,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<f64>,
    /// Cloud sizes for the rigid solver, run at every epsilon.
    pub rigid_sizes: Vec<usize>,
    pub band: f64,
    pub seed: u64,
    pub threads: usize,
    /// The direct path is skipped when `n · gridpoints` exceeds this.
    pub direct_budget: u128,
}

impl Default for BenchSuite {
    fn default() -> Self {
        Self {
            shape: shapes::hexagon(),
            sizes: vec![10_000, 100_000, 1_000_000],
            epsilons: vec![0.2, 0.1, 0.05],
            rigid_sizes: vec![200],
            band: 0.05,
            seed: 7,
            threads: 0,
            direct_budget: 2_000_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub epsilon: f64,
    pub dim: usize,
    /// `direct`, `planar` or `rigid`.
    pub mode: &'static str,
    pub ms: f64,
    pub evaluations: u64,
    pub width: f64,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Runs that were not timed, with the reason.
    pub skipped: Vec<String>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{:.3},{},{:.17e}\n",
                r.n, r.epsilon, r.dim, r.mode, r.ms, r.evaluations, r.width
            ));
        }
        out
    }

    /// Largest relative width gap between the direct and planar rows of each instance.
    pub fn path_mismatch(&self) -> f64 {
        let mut worst = 0.0_f64;
        for d in self.rows.iter().filter(|r| r.mode == "direct") {
            if let Some(p) = self.rows.iter().find(|r| r.mode == "planar" && r.n == d.n && r.epsilon == d.epsilon) {
                worst = worst.max((d.width - p.width).abs() / d.width.abs().max(1.0));
            }
        }
        worst
    }
}

/// Posed noisy boundary sample used by the suite.
pub fn bench_cloud(shape: &ConvexPolytope, n: usize, band: f64, seed: u64) -> Result<PointCloud> {
    let mut spec = GeneratorSpec::new(shape.clone(), 1.0, band, seed);
    spec.translation = vec![0.37; shape.dim()];
    spec.rotation = Rotation::identity(shape.dim());
    Ok(random_boundary_cloud(&spec, n)?.cloud)
}

fn time_translation(
    shape: &ConvexPolytope,
    s: &PointCloud,
    cfg: &SolverConfig,
    mode: &'static str,
) -> Result<BenchRow> {
    let start = Instant::now();
    let sol = mwa_translation(shape, s, cfg)?;
    Ok(BenchRow {
        n: s.len(),
        epsilon: cfg.epsilon,
        dim: shape.dim(),
        mode,
        ms: start.elapsed().as_secs_f64() * 1e3,
        evaluations: sol.evaluations,
        width: sol.width,
    })
}

pub fn run_bench(suite: &BenchSuite) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    let base = SolverConfig { seed: suite.seed, threads: suite.threads, ..SolverConfig::default() };
    for &n in &suite.sizes {
        let s = bench_cloud(&suite.shape, n, suite.band, suite.seed)?;
        for &eps in &suite.epsilons {
            if suite.shape.dim() == 2 {
                let cfg = SolverConfig { epsilon: eps, crossover: 0, ..base.clone() };
                let row = time_translation(&suite.shape, &s, &cfg, "planar")?;
                let work = row.evaluations as u128 * n as u128;
                report.rows.push(row);
                if work > suite.direct_budget {
                    report.skipped.push(format!("direct n={n} epsilon={eps}: {work} gauge evaluations over budget"));
                    continue;
                }
            }
            let cfg = SolverConfig { epsilon: eps, crossover: u64::MAX, ..base.clone() };
            report.rows.push(time_translation(&suite.shape, &s, &cfg, "direct")?);
        }
    }
    for &n in &suite.rigid_sizes {
        let s = bench_cloud(&suite.shape, n, suite.band, suite.seed)?;
        for &eps in &suite.epsilons {
            let cfg = SolverConfig { epsilon: eps, ..base.clone() };
            let start = Instant::now();
            match mwa_rigid(&suite.shape, &s, &cfg) {
                Ok(sol) => report.rows.push(BenchRow {
                    n,
                    epsilon: eps,
                    dim: suite.shape.dim(),
                    mode: "rigid",
                    ms: start.elapsed().as_secs_f64() * 1e3,
                    evaluations: sol.evaluations,
                    width: sol.width,
                }),
                Err(e @ (Error::GridTooLarge { .. } | Error::SlimnessDiverged { .. })) => {
                    report.skipped.push(format!("rigid n={n} epsilon={eps}: {e}"));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}
