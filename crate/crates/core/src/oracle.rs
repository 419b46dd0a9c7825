//! Brute-force reference solver for small instances.
//!
//! A dense centre grid over the MinBall search region is refined around the incumbent.
//! Every centre is evaluated directly, so the oracle shares no search logic with the
//! solvers beyond the gauge itself. With `t` the largest directed distance from any point
//! of a grid cell to its nearest node, the best node is within `2t` of the optimum over the
//! region, which yields the reported lower bound.

use crate::annulus::{radii_at, PointCloud};
use crate::error::{Error, Result};
use crate::minball::minball;
use crate::polytope::{ConvexPolytope, Rotation};
use crate::rotation::scale_factor;
use crate::translation::{grid_radii, select_best, GridDiagnostics, TranslationGrid};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

pub const MAX_ORACLE_POINTS: usize = 1000;
pub const MAX_ORACLE_CELLS: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Translation,
    Rigid,
}

/// One refinement level of the centre grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleLevel {
    pub spacing: f64,
    pub points_per_axis: usize,
    /// Largest directed distance from a point of a cell to its nearest node.
    pub t: f64,
    pub best_width: f64,
    /// Angular step of the orientation scan at this level (rigid mode).
    pub angle_step: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub lower: f64,
    pub upper: f64,
    pub center: Vec<f64>,
    pub angles: Vec<f64>,
    pub schedule: Vec<OracleLevel>,
    /// `2·t` of the final level, plus the rotation allowance in rigid mode.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    /// Refinement levels after the initial grid.
    pub levels: usize,
    /// Nodes per axis of the initial grid, by dimension (index `d - 2`).
    pub coarse_per_axis: Vec<usize>,
    pub refine_per_axis: usize,
    /// Orientations of the initial rigid scan.
    pub coarse_angles: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { levels: 3, coarse_per_axis: vec![101, 41], refine_per_axis: 21, coarse_angles: 180, seed: 0 }
    }
}

impl OracleConfig {
    fn coarse(&self, dim: usize) -> usize {
        let i = (dim - 2).min(self.coarse_per_axis.len() - 1);
        self.coarse_per_axis[i].max(3)
    }
}

struct Translational {
    lower: f64,
    upper: f64,
    outer: f64,
    inner: f64,
    center: Vec<f64>,
    schedule: Vec<OracleLevel>,
}

fn cube_grid(center: &[f64], half_side: f64, per_axis: usize) -> TranslationGrid {
    TranslationGrid {
        origin: center.iter().map(|x| x - half_side).collect(),
        spacing: 2.0 * half_side / (per_axis - 1) as f64,
        points_per_axis: per_axis,
        diagnostics: GridDiagnostics { w: half_side, b: 1.0, f_cube: 1.0 },
    }
}

fn check_cells(per_axis: usize, dim: usize) -> Result<()> {
    let cells = (per_axis as u128).pow(dim as u32);
    if cells > MAX_ORACLE_CELLS {
        return Err(Error::TooLargeForOracle(format!("{cells} grid cells exceed {MAX_ORACLE_CELLS}")));
    }
    Ok(())
}

fn translational(shape: &ConvexPolytope, s: &PointCloud, cfg: &OracleConfig, coarse: usize) -> Result<Translational> {
    let d = shape.dim();
    let ball = minball(shape, s, cfg.seed)?;
    let (r0, big_r0) = radii_at(shape, s, &ball.center);
    let w0 = (big_r0 - r0).max(1e-12 * (1.0 + big_r0));
    let region = shape.smallest_enclosing_cube(&ball.center, w0);
    let corner = shape.corner_gauge();
    let refine = cfg.refine_per_axis.max(3) | 1;
    check_cells(coarse.max(refine), d)?;

    let mut grid = cube_grid(&region.center, region.half_side, coarse);
    let mut best = Translational {
        lower: f64::INFINITY,
        upper: big_r0 - r0,
        outer: big_r0,
        inner: r0,
        center: ball.center.clone(),
        schedule: Vec::new(),
    };
    for _ in 0..=cfg.levels {
        let radii = grid_radii(shape, s, &grid);
        let idx = select_best(&radii);
        let (r, big_r) = radii[idx];
        let node = grid.point(idx);
        let t = 0.5 * grid.spacing * corner;
        best.lower = best.lower.min(big_r - r - 2.0 * t);
        if big_r - r <= best.upper {
            best.upper = big_r - r;
            best.outer = big_r;
            best.inner = r;
            best.center = node.clone();
        }
        best.schedule.push(OracleLevel {
            spacing: grid.spacing,
            points_per_axis: grid.points_per_axis,
            t,
            best_width: best.upper,
            angle_step: None,
        });
        grid = cube_grid(&best.center, 2.0 * grid.spacing, refine);
    }
    best.lower = best.lower.min(best.upper);
    Ok(best)
}

fn check_size(s: &PointCloud) -> Result<()> {
    if s.len() > MAX_ORACLE_POINTS {
        return Err(Error::TooLargeForOracle(format!("{} points exceed {MAX_ORACLE_POINTS}", s.len())));
    }
    Ok(())
}

/// Reference bounds on the minimum width under translations (or rigid motions in 2D).
pub fn brute_force_oracle(
    shape: &ConvexPolytope,
    s: &PointCloud,
    mode: OracleMode,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    check_size(s)?;
    if s.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if s.dim() != shape.dim() {
        return Err(Error::DimensionMismatch { expected: shape.dim(), got: s.dim() });
    }
    match mode {
        OracleMode::Translation => {
            let tr = translational(shape, s, cfg, cfg.coarse(shape.dim()))?;
            let t_final = tr.schedule.last().map_or(0.0, |l| l.t);
            Ok(OracleReport {
                lower: tr.lower,
                upper: tr.upper,
                center: tr.center,
                angles: vec![0.0; shape.dim() - 1],
                schedule: tr.schedule,
                slack: 2.0 * t_final,
            })
        }
        OracleMode::Rigid => rigid(shape, s, cfg),
    }
}

fn rigid(shape: &ConvexPolytope, s: &PointCloud, cfg: &OracleConfig) -> Result<OracleReport> {
    if shape.dim() != 2 {
        return Err(Error::TooLargeForOracle("the rigid oracle scans planar orientations only".into()));
    }
    let theta = shape.bottleneck_angle();
    let scan_cfg = OracleConfig { levels: 1, ..cfg.clone() };
    let scan_coarse = 41;
    let at = |angle: f64, c: &OracleConfig, coarse: usize| -> Result<Translational> {
        translational(&shape.rotate(&Rotation::from_angles(&[angle])), s, c, coarse)
    };

    let n = cfg.coarse_angles.max(8);
    let mut step = TAU / n as f64;
    let mut best_angle = 0.0;
    let mut best_upper = f64::INFINITY;
    for i in 0..n {
        let a = step * i as f64;
        let tr = at(a, &scan_cfg, scan_coarse)?;
        if tr.upper < best_upper {
            best_upper = tr.upper;
            best_angle = a;
        }
    }
    let mut schedule = vec![OracleLevel {
        spacing: 0.0,
        points_per_axis: scan_coarse,
        t: 0.0,
        best_width: best_upper,
        angle_step: Some(step),
    }];
    let mut best: Option<Translational> = None;
    for _ in 0..cfg.levels {
        let half = 5;
        let fine = 2.0 * step / (2 * half) as f64;
        let mut incumbent = best_angle;
        for j in 0..=(2 * half) {
            let a = best_angle - step + fine * j as f64;
            let tr = at(a, cfg, cfg.coarse(2))?;
            if best.as_ref().is_none_or(|b| tr.upper < b.upper) {
                incumbent = a;
                best = Some(tr);
            }
        }
        best_angle = incumbent;
        step = fine;
        let b = best.as_ref().expect("refinement evaluates at least one angle");
        schedule.push(OracleLevel {
            spacing: b.schedule.last().map_or(0.0, |l| l.spacing),
            points_per_axis: cfg.refine_per_axis,
            t: b.schedule.last().map_or(0.0, |l| l.t),
            best_width: b.upper,
            angle_step: Some(step),
        });
    }
    let b = match best {
        Some(b) => b,
        None => at(best_angle, cfg, cfg.coarse(2))?,
    };
    let grow = scale_factor(theta, 0.5 * step)?;
    let rot_slack = (grow - 1.0) * b.outer + (1.0 - 1.0 / grow) * b.inner;
    let t_final = b.schedule.last().map_or(0.0, |l| l.t);
    let angle = Rotation::from_angles(&[best_angle]).angles()[0];
    Ok(OracleReport {
        lower: b.lower - rot_slack,
        upper: b.upper,
        center: b.center,
        angles: vec![angle],
        schedule,
        slack: 2.0 * t_final + rot_slack,
    })
}
