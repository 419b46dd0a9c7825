//! Orientation search: rotation tolerance bounds and the rotation + translation solver.
//!
//! Rotating `C` by `α` about a vertex direction scales the enclosing placement by at most
//! `sin(π - θ - α) / sin θ`, where `θ` is the bottleneck angle of `C`. Turning that into a
//! `(1+ε)` budget gives a tolerable deflection that grows with `θ` and shrinks with the
//! slimness `f = R / w`; an angle grid with cell diagonal below `θε/f` therefore contains a
//! near-optimal orientation.

use crate::annulus::{annulus_at, AnnulusSolution, PointCloud, SolveMode};
use crate::error::{Error, Result};
use crate::polytope::{ConvexPolytope, Rotation};
use crate::translation::{select_best, translation_unpooled, with_threads, SolverConfig};
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI / 2.0) {
        return Err(Error::InvalidParameter(format!("bottleneck angle {theta} outside (0, π/2)")));
    }
    Ok(())
}

/// Growth of the enclosing placement after rotating by `alpha`: `sin(π-θ-α) / sin θ`.
pub fn scale_factor(theta: f64, alpha: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(alpha >= 0.0 && alpha < PI - theta) {
        return Err(Error::InvalidParameter(format!("rotation {alpha} outside [0, π-θ)")));
    }
    Ok((PI - theta - alpha).sin() / theta.sin())
}

fn check_bound_args(theta: f64, f: f64, eps: f64, eps_may_be_zero: bool) -> Result<()> {
    check_theta(theta)?;
    if !(f > 1.0 && f.is_finite()) {
        return Err(Error::InvalidParameter(format!("slimness must exceed 1, got {f}")));
    }
    let ok = if eps_may_be_zero { eps >= 0.0 } else { eps > 0.0 };
    if !(ok && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("invalid epsilon {eps}")));
    }
    Ok(())
}

/// Largest rotation keeping a fixed-center MWA within `(1+ε)` of optimal:
/// `arcsin(sinθ/(2f) · (1+ε + sqrt((1+ε)² + 4f(f-1)))) - θ`.
pub fn alpha_bound_exact(theta: f64, f: f64, eps: f64) -> Result<f64> {
    check_bound_args(theta, f, eps, false)?;
    let e1 = 1.0 + eps;
    let arg = theta.sin() / (2.0 * f) * (e1 + (e1 * e1 + 4.0 * f * (f - 1.0)).sqrt());
    if arg >= 1.0 {
        // sin γ <= 1 <= arg for every γ: any rotation keeping γ = π - θ - α positive is tolerated
        return Ok(PI - theta);
    }
    Ok(arg.max(-1.0).asin() - theta)
}

/// Simpler lower bound `θε / (2f)` on the tolerable rotation.
pub fn alpha_bound_simple(theta: f64, f: f64, eps: f64) -> Result<f64> {
    check_bound_args(theta, f, eps, true)?;
    Ok(theta * eps / (2.0 * f))
}

/// Orthogonal operator of the Givens composition for `angles` (`d - 1` of them).
pub fn rotation_from_angles(angles: &[f64]) -> Rotation {
    Rotation::from_angles(angles)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationDiagnostics {
    pub theta: f64,
    pub f_hat: f64,
    pub target_diagonal: f64,
}

/// All `(d-1)`-tuples from `{0, h, 2h, ...}` with `h = 2π/k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationGrid {
    pub dim: usize,
    pub per_axis: usize,
    pub diagnostics: RotationDiagnostics,
}

impl RotationGrid {
    pub fn step(&self) -> f64 {
        TAU / self.per_axis as f64
    }

    pub fn len(&self) -> u128 {
        (self.per_axis as u128).pow(self.dim as u32 - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.per_axis == 0
    }

    /// Angles of orientation `idx` (first angle most significant).
    pub fn angles(&self, mut idx: u128) -> Vec<f64> {
        let k = self.per_axis as u128;
        let mut out = vec![0.0; self.dim - 1];
        for j in (0..self.dim - 1).rev() {
            out[j] = (idx % k) as f64 * self.step();
            idx /= k;
        }
        out
    }
}

/// Angle grid whose cell diagonal is below `θ·ε / f_hat`.
pub fn build_rotation_grid(dim: usize, theta: f64, f_hat: f64, eps: f64) -> Result<RotationGrid> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!("dimension {dim} < 2")));
    }
    check_bound_args(theta, f_hat, eps, false)?;
    let root = ((dim - 1) as f64).sqrt();
    let k = (TAU * f_hat * root / (theta * eps)).ceil();
    if !(k.is_finite() && k < 1e12) {
        return Err(Error::InvalidParameter(format!("rotation grid with {k} angles per axis")));
    }
    Ok(RotationGrid {
        dim,
        per_axis: k as usize,
        diagnostics: RotationDiagnostics { theta, f_hat, target_diagonal: theta * eps / f_hat },
    })
}

fn check_cap(grid: &RotationGrid, per_orientation: u128, cap: u128) -> Result<()> {
    let required = grid.len().saturating_mul(per_orientation.max(1));
    if required > cap {
        return Err(Error::GridTooLarge { required, cap });
    }
    Ok(())
}

fn slimness(sol: &AnnulusSolution) -> f64 {
    if sol.width > 0.0 {
        sol.outer_radius / sol.width
    } else {
        f64::INFINITY
    }
}

/// Shared orientation loop: `solve_at` evaluates one orientation.
fn orientation_search<F>(
    shape: &ConvexPolytope,
    cfg: &SolverConfig,
    eps: f64,
    start_f: f64,
    per_orientation: u128,
    mode: SolveMode,
    solve_at: F,
) -> Result<AnnulusSolution>
where
    F: Fn(&ConvexPolytope, &Rotation) -> Result<AnnulusSolution> + Sync,
{
    let theta = shape.bottleneck_angle();
    let mut f_hat = start_f.max(1.0 + 1e-3);
    let mut evaluations = 0u64;
    for retry in 0..=cfg.max_retries {
        let grid = build_rotation_grid(shape.dim(), theta, f_hat, eps)?;
        check_cap(&grid, per_orientation, cfg.max_evaluations)?;
        if let Some(cap) = cfg.max_orientations.filter(|&cap| grid.len() > cap) {
            return Err(Error::GridTooLarge { required: grid.len(), cap });
        }
        let sols: Vec<AnnulusSolution> = (0..grid.len() as usize)
            .into_par_iter()
            .map(|i| {
                let rot = Rotation::from_angles(&grid.angles(i as u128));
                let mut sol = solve_at(&shape.rotate(&rot), &rot)?;
                sol.rotation = rot;
                Ok(sol)
            })
            .collect::<Result<_>>()?;
        evaluations += sols.iter().map(|s| s.evaluations).sum::<u64>();
        let radii: Vec<(f64, f64)> = sols.iter().map(|s| (s.inner_radius, s.outer_radius)).collect();
        let best = select_best(&radii);
        let mut sol = sols.into_iter().nth(best).expect("nonempty rotation grid");
        let achieved = slimness(&sol);
        if achieved <= f_hat || sol.width <= cfg.tolerance * (1.0 + sol.outer_radius) {
            sol.meta.mode = mode;
            sol.meta.f_hat = Some(f_hat);
            sol.meta.orientations = Some(grid.len() as u64);
            sol.meta.retries = Some(retry);
            sol.evaluations = evaluations;
            if shape.dim() > 2 {
                sol.meta.note =
                    Some(format!("orientations searched over the {}-angle planar-rotation subfamily", shape.dim() - 1));
            }
            return Ok(sol);
        }
        f_hat *= 2.0;
    }
    Err(Error::SlimnessDiverged { retries: cfg.max_retries, f_hat })
}

/// `(1+ε)`-approximate MWA under rotations and translations.
pub fn mwa_rigid(shape: &ConvexPolytope, s: &PointCloud, cfg: &SolverConfig) -> Result<AnnulusSolution> {
    cfg.validate()?;
    s.check_against(shape)?;
    let start = Instant::now();
    let xi = (1.0 + cfg.epsilon).sqrt() - 1.0;
    let inner_cfg = SolverConfig { epsilon: xi, ..cfg.clone() };
    with_threads(cfg.threads, || {
        let base = translation_unpooled(shape, s, &inner_cfg)?;
        let mut sol = if base.width <= cfg.tolerance * (1.0 + base.outer_radius) {
            let mut b = base;
            b.meta.orientations = Some(0);
            b.meta.retries = Some(0);
            b.meta.mode = SolveMode::Rigid;
            b
        } else {
            let per = base.evaluations.max(1) as u128;
            orientation_search(shape, cfg, xi, slimness(&base), per, SolveMode::Rigid, |rotated, _| {
                translation_unpooled(rotated, s, &inner_cfg)
            })?
        };
        sol.epsilon = cfg.epsilon;
        sol.elapsed = start.elapsed();
        Ok(sol)
    })
}

/// `(1+ε)`-approximate MWA under rotations about the fixed `center`.
pub fn mwa_rotation_only(
    shape: &ConvexPolytope,
    s: &PointCloud,
    center: &[f64],
    cfg: &SolverConfig,
) -> Result<AnnulusSolution> {
    cfg.validate()?;
    s.check_against(shape)?;
    let start = Instant::now();
    with_threads(cfg.threads, || {
        let base = annulus_at(shape, s, center)?;
        let mut sol = if base.width <= cfg.tolerance * (1.0 + base.outer_radius) {
            let mut b = base;
            b.meta.orientations = Some(0);
            b.meta.retries = Some(0);
            b.meta.mode = SolveMode::RotationOnly;
            b
        } else {
            orientation_search(shape, cfg, cfg.epsilon, slimness(&base), 1, SolveMode::RotationOnly, |rotated, _| {
                annulus_at(rotated, s, center)
            })?
        };
        sol.epsilon = cfg.epsilon;
        sol.elapsed = start.elapsed();
        Ok(sol)
    })
}
