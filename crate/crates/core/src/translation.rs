//! Translation-only `(1+ε)`-approximation of the minimum-width annulus.
//!
//! The MinBall center gives a constant-factor solution of width `w`; the optimum center lies
//! within `w·C` of it, so a cube grid over the bounding cube of `c + w·C`, fine enough that
//! every point is `(εw/(2b))`-close to a node, contains a `(1+ε)`-approximate center.

use crate::annulus::{annulus_at, radii_at, AnnulusSolution, PointCloud, SolveMode};
use crate::error::{Error, Result};
use crate::lp::{self, ConstraintSet};
use crate::minball::minball;
use crate::planar;
use crate::polytope::ConvexPolytope;
use rayon::prelude::*;
use std::time::Instant;

/// Largest grid the solvers will enumerate.
pub const MAX_GRID_POINTS: u128 = 1 << 31;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub epsilon: f64,
    pub seed: u64,
    /// Worker threads; `0` uses the ambient rayon pool.
    pub threads: usize,
    pub tolerance: f64,
    /// Overrides the approximation constant `b` of the constant-factor step.
    pub force_b: Option<f64>,
    /// 2D grids switch to the slab sweep once `n · gridpoints` exceeds this.
    pub crossover: u64,
    /// Cap on orientation × gridpoint evaluations for the rotation solvers.
    pub max_evaluations: u128,
    /// Optional cap on the number of orientations per rotation grid.
    pub max_orientations: Option<u128>,
    pub max_retries: usize,
    /// Report whether the returned center lies in the convex hull of the sample.
    pub hull_check: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            seed: 0,
            threads: 0,
            tolerance: 1e-9,
            force_b: None,
            crossover: 100_000,
            max_evaluations: 10_000_000,
            max_orientations: None,
            max_retries: 6,
            hull_check: false,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self { epsilon, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter("tolerance must be nonnegative".into()));
        }
        if let Some(b) = self.force_b {
            if !(b >= 1.0) {
                return Err(Error::InvalidParameter(format!("b must be >= 1, got {b}")));
            }
        }
        Ok(())
    }
}

/// Runs `f` on a pool with `threads` workers (`0`: the ambient pool).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridDiagnostics {
    pub w: f64,
    pub b: f64,
    /// Side of the enclosing cube of `C` over side of its largest enclosed cube.
    pub f_cube: f64,
}

/// Uniform cube lattice `origin + spacing·(i_0, ..., i_{d-1})`, `0 <= i_j < points_per_axis`.
/// Linear indices order nodes lexicographically with `i_0` most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationGrid {
    pub origin: Vec<f64>,
    pub spacing: f64,
    pub points_per_axis: usize,
    pub diagnostics: GridDiagnostics,
}

impl TranslationGrid {
    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-axis indices of node `idx`.
    pub fn indices(&self, mut idx: usize) -> Vec<usize> {
        let k = self.points_per_axis;
        let mut out = vec![0; self.dim()];
        for j in (0..self.dim()).rev() {
            out[j] = idx % k;
            idx /= k;
        }
        out
    }

    #[inline]
    pub fn write_point(&self, mut idx: usize, out: &mut [f64]) {
        let k = self.points_per_axis;
        for j in (0..self.dim()).rev() {
            out[j] = self.origin[j] + self.spacing * (idx % k) as f64;
            idx /= k;
        }
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.dim()];
        self.write_point(idx, &mut p);
        p
    }
}

/// Grid over the bounding cube of `c + w·C` with node spacing derived from `εw/(2b)`.
pub fn build_translation_grid(
    shape: &ConvexPolytope,
    center: &[f64],
    w: f64,
    epsilon: f64,
    b: f64,
) -> Result<TranslationGrid> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidParameter(format!("grid scale w must be positive, got {w}")));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !(b >= 1.0 && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("b must be >= 1, got {b}")));
    }
    let t = epsilon * w / (2.0 * b);
    let inner = shape.largest_enclosed_cube();
    let cube_spacing = t * inner.side();
    // Two-way closeness of a node rounded per axis is (spacing/2)·K; keep it within 2t.
    let closeness_spacing = 4.0 * t / shape.corner_round_trip();
    let spacing = cube_spacing.min(closeness_spacing);
    let q = shape.smallest_enclosing_cube(center, w);
    let per_axis = (q.side() / spacing).ceil() as usize + 1;
    let per_axis = per_axis.max(2);
    let total = (per_axis as u128).checked_pow(shape.dim() as u32).unwrap_or(u128::MAX);
    if total > MAX_GRID_POINTS {
        return Err(Error::InvalidParameter(format!("grid of {total} nodes is too large")));
    }
    let unit = shape.smallest_enclosing_cube(&vec![0.0; shape.dim()], 1.0);
    Ok(TranslationGrid {
        origin: q.center.iter().map(|x| x - q.half_side).collect(),
        spacing,
        points_per_axis: per_axis,
        diagnostics: GridDiagnostics { w, b, f_cube: unit.half_side / inner.half_side },
    })
}

/// Index of the best node: smallest width, ties (within `1e-12` relative) to the smaller
/// index. `radii[i] = (inner, outer)`.
pub fn select_best(radii: &[(f64, f64)]) -> usize {
    let (mut best, mut best_w) = (0, f64::INFINITY);
    for (i, &(r, big_r)) in radii.iter().enumerate() {
        let w = big_r - r;
        if w < best_w {
            best = i;
            best_w = w;
        }
    }
    let tie = 1e-12 * radii[best].1.max(1.0);
    radii.iter().position(|&(r, big_r)| big_r - r <= best_w + tie).unwrap_or(best)
}

/// `(inner, outer)` radius at every node, by direct evaluation.
pub fn grid_radii(shape: &ConvexPolytope, s: &PointCloud, grid: &TranslationGrid) -> Vec<(f64, f64)> {
    (0..grid.len())
        .into_par_iter()
        .map_init(
            || vec![0.0; grid.dim()],
            |buf, i| {
                grid.write_point(i, buf);
                radii_at(shape, s, buf)
            },
        )
        .collect()
}

fn solution_at_node(
    shape: &ConvexPolytope,
    s: &PointCloud,
    grid: &TranslationGrid,
    idx: usize,
) -> Result<AnnulusSolution> {
    let mut sol = annulus_at(shape, s, &grid.point(idx))?;
    sol.evaluations = grid.len() as u64;
    sol.meta.grid_index = Some(idx);
    sol.meta.mode = SolveMode::Translation;
    Ok(sol)
}

/// Best node of `grid` by evaluating `annulus_at` everywhere.
pub fn evaluate_grid(shape: &ConvexPolytope, s: &PointCloud, grid: &TranslationGrid) -> Result<AnnulusSolution> {
    s.check_against(shape)?;
    let radii = grid_radii(shape, s, grid);
    solution_at_node(shape, s, grid, select_best(&radii))
}

/// MWA about the MinBall center.
pub fn constant_factor_mwa(shape: &ConvexPolytope, s: &PointCloud, seed: u64) -> Result<AnnulusSolution> {
    let ball = minball(shape, s, seed)?;
    annulus_at(shape, s, &ball.center)
}

fn search_grid(
    shape: &ConvexPolytope,
    s: &PointCloud,
    grid: &TranslationGrid,
    cfg: &SolverConfig,
) -> Result<AnnulusSolution> {
    let work = (s.len() as u128) * (grid.len() as u128);
    if shape.dim() == 2 && work > cfg.crossover as u128 {
        let tables = planar::build_facet_tables(shape, s, grid)?;
        let radii = planar::sweep_radii(shape, grid, &tables);
        solution_at_node(shape, s, grid, select_best(&radii))
    } else {
        evaluate_grid(shape, s, grid)
    }
}

/// Translation-only `(1+ε)`-approximate MWA.
pub fn mwa_translation(shape: &ConvexPolytope, s: &PointCloud, cfg: &SolverConfig) -> Result<AnnulusSolution> {
    cfg.validate()?;
    s.check_against(shape)?;
    with_threads(cfg.threads, || translation_unpooled(shape, s, cfg))
}

pub(crate) fn translation_unpooled(
    shape: &ConvexPolytope,
    s: &PointCloud,
    cfg: &SolverConfig,
) -> Result<AnnulusSolution> {
    let start = Instant::now();
    let base = constant_factor_mwa(shape, s, cfg.seed)?;
    let center = base.center.clone();
    let zero = |w: f64, outer: f64| w <= cfg.tolerance * (1.0 + outer);
    let finish = |mut sol: AnnulusSolution, b: Option<f64>, evaluations: u64| {
        sol.epsilon = cfg.epsilon;
        sol.evaluations = evaluations;
        sol.meta.mode = SolveMode::Translation;
        sol.meta.b_used = b;
        if cfg.hull_check && !center_in_hull(s, &sol.center) {
            sol.meta.note = Some("center outside the convex hull of the sample".into());
        }
        sol.elapsed = start.elapsed();
        sol
    };
    if zero(base.width, base.outer_radius) {
        return Ok(finish(base, None, 1));
    }
    let mut evaluations = 0u64;
    let (w, b) = if let Some(b) = cfg.force_b {
        (base.width, b)
    } else if shape.is_centrally_symmetric() {
        (base.width, 2.0)
    } else {
        let boot_b = shape.asymmetry_constant() + 1.0;
        let grid = build_translation_grid(shape, &center, base.width, 1.0, boot_b)?;
        let boot = search_grid(shape, s, &grid, cfg)?;
        evaluations += grid.len() as u64;
        if zero(boot.width, boot.outer_radius) {
            return Ok(finish(boot, Some(boot_b), evaluations));
        }
        (boot.width, 2.0)
    };
    let grid = build_translation_grid(shape, &center, w, cfg.epsilon, b)?;
    let sol = search_grid(shape, s, &grid, cfg)?;
    evaluations += grid.len() as u64;
    Ok(finish(sol, Some(b), evaluations))
}

/// Whether `c` lies in the convex hull of `s` (within `1e-9` of the sample extent).
pub fn center_in_hull(s: &PointCloud, c: &[f64]) -> bool {
    // Looks for a direction u with u·(p - c) <= -t < 0 for all p.
    struct Separator<'a> {
        s: &'a PointCloud,
        c: &'a [f64],
        scale: f64,
    }
    impl ConstraintSet for Separator<'_> {
        fn dim(&self) -> usize {
            self.c.len() + 1
        }
        fn len(&self) -> usize {
            self.s.len()
        }
        fn row(&self, k: usize, a: &mut [f64]) -> f64 {
            let p = self.s.point(k);
            a[0] = -1.0;
            for j in 0..self.c.len() {
                a[j + 1] = (p[j] - self.c[j]) / self.scale;
            }
            0.0
        }
    }
    let scale = s
        .iter()
        .map(|p| p.iter().zip(c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(f64::MIN_POSITIVE, f64::max);
    let sep = Separator { s, c, scale };
    match lp::lexmin(&sep, 1.0, 0) {
        Some(x) => x[0] >= -1e-9,
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn square_grid_example() {
        let g = build_translation_grid(&shapes::square(), &[0.0, 0.0], 1.0, 0.5, 2.0).unwrap();
        assert_eq!(g.spacing, 0.25);
        assert_eq!(g.points_per_axis, 9);
        assert_eq!(g.len(), 81);
        assert_eq!(g.origin, vec![-1.0, -1.0]);
        assert_eq!(g.diagnostics.f_cube, 1.0);
    }

    #[test]
    fn halving_epsilon_doubles_resolution() {
        for shape in [shapes::square(), shapes::triangle_t(), shapes::hexagon()] {
            let a = build_translation_grid(&shape, &[0.3, 0.1], 2.0, 0.2, 2.0).unwrap();
            let b = build_translation_grid(&shape, &[0.3, 0.1], 2.0, 0.1, 2.0).unwrap();
            let expect = 2 * (a.points_per_axis - 1) + 1;
            assert!((b.points_per_axis as i64 - expect as i64).abs() <= 1);
        }
    }

    #[test]
    fn grid_parameter_errors() {
        let sq = shapes::square();
        assert!(matches!(build_translation_grid(&sq, &[0.0, 0.0], 0.0, 0.5, 2.0), Err(Error::InvalidParameter(_))));
        assert!(build_translation_grid(&sq, &[0.0, 0.0], 1.0, 0.0, 2.0).is_err());
        assert!(build_translation_grid(&sq, &[0.0, 0.0], 1.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn grid_indexing() {
        let g = build_translation_grid(&shapes::cube(), &[0.0; 3], 1.0, 1.0, 2.0).unwrap();
        let k = g.points_per_axis;
        let idx = 2 * k * k + k + 3;
        assert_eq!(g.indices(idx), vec![2, 1, 3]);
        let p = g.point(idx);
        assert_eq!(p[0], g.origin[0] + 2.0 * g.spacing);
        assert_eq!(p[2], g.origin[2] + 3.0 * g.spacing);
    }

    #[test]
    fn single_point_returns_first_node() {
        let s = PointCloud::new(2, vec![0.4, 0.2]).unwrap();
        let g = build_translation_grid(&shapes::triangle_t(), &[0.0, 0.0], 1.0, 0.5, 2.0).unwrap();
        let sol = evaluate_grid(&shapes::triangle_t(), &s, &g).unwrap();
        assert_eq!(sol.width, 0.0);
        assert_eq!(sol.meta.grid_index, Some(0));
        assert_eq!(sol.evaluations, g.len() as u64);
    }

    #[test]
    fn tie_breaking_prefers_smaller_index() {
        assert_eq!(select_best(&[(0.0, 2.0), (1.0, 2.0), (1.0, 2.0)]), 1);
        assert_eq!(select_best(&[(0.0, 1.0), (0.0, 1.0 + 1e-15)]), 0);
        assert_eq!(select_best(&[(0.0, 1.0 + 1e-15), (0.0, 1.0)]), 0);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::with_epsilon(0.0).validate().is_err());
        assert!(SolverConfig { force_b: Some(0.5), ..Default::default() }.validate().is_err());
        let s = PointCloud::new(2, vec![]).unwrap();
        assert!(matches!(mwa_translation(&shapes::square(), &s, &SolverConfig::default()), Err(Error::EmptyCloud)));
    }

    #[test]
    fn hull_membership() {
        let s = PointCloud::new(2, vec![0.0, 0.0, 2.0, 0.0, 0.0, 2.0]).unwrap();
        assert!(center_in_hull(&s, &[0.5, 0.5]));
        assert!(center_in_hull(&s, &[1.0, 1.0]));
        assert!(!center_in_hull(&s, &[1.5, 1.5]));
        assert!(!center_in_hull(&s, &[-0.1, 0.5]));
    }
}
