//! Fixed-center annulus evaluation: MinBall(c), MaxBall(c) and MWA(c).

use crate::error::{Error, Result};
use crate::polytope::{ConvexPolytope, Rotation};
use std::time::Duration;

/// `n` points in `R^d`, stored contiguously.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not form {dim}-dimensional points",
                coords.len()
            )));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(Self { dim, coords })
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            coords.extend_from_slice(p);
        }
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Copy containing the points at `indices`.
    pub fn subset(&self, indices: &[usize]) -> Self {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self { dim: self.dim, coords }
    }

    pub(crate) fn check_against(&self, c: &ConvexPolytope) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyCloud);
        }
        if self.dim != c.dim() {
            return Err(Error::DimensionMismatch { expected: c.dim(), got: self.dim });
        }
        Ok(())
    }
}

/// Which solver produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    Fixed,
    Translation,
    Rigid,
    RotationOnly,
}

impl SolveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMode::Fixed => "fixed",
            SolveMode::Translation => "translation",
            SolveMode::Rigid => "rigid",
            SolveMode::RotationOnly => "rotation-only",
        }
    }
}

/// Solver bookkeeping carried alongside an annulus.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveMeta {
    pub mode: SolveMode,
    pub b_used: Option<f64>,
    pub f_hat: Option<f64>,
    pub orientations: Option<u64>,
    pub retries: Option<usize>,
    /// Linear index of the winning grid node, when a grid was searched.
    pub grid_index: Option<usize>,
    pub note: Option<String>,
}

impl Default for SolveMeta {
    fn default() -> Self {
        Self {
            mode: SolveMode::Fixed,
            b_used: None,
            f_hat: None,
            orientations: None,
            retries: None,
            grid_index: None,
            note: None,
        }
    }
}

/// An annulus `(c + R·C) \ (c + r·C)` under some orientation of `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusSolution {
    pub center: Vec<f64>,
    pub rotation: Rotation,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub width: f64,
    pub epsilon: f64,
    pub evaluations: u64,
    pub elapsed: Duration,
    pub meta: SolveMeta,
}

impl AnnulusSolution {
    /// Concentric fatness `R / r` and slimness `R / width`.
    pub fn fatness_stats(&self) -> Result<(f64, f64)> {
        if self.width <= 0.0 || self.inner_radius <= 0.0 {
            return Err(Error::DegenerateAnnulus);
        }
        Ok((self.outer_radius / self.inner_radius, self.outer_radius / self.width))
    }
}

/// Inner and outer radius about `c`, one gauge evaluation per point.
pub fn radii_at(c: &ConvexPolytope, s: &PointCloud, center: &[f64]) -> (f64, f64) {
    s.iter().fold((f64::INFINITY, 0.0_f64), |(lo, hi), p| {
        let d = c.distance(center, p);
        (lo.min(d), hi.max(d))
    })
}

/// MinBall(c), MaxBall(c) and the width between them.
pub fn annulus_at(c: &ConvexPolytope, s: &PointCloud, center: &[f64]) -> Result<AnnulusSolution> {
    s.check_against(c)?;
    if center.len() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: center.len() });
    }
    let (r, big_r) = radii_at(c, s, center);
    Ok(AnnulusSolution {
        center: center.to_vec(),
        rotation: Rotation::identity(c.dim()),
        inner_radius: r,
        outer_radius: big_r,
        width: big_r - r,
        epsilon: 0.0,
        evaluations: 1,
        elapsed: Duration::ZERO,
        meta: SolveMeta::default(),
    })
}

/// `(F_c, f)` of a solution; the reciprocal identity `1/f = 1 - 1/F_c` holds.
pub fn fatness_stats(sol: &AnnulusSolution) -> Result<(f64, f64)> {
    sol.fatness_stats()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn cloud(pts: &[[f64; 2]]) -> PointCloud {
        PointCloud::from_points(2, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn square_example() {
        let s = cloud(&[[1.0, 0.0], [0.0, 3.0], [-2.0, 2.0]]);
        let a = annulus_at(&shapes::square(), &s, &[0.0, 0.0]).unwrap();
        assert_eq!((a.inner_radius, a.outer_radius, a.width), (1.0, 3.0, 2.0));
    }

    #[test]
    fn single_point_has_zero_width() {
        let t = shapes::triangle_t();
        let s = cloud(&[[0.3, -0.4]]);
        let a = annulus_at(&t, &s, &[0.1, 0.1]).unwrap();
        assert_eq!(a.width, 0.0);
        assert_eq!(a.inner_radius, t.distance(&[0.1, 0.1], &[0.3, -0.4]));
    }

    #[test]
    fn triangle_example() {
        let s = cloud(&[[1.0, 1.0], [-2.0, -2.0]]);
        let a = annulus_at(&shapes::triangle_t(), &s, &[0.0, 0.0]).unwrap();
        assert!((a.inner_radius - 1.0).abs() < 1e-15);
        assert!((a.outer_radius - 6.0).abs() < 1e-15);
        assert!((a.width - 5.0).abs() < 1e-15);
    }

    #[test]
    fn empty_and_mismatched_clouds() {
        let empty = PointCloud::new(2, vec![]).unwrap();
        assert!(matches!(annulus_at(&shapes::square(), &empty, &[0.0, 0.0]), Err(Error::EmptyCloud)));
        let s3 = PointCloud::new(3, vec![0.0; 3]).unwrap();
        assert!(matches!(annulus_at(&shapes::square(), &s3, &[0.0, 0.0]), Err(Error::DimensionMismatch { .. })));
    }

    fn with_radii(r: f64, big_r: f64) -> AnnulusSolution {
        let mut a = annulus_at(&shapes::square(), &cloud(&[[1.0, 0.0]]), &[0.0, 0.0]).unwrap();
        a.inner_radius = r;
        a.outer_radius = big_r;
        a.width = big_r - r;
        a
    }

    #[test]
    fn fatness_examples() {
        let (fc, f) = fatness_stats(&with_radii(1.0, 2.0)).unwrap();
        assert_eq!((fc, f), (2.0, 2.0));
        assert!((1.0 / f - (1.0 - 1.0 / fc)).abs() < 1e-15);
        let (fc, f) = fatness_stats(&with_radii(9.0, 10.0)).unwrap();
        assert!((fc - 10.0 / 9.0).abs() < 1e-15 && (f - 10.0).abs() < 1e-12);
        assert!(matches!(fatness_stats(&with_radii(0.0, 1.0)), Err(Error::DegenerateAnnulus)));
        assert!(matches!(fatness_stats(&with_radii(1.0, 1.0)), Err(Error::DegenerateAnnulus)));
    }
}
