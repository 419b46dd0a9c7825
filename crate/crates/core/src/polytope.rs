//! The reference polytope `C` and the convex distance function it induces.
//!
//! `C` is stored in both representations: vertices and halfspaces `normal · x <= offset`
//! with `offset > 0` (the origin is strictly interior). Normals are kept unnormalized; the
//! gauge divides by the offset.

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm, null_vector, rank};
use crate::lp::{self, ConstraintSet};
use serde::{Deserialize, Serialize};

/// Relative tolerance used for incidence and validity checks.
pub const SHAPE_TOL: f64 = 1e-9;

/// Closed halfspace `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    incidence: Vec<Vec<usize>>,
    /// For 2D only: facet `i` runs counterclockwise from `edges[i].0` to `edges[i].1`.
    edges: Vec<(usize, usize)>,
}

/// Axis-aligned cube `center ± half_side`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cube {
    pub center: Vec<f64>,
    pub half_side: f64,
}

impl Cube {
    pub fn side(&self) -> f64 {
        2.0 * self.half_side
    }
}

/// Orientation given by `d - 1` planar rotation angles.
///
/// The operator composes Givens rotations in the coordinate planes `(0,1), (1,2), ...,
/// (d-2, d-1)`, the first angle applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    angles: Vec<f64>,
    matrix: Vec<f64>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        Self::from_angles(&vec![0.0; dim - 1])
    }

    /// Builds the operator; angles are reduced into `[0, 2π)`.
    pub fn from_angles(angles: &[f64]) -> Self {
        let dim = angles.len() + 1;
        let angles: Vec<f64> = angles.iter().map(|a| a.rem_euclid(std::f64::consts::TAU)).collect();
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        for (k, &a) in angles.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let mut g = vec![0.0; dim * dim];
            for i in 0..dim {
                g[i * dim + i] = 1.0;
            }
            let (s, c) = a.sin_cos();
            g[k * dim + k] = c;
            g[k * dim + k + 1] = -s;
            g[(k + 1) * dim + k] = s;
            g[(k + 1) * dim + k + 1] = c;
            matrix = linalg::matmul(&g, &matrix, dim);
        }
        Self { angles, matrix }
    }

    pub fn dim(&self) -> usize {
        self.angles.len() + 1
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Row-major orthogonal matrix.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.angles.iter().all(|&a| a == 0.0)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d).map(|i| dot(&self.matrix[i * d..(i + 1) * d], v)).collect()
    }

    pub fn apply_inverse(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d).map(|j| (0..d).map(|i| self.matrix[i * d + j] * v[i]).sum()).collect()
    }
}

fn scale_of(points: &[Vec<f64>]) -> f64 {
    points.iter().map(|p| linalg::norm_inf(p)).fold(1.0, f64::max)
}

fn affine_rank(points: &[Vec<f64>], dim: usize) -> usize {
    if points.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<f64>> = points[1..].iter().map(|p| linalg::sub(p, &points[0])).collect();
    rank(&rows, dim, 1e-10)
}

impl ConvexPolytope {
    /// Builds the hull of `points` in both representations (`dim <= 3`).
    pub fn from_vertices(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidPolytope(format!("dimension {dim} < 2")));
        }
        if dim > 3 {
            return Err(Error::DimensionTooHigh { dim });
        }
        check_points(dim, points)?;
        if points.len() < dim + 1 || affine_rank(points, dim) < dim {
            return Err(Error::DegenerateShape { dim });
        }
        let (vertices, facets) = if dim == 2 { hull_2d(points) } else { hull_brute(dim, points) };
        let scale = scale_of(&vertices);
        if facets.iter().any(|f| f.offset <= 1e-12 * scale * norm(&f.normal)) {
            return Err(Error::OriginNotInterior);
        }
        Self::assemble(dim, vertices, facets)
    }

    /// Builds from both representations, validating that they describe the same polytope.
    pub fn from_parts(dim: usize, vertices: Vec<Vec<f64>>, facets: Vec<Facet>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidPolytope(format!("dimension {dim} < 2")));
        }
        check_points(dim, &vertices)?;
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: f.normal.len() });
            }
            if !f.offset.is_finite() || f.normal.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPolytope(format!("facet {i} is not finite")));
            }
            if norm(&f.normal) == 0.0 {
                return Err(Error::InvalidPolytope(format!("facet {i} has a zero normal")));
            }
            if f.offset <= 0.0 {
                return Err(Error::OriginNotInterior);
            }
        }
        if vertices.len() < dim + 1 || affine_rank(&vertices, dim) < dim {
            return Err(Error::DegenerateShape { dim });
        }
        if facets.len() < dim + 1 {
            return Err(Error::InvalidPolytope(format!("{} facets, need at least {}", facets.len(), dim + 1)));
        }
        let vertices = if dim == 2 { sort_ccw(vertices) } else { vertices };
        Self::assemble(dim, vertices, facets)
    }

    fn assemble(dim: usize, vertices: Vec<Vec<f64>>, facets: Vec<Facet>) -> Result<Self> {
        let incidence: Vec<Vec<usize>> = vertices
            .iter()
            .map(|v| {
                facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| (dot(&f.normal, v) - f.offset).abs() <= SHAPE_TOL * f.offset.abs().max(1.0))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut poly = Self { dim, vertices, facets, incidence, edges: Vec::new() };
        for (i, v) in poly.vertices.iter().enumerate() {
            let g = poly.gauge(v);
            if (g - 1.0).abs() > SHAPE_TOL {
                return Err(Error::InvalidPolytope(format!("vertex {i} has gauge {g}, expected 1")));
            }
        }
        for (i, inc) in poly.incidence.iter().enumerate() {
            let normals: Vec<Vec<f64>> = inc.iter().map(|&f| poly.facets[f].normal.clone()).collect();
            if rank(&normals, dim, 1e-9) < dim {
                return Err(Error::InvalidPolytope(format!("vertex {i} is not a vertex of the halfspaces")));
            }
        }
        if dim == 2 {
            poly.edges = poly
                .facets
                .iter()
                .enumerate()
                .map(|(fi, _)| {
                    let on: Vec<usize> =
                        (0..poly.vertices.len()).filter(|&v| poly.incidence[v].contains(&fi)).collect();
                    (fi, on)
                })
                .map(|(fi, on)| {
                    if on.len() != 2 {
                        return Err(Error::InvalidPolytope(format!("edge {fi} touches {} vertices", on.len())));
                    }
                    let (a, b) = (on[0], on[1]);
                    let (va, vb) = (&poly.vertices[a], &poly.vertices[b]);
                    Ok(if va[0] * vb[1] - va[1] * vb[0] > 0.0 { (a, b) } else { (b, a) })
                })
                .collect::<Result<_>>()?;
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Indices of the facets whose hyperplane contains each vertex.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Counterclockwise `(start, end)` vertex indices of each 2D facet; empty for `dim > 2`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `max_i (normal_i · v) / offset_i`, clamped below at zero.
    #[inline]
    pub fn gauge(&self, v: &[f64]) -> f64 {
        self.facets.iter().map(|f| dot(&f.normal, v) / f.offset).fold(0.0, f64::max)
    }

    /// Convex distance `d_C(p, q) = gauge(q - p)`.
    #[inline]
    pub fn distance(&self, p: &[f64], q: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| {
                let s: f64 = f.normal.iter().zip(q.iter().zip(p)).map(|(n, (a, b))| n * (a - b)).sum();
                s / f.offset
            })
            .fold(0.0, f64::max)
    }

    /// The reflected body `-C`.
    pub fn reflect(&self) -> Self {
        let vertices: Vec<Vec<f64>> = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.iter().map(|x| -x).collect(), offset: f.offset })
            .collect();
        let edges = if self.dim == 2 { self.edges.clone() } else { Vec::new() };
        Self { dim: self.dim, vertices, facets, incidence: self.incidence.clone(), edges }
    }

    /// Rotated copy: vertices and normals mapped by the operator, offsets unchanged.
    pub fn rotate(&self, rot: &Rotation) -> Self {
        assert_eq!(rot.dim(), self.dim, "rotation dimension mismatch");
        if rot.is_identity() {
            return self.clone();
        }
        let vertices = self.vertices.iter().map(|v| rot.apply(v)).collect();
        let facets = self.facets.iter().map(|f| Facet { normal: rot.apply(&f.normal), offset: f.offset }).collect();
        Self { dim: self.dim, vertices, facets, incidence: self.incidence.clone(), edges: self.edges.clone() }
    }

    /// Copy scaled about the origin by `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vertices {
            v.iter_mut().for_each(|x| *x *= s);
        }
        for f in &mut out.facets {
            f.offset *= s;
        }
        out
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let tol = SHAPE_TOL * norm(v).max(1.0);
            self.vertices.iter().any(|w| v.iter().zip(w).map(|(a, b)| (a + b) * (a + b)).sum::<f64>().sqrt() <= tol)
        })
    }

    /// `A = max_v gauge(-v)` over the vertices; equals the largest ratio
    /// `gauge(-u) / gauge(u)` over all directions.
    pub fn asymmetry_constant(&self) -> f64 {
        self.vertices.iter().map(|v| self.gauge(&v.iter().map(|x| -x).collect::<Vec<_>>())).fold(1.0, f64::max)
    }

    /// Smallest angle between a vertex ray and the hyperplane of an incident facet.
    pub fn bottleneck_angle(&self) -> f64 {
        let mut theta = f64::INFINITY;
        for (v, inc) in self.vertices.iter().zip(&self.incidence) {
            let vn = norm(v);
            for &fi in inc {
                let n = &self.facets[fi].normal;
                let s = (dot(n, v) / (norm(n) * vn)).abs().min(1.0);
                theta = theta.min(s.asin());
            }
        }
        theta
    }

    /// Largest axis-aligned cube inside `C` (lexicographically smallest center among optima).
    pub fn largest_enclosed_cube(&self) -> Cube {
        struct CubeLp<'a>(&'a ConvexPolytope);
        impl ConstraintSet for CubeLp<'_> {
            fn dim(&self) -> usize {
                self.0.dim + 1
            }
            fn len(&self) -> usize {
                self.0.facets.len()
            }
            fn row(&self, k: usize, a: &mut [f64]) -> f64 {
                let f = &self.0.facets[k];
                a[0] = -f.normal.iter().map(|x| x.abs()).sum::<f64>();
                a[1..].copy_from_slice(&f.normal);
                f.offset
            }
        }
        let bound = 1e3 * scale_of(&self.vertices);
        let x = lp::lexmin(&CubeLp(self), bound, 0).expect("cube LP is feasible and bounded for a valid polytope");
        Cube { center: x[1..].to_vec(), half_side: -x[0] }
    }

    /// Bounding box of `center + scale·C`, widened symmetrically into a cube.
    pub fn smallest_enclosing_cube(&self, center: &[f64], scale: f64) -> Cube {
        let d = self.dim;
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for v in &self.vertices {
            for j in 0..d {
                let x = center[j] + scale * v[j];
                lo[j] = lo[j].min(x);
                hi[j] = hi[j].max(x);
            }
        }
        let half_side = (0..d).map(|j| 0.5 * (hi[j] - lo[j])).fold(0.0, f64::max);
        let center = (0..d).map(|j| 0.5 * (lo[j] + hi[j])).collect();
        Cube { center, half_side }
    }

    /// `max over sign vectors σ of gauge(σ) + gauge(-σ)`: bounds the two-way distance
    /// between a point and the grid node rounding it within half a cell per axis.
    pub fn corner_round_trip(&self) -> f64 {
        self.sign_vectors()
            .map(|s| {
                let neg: Vec<f64> = s.iter().map(|x| -x).collect();
                self.gauge(&s) + self.gauge(&neg)
            })
            .fold(0.0, f64::max)
    }

    /// `max over sign vectors σ of gauge(σ)`.
    pub fn corner_gauge(&self) -> f64 {
        self.sign_vectors().map(|s| self.gauge(&s)).fold(0.0, f64::max)
    }

    fn sign_vectors(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let d = self.dim;
        (0u32..(1 << d)).map(move |mask| (0..d).map(|j| if mask & (1 << j) != 0 { 1.0 } else { -1.0 }).collect())
    }
}

fn check_points(dim: usize, points: &[Vec<f64>]) -> Result<()> {
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPolytope("non-finite coordinate".into()));
        }
    }
    Ok(())
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counterclockwise order starting from the first input vertex.
fn sort_ccw(mut pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let Some(first) = pts.first().cloned() else { return pts };
    pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    let lead = pts.iter().position(|p| *p == first).unwrap_or(0);
    pts.rotate_left(lead);
    pts
}

/// Monotone chain; strictly convex corners only, counterclockwise.
fn hull_2d(points: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Facet>) {
    let mut pts: Vec<Vec<f64>> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let scale = scale_of(&pts);
    let eps = 1e-12 * scale * scale;
    let mut hull: Vec<Vec<f64>> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec<f64>>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross2(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    let facets = (0..hull.len())
        .map(|i| {
            let a = &hull[i];
            let b = &hull[(i + 1) % hull.len()];
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len = (dx * dx + dy * dy).sqrt();
            let normal = vec![dy / len, -dx / len];
            let offset = dot(&normal, a);
            Facet { normal, offset }
        })
        .collect();
    (hull, facets)
}

/// Facet enumeration over all `dim`-subsets; meant for small vertex sets.
fn hull_brute(dim: usize, points: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Facet>) {
    let n = points.len();
    let scale = scale_of(points);
    let tol = 1e-10 * scale;
    let mut facets: Vec<Facet> = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let rows: Vec<Vec<f64>> = idx[1..].iter().map(|&i| linalg::sub(&points[i], &points[idx[0]])).collect();
        if let Some(normal) = null_vector(&rows, dim) {
            let offset = dot(&normal, &points[idx[0]]);
            let side: Vec<f64> = points.iter().map(|p| dot(&normal, p) - offset).collect();
            let above = side.iter().any(|&s| s > tol);
            let below = side.iter().any(|&s| s < -tol);
            let facet = match (above, below) {
                (false, true) => Some(Facet { normal, offset }),
                (true, false) => Some(Facet { normal: normal.iter().map(|x| -x).collect(), offset: -offset }),
                _ => None,
            };
            if let Some(f) = facet {
                let dup = facets
                    .iter()
                    .any(|g| (dot(&g.normal, &f.normal) - 1.0).abs() < 1e-9 && (g.offset - f.offset).abs() < tol);
                if !dup {
                    facets.push(f);
                }
            }
        }
        // next combination
        let mut k = dim;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if idx[k] < n - dim + k {
                idx[k] += 1;
                for j in k + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                k = usize::MAX;
                break;
            }
        }
        if k != usize::MAX {
            break;
        }
    }
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for p in points {
        let normals: Vec<Vec<f64>> =
            facets.iter().filter(|f| (dot(&f.normal, p) - f.offset).abs() <= tol).map(|f| f.normal.clone()).collect();
        if rank(&normals, dim, 1e-9) == dim && !vertices.iter().any(|v| v == p) {
            vertices.push(p.clone());
        }
    }
    (vertices, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;
    use std::f64::consts::PI;

    #[test]
    fn gauge_examples() {
        let sq = shapes::square();
        assert_eq!(sq.gauge(&[3.0, 1.0]), 3.0);
        assert_eq!(sq.gauge(&[0.0, 0.0]), 0.0);
        let t = shapes::triangle_t();
        assert!((t.gauge(&[1.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!((t.gauge(&[-1.0, -1.0]) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn distance_is_asymmetric_for_triangle() {
        let t = shapes::triangle_t();
        assert!((t.distance(&[0.0, 0.0], &[1.0, 1.0]) - 1.0).abs() < 1e-15);
        assert!((t.distance(&[1.0, 1.0], &[0.0, 0.0]) - 3.0).abs() < 1e-15);
        assert_eq!(t.distance(&[0.3, 0.2], &[0.3, 0.2]), 0.0);
        let ab = t.distance(&[0.0, 0.0], &[0.5, 0.5]);
        let bc = t.distance(&[0.5, 0.5], &[1.0, 1.0]);
        assert!((ab + bc - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_from_corners() {
        let sq = shapes::square();
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.facets().len(), 4);
        for f in sq.facets() {
            assert!((norm(&f.normal) - 1.0).abs() < 1e-15);
            assert!((f.offset - 1.0).abs() < 1e-15);
            assert_eq!(f.normal.iter().filter(|x| x.abs() == 1.0).count(), 1);
        }
    }

    #[test]
    fn triangle_facets_match_up_to_scaling() {
        let t = shapes::triangle_t();
        let expected = [([0.0, 1.0], 1.0), ([2.0, -1.0], 1.0), ([-2.0, -1.0], 1.0)];
        assert_eq!(t.facets().len(), 3);
        for (n, b) in expected {
            assert!(t.facets().iter().any(|f| {
                let s = f.offset / b;
                (f.normal[0] - s * n[0]).abs() < 1e-12 && (f.normal[1] - s * n[1]).abs() < 1e-12
            }));
        }
    }

    #[test]
    fn construction_errors() {
        let col = vec![vec![0.0, 1.0], vec![0.0, 2.0], vec![0.0, 3.0]];
        assert!(matches!(ConvexPolytope::from_vertices(2, &col), Err(Error::DegenerateShape { .. })));
        let off = vec![vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 2.0]];
        assert!(matches!(ConvexPolytope::from_vertices(2, &off), Err(Error::OriginNotInterior)));
        let pts4 = vec![vec![1.0; 4], vec![-1.0; 4]];
        assert!(matches!(ConvexPolytope::from_vertices(4, &pts4), Err(Error::DimensionTooHigh { dim: 4 })));
        // origin on the boundary
        let edge = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(matches!(ConvexPolytope::from_vertices(2, &edge), Err(Error::OriginNotInterior)));
    }

    #[test]
    fn interior_points_are_dropped() {
        let pts =
            vec![vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0], vec![0.2, 0.1], vec![1.0, 0.0]];
        let p = ConvexPolytope::from_vertices(2, &pts).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn hull_3d_cube_and_tetrahedron() {
        let cube = shapes::cube();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.facets().len(), 6);
        for inc in cube.incidence() {
            assert_eq!(inc.len(), 3);
        }
        let tet = shapes::tetrahedron();
        assert_eq!(tet.facets().len(), 4);
        assert!(!tet.is_centrally_symmetric());
    }

    #[test]
    fn reflect_examples() {
        let sq = shapes::square();
        let r = sq.reflect();
        for v in r.vertices() {
            assert!(sq.vertices().contains(v));
        }
        let t = shapes::triangle_t();
        let rt = t.reflect();
        let mut vs: Vec<Vec<f64>> = rt.vertices().to_vec();
        vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(vs, vec![vec![-1.0, -1.0], vec![0.0, 1.0], vec![1.0, -1.0]]);
        assert_eq!(rt.reflect(), t);
        for u in [[0.3, -0.7], [2.0, 1.0], [-1.0, 0.5]] {
            let neg = [-u[0], -u[1]];
            assert!((rt.gauge(&u) - t.gauge(&neg)).abs() < 1e-15);
        }
    }

    #[test]
    fn rotate_examples() {
        let t = shapes::triangle_t();
        assert_eq!(t.rotate(&Rotation::identity(2)), t);
        let sq = shapes::square().rotate(&Rotation::from_angles(&[PI / 2.0]));
        for v in sq.vertices() {
            assert!(shapes::square()
                .vertices()
                .iter()
                .any(|w| (w[0] - v[0]).abs() < 1e-12 && (w[1] - v[1]).abs() < 1e-12));
        }
        let rt = t.rotate(&Rotation::from_angles(&[PI]));
        assert!(rt.vertices().iter().any(|v| (v[0] + 1.0).abs() < 1e-12 && (v[1] + 1.0).abs() < 1e-12));
        assert!((rt.gauge(&[-1.0, -1.0]) - 1.0).abs() < 1e-12);
        // gauge_rotated(v) = gauge(R^-1 v)
        let rot = Rotation::from_angles(&[0.7]);
        let rt = t.rotate(&rot);
        let v = [0.4, -1.3];
        assert!((rt.gauge(&v) - t.gauge(&rot.apply_inverse(&v))).abs() < 1e-12);
    }

    #[test]
    fn rotation_operator() {
        let r = Rotation::from_angles(&[PI / 2.0]);
        let v = r.apply(&[1.0, 0.0]);
        assert!(v[0].abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
        let id = Rotation::from_angles(&[0.0, 0.0]);
        assert_eq!(id.apply(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, 3.0]);
        // d = 3, (π/2, π/2): explicit product G2·G1
        let r = Rotation::from_angles(&[PI / 2.0, PI / 2.0]);
        let g1 = [0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0];
        let g2 = [1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0];
        let expected = linalg::matmul(&g2, &g1, 3);
        for (a, b) in r.matrix().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let rtr = {
            let m = r.matrix();
            let mut t = vec![0.0; 9];
            for i in 0..3 {
                for j in 0..3 {
                    t[i * 3 + j] = m[j * 3 + i];
                }
            }
            linalg::matmul(&t, m, 3)
        };
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((rtr[i * 3 + j] - e).abs() < 1e-12);
            }
        }
        let r = Rotation::from_angles(&[-0.5]);
        assert!(r.angles()[0] >= 0.0 && r.angles()[0] < 2.0 * PI);
    }

    #[test]
    fn asymmetry_examples() {
        assert!((shapes::square().asymmetry_constant() - 1.0).abs() < 1e-12);
        assert!((shapes::hexagon().asymmetry_constant() - 1.0).abs() < 1e-12);
        assert!((shapes::triangle_t().asymmetry_constant() - 3.0).abs() < 1e-12);
        assert!(shapes::square().is_centrally_symmetric());
        assert!(shapes::hexagon().is_centrally_symmetric());
        assert!(!shapes::triangle_t().is_centrally_symmetric());
    }

    #[test]
    fn bottleneck_examples() {
        assert!((shapes::square().bottleneck_angle() - PI / 4.0).abs() < 1e-12);
        assert!((shapes::hexagon().bottleneck_angle() - PI / 3.0).abs() < 1e-9);
        let expect = (1.0 / 10f64.sqrt()).asin();
        assert!((shapes::triangle_t().bottleneck_angle() - expect).abs() < 1e-9);
        assert!((expect - 0.32175).abs() < 1e-5);
    }

    #[test]
    fn bottleneck_matches_planar_triangle_angles() {
        for c in [shapes::square(), shapes::hexagon(), shapes::triangle_t()] {
            let theta = c.bottleneck_angle();
            let mut min_angle = f64::INFINITY;
            for &(a, b) in c.edges() {
                for (v, u) in [(a, b), (b, a)] {
                    let v = &c.vertices()[v];
                    let u = &c.vertices()[u];
                    // interior angle at v of triangle (origin, v, u)
                    let to_o: Vec<f64> = v.iter().map(|x| -x).collect();
                    let to_u = linalg::sub(u, v);
                    let cos = dot(&to_o, &to_u) / (norm(&to_o) * norm(&to_u));
                    let ang = cos.clamp(-1.0, 1.0).acos();
                    assert!(ang >= theta - 1e-12);
                    min_angle = min_angle.min(ang);
                }
            }
            assert!((min_angle - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn enclosed_cube_examples() {
        let q = shapes::square().largest_enclosed_cube();
        assert!((q.half_side - 1.0).abs() < 1e-12 && q.center.iter().all(|x| x.abs() < 1e-12));
        let t = shapes::triangle_t();
        let q = t.largest_enclosed_cube();
        assert!((q.half_side - 0.5).abs() < 1e-12, "{q:?}");
        assert!(q.center[0].abs() < 1e-12 && (q.center[1] - 0.5).abs() < 1e-12);
        let q3 = t.scaled(3.0).largest_enclosed_cube();
        assert!((q3.half_side - 1.5).abs() < 1e-12);
        // feasibility and maximality
        for c in [shapes::hexagon(), t.clone(), shapes::tetrahedron(), shapes::cube()] {
            let q = c.largest_enclosed_cube();
            let viol = |h: f64| {
                c.facets()
                    .iter()
                    .map(|f| dot(&f.normal, &q.center) + h * f.normal.iter().map(|x| x.abs()).sum::<f64>() - f.offset)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            assert!(viol(q.half_side) <= 1e-9);
            assert!(viol(q.half_side + 1e-6) > 0.0);
        }
    }

    #[test]
    fn enclosing_cube_examples() {
        let q = shapes::square().smallest_enclosing_cube(&[0.0, 0.0], 1.0);
        assert_eq!(q.half_side, 1.0);
        let q = shapes::triangle_t().smallest_enclosing_cube(&[0.0, 0.0], 1.0);
        assert_eq!((q.half_side, q.center.clone()), (1.0, vec![0.0, 0.0]));
        let q = shapes::triangle_t().smallest_enclosing_cube(&[2.0, 3.0], 0.0);
        assert_eq!((q.half_side, q.center.clone()), (0.0, vec![2.0, 3.0]));
    }

    #[test]
    fn parts_constructor_validates() {
        let sq = shapes::square();
        let p = ConvexPolytope::from_parts(2, sq.vertices().to_vec(), sq.facets().to_vec()).unwrap();
        assert_eq!(p.gauge(&[0.5, -2.0]), 2.0);
        let mut bad = sq.facets().to_vec();
        bad[0].offset = 2.0;
        assert!(ConvexPolytope::from_parts(2, sq.vertices().to_vec(), bad).is_err());
    }
}
