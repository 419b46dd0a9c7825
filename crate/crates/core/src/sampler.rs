//! Instance generation: dense boundary samples of a posed polytope with radial noise.
//!
//! A sample is `δ`-uniform when every point of the posed boundary has a sample within
//! Euclidean distance `δ`. The ground truth returned with each cloud is the bookkeeping of
//! what was emitted (exact min/max gauge about the generating pose), not a bound derived
//! from the noise parameters.

use crate::annulus::PointCloud;
use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm};
use crate::polytope::{ConvexPolytope, Rotation, SHAPE_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub shape: ConvexPolytope,
    pub translation: Vec<f64>,
    pub rotation: Rotation,
    pub scale: f64,
    /// Sampling density in posed (Euclidean) units.
    pub delta: f64,
    /// Radial noise: each sample's gauge is drawn from `[1 - band, 1 + band]`.
    pub band: f64,
    pub seed: u64,
}

/// Pose and exact annulus of a generated cloud about the generating center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub center: Vec<f64>,
    pub rotation_angles: Vec<f64>,
    pub scale: f64,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub width: f64,
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub cloud: PointCloud,
    pub truth: GroundTruth,
    /// Samples in the relative interior of each facet.
    pub facet_interior_counts: Vec<usize>,
}

impl GeneratorSpec {
    pub fn new(shape: ConvexPolytope, delta: f64, band: f64, seed: u64) -> Self {
        let dim = shape.dim();
        Self { shape, translation: vec![0.0; dim], rotation: Rotation::identity(dim), scale: 1.0, delta, band, seed }
    }

    fn validate(&self) -> Result<()> {
        let d = self.shape.dim();
        if d > 3 {
            return Err(Error::InvalidParameter(format!("sampling supports d <= 3, got {d}")));
        }
        if self.translation.len() != d || self.rotation.dim() != d {
            return Err(Error::InvalidParameter("pose dimension does not match the shape".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {}", self.scale)));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("delta must be positive, got {}", self.delta)));
        }
        if !(0.0..1.0).contains(&self.band) {
            return Err(Error::InvalidParameter(format!("band must lie in [0, 1), got {}", self.band)));
        }
        Ok(())
    }

    /// Posed image of a point given in model coordinates.
    pub fn pose(&self, x: &[f64]) -> Vec<f64> {
        let r = self.rotation.apply(x);
        r.iter().zip(&self.translation).map(|(a, t)| t + self.scale * a).collect()
    }

    /// The posed reference shape (rotated, unscaled) that defines the gauge about the pose.
    pub fn posed_shape(&self) -> ConvexPolytope {
        self.shape.rotate(&self.rotation)
    }
}

/// Vertices of facet `fi`, ordered around the facet (3D) or as the edge (2D).
pub fn facet_polygon(shape: &ConvexPolytope, fi: usize) -> Vec<Vec<f64>> {
    if shape.dim() == 2 {
        let (a, b) = shape.edges()[fi];
        return vec![shape.vertices()[a].clone(), shape.vertices()[b].clone()];
    }
    let verts: Vec<Vec<f64>> = shape
        .incidence()
        .iter()
        .enumerate()
        .filter(|(_, inc)| inc.contains(&fi))
        .map(|(v, _)| shape.vertices()[v].clone())
        .collect();
    let d = shape.dim();
    let centroid: Vec<f64> = (0..d).map(|j| verts.iter().map(|v| v[j]).sum::<f64>() / verts.len() as f64).collect();
    let n = &shape.facets()[fi].normal;
    let e1 = linalg::sub(&verts[0], &centroid);
    let e1: Vec<f64> = e1.iter().map(|x| x / norm(&e1)).collect();
    let e2 = [n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]];
    let mut keyed: Vec<(f64, Vec<f64>)> = verts
        .into_iter()
        .map(|v| {
            let r = linalg::sub(&v, &centroid);
            (dot(&r, &e2).atan2(dot(&r, &e1)), v)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|k| k.1).collect()
}

/// Model-space boundary points laid out so that every boundary point is within
/// `spacing` of one of them.
fn boundary_lattice(shape: &ConvexPolytope, spacing: f64) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for fi in 0..shape.facets().len() {
        let poly = facet_polygon(shape, fi);
        if shape.dim() == 2 {
            let (a, b) = (&poly[0], &poly[1]);
            let k = (norm(&linalg::sub(b, a)) / spacing).ceil().max(1.0) as usize;
            for t in 0..k {
                let s = t as f64 / k as f64;
                out.push(vec![a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]);
            }
            continue;
        }
        for w in 1..poly.len() - 1 {
            let (o, a, b) = (&poly[0], &poly[w], &poly[w + 1]);
            let longest =
                [linalg::sub(a, o), linalg::sub(b, o), linalg::sub(b, a)].iter().map(|e| norm(e)).fold(0.0, f64::max);
            let k = (longest / spacing).ceil().max(1.0) as usize;
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let (s, t) = (i as f64 / k as f64, j as f64 / k as f64);
                    out.push((0..3).map(|c| o[c] + s * (a[c] - o[c]) + t * (b[c] - o[c])).collect());
                }
            }
        }
    }
    out
}

fn interior_counts(shape: &ConvexPolytope, model_points: &[Vec<f64>]) -> Vec<usize> {
    let mut counts = vec![0; shape.facets().len()];
    for x in model_points {
        let on: Vec<usize> = shape
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| (dot(&f.normal, x) - f.offset).abs() <= SHAPE_TOL * f.offset.max(1.0))
            .map(|(i, _)| i)
            .collect();
        if on.len() == 1 {
            counts[on[0]] += 1;
        }
    }
    counts
}

fn finish(spec: &GeneratorSpec, model: Vec<Vec<f64>>, counts: Vec<usize>) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let posed_shape = spec.posed_shape();
    let d = spec.shape.dim();
    let mut coords = Vec::with_capacity(model.len() * d);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for x in &model {
        let u = if spec.band > 0.0 { rng.gen_range(-spec.band..=spec.band) } else { 0.0 };
        let y: Vec<f64> = x.iter().map(|v| v * (1.0 + u)).collect();
        let p = spec.pose(&y);
        let g = posed_shape.distance(&spec.translation, &p);
        lo = lo.min(g);
        hi = hi.max(g);
        coords.extend_from_slice(&p);
    }
    Ok(Sample {
        cloud: PointCloud::new(d, coords)?,
        truth: GroundTruth {
            center: spec.translation.clone(),
            rotation_angles: spec.rotation.angles().to_vec(),
            scale: spec.scale,
            inner_radius: lo,
            outer_radius: hi,
            width: hi - lo,
        },
        facet_interior_counts: counts,
    })
}

/// `δ`-uniform boundary sample of the posed shape (before radial noise), refusing when some
/// facet would receive no sample in its relative interior.
pub fn sample_boundary(spec: &GeneratorSpec) -> Result<Sample> {
    spec.validate()?;
    let model = boundary_lattice(&spec.shape, spec.delta / spec.scale);
    let counts = interior_counts(&spec.shape, &model);
    if let Some(facet) = counts.iter().position(|&c| c == 0) {
        return Err(Error::FacetUnsampled { facet });
    }
    finish(spec, model, counts)
}

fn facet_measure(poly: &[Vec<f64>]) -> f64 {
    if poly.len() == 2 {
        return norm(&linalg::sub(&poly[1], &poly[0]));
    }
    (1..poly.len() - 1).map(|w| triangle_area(&poly[0], &poly[w], &poly[w + 1])).sum()
}

fn triangle_area(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let u = linalg::sub(a, o);
    let v = linalg::sub(b, o);
    let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    0.5 * norm(&c)
}

/// Uniformly distributed point on the model boundary.
pub fn random_boundary_point(shape: &ConvexPolytope, rng: &mut impl Rng) -> Vec<f64> {
    let polys: Vec<Vec<Vec<f64>>> = (0..shape.facets().len()).map(|f| facet_polygon(shape, f)).collect();
    random_on(&polys, &polys.iter().map(|p| facet_measure(p)).collect::<Vec<_>>(), rng)
}

fn random_on(polys: &[Vec<Vec<f64>>], measures: &[f64], rng: &mut impl Rng) -> Vec<f64> {
    let total: f64 = measures.iter().sum();
    let mut x = rng.gen_range(0.0..total);
    let mut fi = polys.len() - 1;
    for (i, m) in measures.iter().enumerate() {
        if x < *m {
            fi = i;
            break;
        }
        x -= m;
    }
    let poly = &polys[fi];
    if poly.len() == 2 {
        let t: f64 = rng.gen();
        return poly[0].iter().zip(&poly[1]).map(|(a, b)| a + t * (b - a)).collect();
    }
    let areas: Vec<f64> = (1..poly.len() - 1).map(|w| triangle_area(&poly[0], &poly[w], &poly[w + 1])).collect();
    let mut y = rng.gen_range(0.0..areas.iter().sum::<f64>());
    let mut w = areas.len() - 1;
    for (i, a) in areas.iter().enumerate() {
        if y < *a {
            w = i;
            break;
        }
        y -= a;
    }
    let (o, a, b) = (&poly[0], &poly[w + 1], &poly[w + 2]);
    let (mut s, mut t): (f64, f64) = (rng.gen(), rng.gen());
    if s + t > 1.0 {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    (0..3).map(|c| o[c] + s * (a[c] - o[c]) + t * (b[c] - o[c])).collect()
}

/// `n` uniformly random boundary samples of the posed shape with radial noise.
pub fn random_boundary_cloud(spec: &GeneratorSpec, n: usize) -> Result<Sample> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let polys: Vec<Vec<Vec<f64>>> = (0..spec.shape.facets().len()).map(|f| facet_polygon(&spec.shape, f)).collect();
    let measures: Vec<f64> = polys.iter().map(|p| facet_measure(p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x005e_ed0f_b0a7);
    let model: Vec<Vec<f64>> = (0..n).map(|_| random_on(&polys, &measures, &mut rng)).collect();
    let counts = interior_counts(&spec.shape, &model);
    finish(spec, model, counts)
}

/// Largest distance from `probes` random boundary points of the posed shape to their
/// nearest sample.
pub fn coverage_radius(spec: &GeneratorSpec, cloud: &PointCloud, probes: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..probes {
        let q = spec.pose(&random_boundary_point(&spec.shape, &mut rng));
        let nearest = cloud.iter().map(|p| norm(&linalg::sub(p, &q))).fold(f64::INFINITY, f64::min);
        worst = worst.max(nearest);
    }
    worst
}
