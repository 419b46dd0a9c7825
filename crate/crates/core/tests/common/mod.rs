#![allow(dead_code)]

use polyannulus::linalg::{norm, sub};
use polyannulus::polytope::{ConvexPolytope, Rotation};
use polyannulus::sampler::{facet_polygon, sample_boundary, GeneratorSpec, Sample};
use polyannulus::shapes;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: &'static str,
    pub shape: ConvexPolytope,
    pub spec: GeneratorSpec,
    pub sample: Sample,
}

pub fn boundary_measure(shape: &ConvexPolytope) -> f64 {
    (0..shape.facets().len())
        .map(|f| {
            let p = facet_polygon(shape, f);
            if p.len() == 2 {
                return norm(&sub(&p[1], &p[0]));
            }
            (1..p.len() - 1)
                .map(|w| {
                    let u = sub(&p[w], &p[0]);
                    let v = sub(&p[w + 1], &p[0]);
                    let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
                    0.5 * norm(&c)
                })
                .sum()
        })
        .sum()
}

/// δ-uniform noisy boundary sample with roughly `n` points.
pub fn generate(
    name: &'static str,
    shape: ConvexPolytope,
    n: usize,
    scale: f64,
    band: f64,
    rotate: bool,
    rng: &mut ChaCha8Rng,
) -> Instance {
    let d = shape.dim();
    let measure = boundary_measure(&shape) * scale.powi(d as i32 - 1);
    let delta = (measure / n as f64).powf(1.0 / (d - 1) as f64);
    let mut spec = GeneratorSpec::new(shape.clone(), delta, band, rng.gen());
    spec.scale = scale;
    spec.translation = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
    if rotate {
        spec.rotation =
            Rotation::from_angles(&(0..d - 1).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect::<Vec<_>>());
    }
    let sample = sample_boundary(&spec).expect("generator spec is valid");
    Instance { name, shape, spec, sample }
}

pub fn planar_shapes() -> [(&'static str, ConvexPolytope); 3] {
    [("square", shapes::square()), ("hexagon", shapes::hexagon()), ("triangle", shapes::triangle_t())]
}

/// The seeded 2D translation suite: shapes in rotation, n in [50, 500], band in [0.01, 0.2].
pub fn planar_suite(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (name, shape) = planar_shapes()[i % 3].clone();
            let n = rng.gen_range(50..=500);
            let scale = rng.gen_range(0.5..3.0);
            let band = rng.gen_range(0.01..0.2);
            generate(name, shape, n, scale, band, false, &mut rng)
        })
        .collect()
}

pub fn spatial_suite(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (name, shape) =
                if i % 2 == 0 { ("cube", shapes::cube()) } else { ("tetrahedron", shapes::tetrahedron()) };
            let n = rng.gen_range(150..=300);
            let scale = rng.gen_range(0.5..3.0);
            let band = rng.gen_range(0.01..0.2);
            generate(name, shape, n, scale, band, false, &mut rng)
        })
        .collect()
}
