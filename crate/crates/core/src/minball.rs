//! Minimum enclosing placement of `C` (MinBall) as a small linear program.
//!
//! Variables are `(R, c)`; every point/facet pair contributes
//! `normal·(p - c) <= R·offset`. The program is solved with the randomized incremental
//! solver in [`crate::lp`], which also picks the lexicographically smallest optimal center.

use crate::annulus::{radii_at, PointCloud};
use crate::error::{Error, Result};
use crate::lp::{self, ConstraintSet};
use crate::polytope::ConvexPolytope;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Translated and scaled copy `center + radius·C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub center: Vec<f64>,
    pub radius: f64,
}

struct EnclosingLp<'a> {
    c: &'a ConvexPolytope,
    s: &'a PointCloud,
    shift: Vec<f64>,
}

impl ConstraintSet for EnclosingLp<'_> {
    fn dim(&self) -> usize {
        self.c.dim() + 1
    }

    fn len(&self) -> usize {
        self.s.len() * self.c.facets().len()
    }

    #[inline]
    fn row(&self, k: usize, a: &mut [f64]) -> f64 {
        let m = self.c.facets().len();
        let f = &self.c.facets()[k % m];
        let p = self.s.point(k / m);
        a[0] = -f.offset;
        let mut rhs = 0.0;
        for j in 0..f.normal.len() {
            a[j + 1] = -f.normal[j];
            rhs -= f.normal[j] * (p[j] - self.shift[j]);
        }
        rhs
    }
}

/// Smallest placement containing every point of `s`.
pub fn minball(c: &ConvexPolytope, s: &PointCloud, seed: u64) -> Result<Placement> {
    s.check_against(c)?;
    let d = c.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in s.iter() {
        for j in 0..d {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let shift: Vec<f64> = (0..d).map(|j| 0.5 * (lo[j] + hi[j])).collect();
    let extent = (0..d).map(|j| hi[j] - lo[j]).fold(0.0, f64::max);
    let reach = c.facets().iter().map(|f| f.normal.iter().map(|x| x.abs()).sum::<f64>() / f.offset).fold(1.0, f64::max);
    let bound = 1e3 * (1.0 + extent * reach);
    // Shuffling whole points keeps the incremental passes sequential in memory; the
    // refinement pass runs in the original order so the result does not depend on the seed.
    let mut perm: Vec<usize> = (0..s.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let shuffled = s.subset(&perm);
    let x = lp::lexmin_presorted(&EnclosingLp { c, s: &shuffled, shift: shift.clone() }, bound)
        .ok_or_else(|| Error::Numerical("MinBall LP".into()))?;
    let lp = EnclosingLp { c, s, shift };
    let x = lp::refine(&lp, x);
    if x.iter().any(|v| v.abs() >= 0.999 * bound) {
        return Err(Error::Numerical("MinBall LP hit the bounding box".into()));
    }
    let center: Vec<f64> = (0..d).map(|j| x[j + 1] + lp.shift[j]).collect();
    let (_, radius) = radii_at(c, s, &center);
    Ok(Placement { center, radius })
}

/// Largest placement centred at `center` with no point of `s` in its interior.
pub fn maxball_at(c: &ConvexPolytope, s: &PointCloud, center: &[f64]) -> Result<Placement> {
    s.check_against(c)?;
    let (r, _) = radii_at(c, s, center);
    Ok(Placement { center: center.to_vec(), radius: r })
}
