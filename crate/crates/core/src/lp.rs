//! Randomized incremental (Seidel-style) linear programming in small fixed dimension.
//!
//! Solves `lexmin (x_0, x_1, ..., x_{D-1})` subject to `a_k · x <= b_k` inside the box
//! `|x_j| <= bound`. The lexicographic objective makes the optimum a unique vertex, which is
//! what gives the deterministic tie-breaking among optimal centers.
//!
//! Constraints are produced on demand by a [`ConstraintSet`] so that `n·m` rows never need to
//! be materialized. Subproblems keep the original coordinates and carry the hyperplanes they
//! are restricted to; the one-dimensional base case works on the line left over by `D - 1`
//! such hyperplanes.

use crate::linalg::{dot, null_vector, rank, solve};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A family of linear constraints `a · x <= b` in a fixed dimension.
pub trait ConstraintSet: Sync {
    fn dim(&self) -> usize;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Writes row `k` into `a` and returns its right-hand side.
    fn row(&self, k: usize, a: &mut [f64]) -> f64;
}

const REL_TOL: f64 = 1e-12;

#[inline]
fn violation(a: &[f64], b: f64, x: &[f64]) -> f64 {
    let lhs = dot(a, x);
    let scale = 1.0 + b.abs() + a.iter().zip(x).map(|(p, q)| (p * q).abs()).sum::<f64>();
    (lhs - b) / scale
}

struct Solver<'a, C: ConstraintSet> {
    cons: &'a C,
    dim: usize,
    bound: f64,
    order: Vec<u32>,
}

impl<C: ConstraintSet> Solver<'_, C> {
    /// Lexicographic minimum over `box ∩ {eqs}`, by enumerating box faces of matching
    /// codimension.
    fn box_vertex(&self, eqs: &[(Vec<f64>, f64)]) -> Option<Vec<f64>> {
        let d = self.dim;
        let free = d - eqs.len();
        let mut best: Option<Vec<f64>> = None;
        let mut m = vec![0.0; d * d];
        let mut rhs = vec![0.0; d];
        for (r, (a, b)) in eqs.iter().enumerate() {
            m[r * d..(r + 1) * d].copy_from_slice(a);
            rhs[r] = *b;
        }
        for mask in 0u32..(1 << d) {
            if mask.count_ones() as usize != free {
                continue;
            }
            let coords: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
            for signs in 0u32..(1 << free) {
                for (s, &j) in coords.iter().enumerate() {
                    let r = eqs.len() + s;
                    m[r * d..(r + 1) * d].iter_mut().for_each(|v| *v = 0.0);
                    m[r * d + j] = 1.0;
                    rhs[r] = if signs & (1 << s) != 0 { self.bound } else { -self.bound };
                }
                let Some(x) = solve(&m, &rhs, d) else { continue };
                if x.iter().any(|v| v.abs() > self.bound * (1.0 + 1e-9)) {
                    continue;
                }
                if best.as_ref().is_none_or(|cur| lex_less(&x, cur)) {
                    best = Some(x);
                }
            }
        }
        best
    }

    /// Optimum on the line cut out by `eqs` (exactly `D - 1` hyperplanes), over the first
    /// `upto` constraints of the permutation plus the box.
    fn line(&self, eqs: &[(Vec<f64>, f64)], upto: usize) -> Option<Vec<f64>> {
        let d = self.dim;
        let rows: Vec<Vec<f64>> = eqs.iter().map(|(a, _)| a.clone()).collect();
        let u = null_vector(&rows, d)?;
        let pivot = (0..d).max_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs())).unwrap();
        let mut m = vec![0.0; d * d];
        let mut rhs = vec![0.0; d];
        for (r, (a, b)) in eqs.iter().enumerate() {
            m[r * d..(r + 1) * d].copy_from_slice(a);
            rhs[r] = *b;
        }
        m[(d - 1) * d + pivot] = 1.0;
        let x0 = solve(&m, &rhs, d)?;

        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let mut clip = |au: f64, slack: f64, scale: f64| {
            if au.abs() <= REL_TOL * scale {
                return;
            }
            let t = slack / au;
            if au > 0.0 {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }
        };
        for j in 0..d {
            clip(u[j], self.bound - x0[j], 1.0);
            clip(-u[j], self.bound + x0[j], 1.0);
        }
        let mut a = vec![0.0; d];
        for &k in &self.order[..upto] {
            let b = self.cons.row(k as usize, &mut a);
            let au = dot(&a, &u);
            let scale = a.iter().map(|v| v.abs()).sum::<f64>();
            clip(au, b - dot(&a, &x0), scale);
        }
        let t = if lo > hi {
            0.5 * (lo + hi)
        } else {
            let lead = u.iter().find(|v| v.abs() > REL_TOL).copied().unwrap_or(0.0);
            if lead > 0.0 {
                lo
            } else {
                hi
            }
        };
        if !t.is_finite() {
            return None;
        }
        Some(x0.iter().zip(&u).map(|(x, v)| x + t * v).collect())
    }

    fn solve(&self, eqs: &mut Vec<(Vec<f64>, f64)>, upto: usize) -> Option<Vec<f64>> {
        if eqs.len() + 1 == self.dim {
            return self.line(eqs, upto);
        }
        let mut v = self.box_vertex(eqs)?;
        let mut a = vec![0.0; self.dim];
        for i in 0..upto {
            let k = self.order[i] as usize;
            let b = self.cons.row(k, &mut a);
            if violation(&a, b, &v) <= REL_TOL {
                continue;
            }
            let mut rows: Vec<Vec<f64>> = eqs.iter().map(|(r, _)| r.clone()).collect();
            rows.push(a.clone());
            if rank(&rows, self.dim, REL_TOL) < rows.len() {
                // Parallel to the current subspace: only reachable through rounding.
                continue;
            }
            eqs.push((a.clone(), b));
            let next = self.solve(eqs, i);
            eqs.pop();
            if let Some(x) = next {
                v = x;
            }
        }
        Some(v)
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Lexicographic minimum of `x` subject to the constraint set and `|x_j| <= bound`.
///
/// The constraint order is shuffled with `seed`. A refinement pass then recomputes the
/// vertex from the lowest-indexed independent tight constraints, so that the result does not
/// depend on the order in which degenerate ties were met.
pub fn lexmin<C: ConstraintSet>(cons: &C, bound: f64, seed: u64) -> Option<Vec<f64>> {
    let mut order: Vec<u32> = (0..cons.len() as u32).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let v = Solver { cons, dim: cons.dim(), bound, order }.solve(&mut Vec::new(), cons.len())?;
    Some(refine(cons, v))
}

/// Like [`lexmin`], but takes the constraints in the given order, which the caller has
/// already randomized (for instance by shuffling the data the rows are generated from, so
/// that the passes stream through memory). No refinement pass is applied.
pub fn lexmin_presorted<C: ConstraintSet>(cons: &C, bound: f64) -> Option<Vec<f64>> {
    let order: Vec<u32> = (0..cons.len() as u32).collect();
    Solver { cons, dim: cons.dim(), bound, order }.solve(&mut Vec::new(), cons.len())
}

/// Recomputes `v` from the lowest-indexed independent constraints tight at `v`, keeping it
/// when the recomputed vertex is infeasible or worse.
pub fn refine<C: ConstraintSet>(cons: &C, v: Vec<f64>) -> Vec<f64> {
    let dim = cons.dim();
    let mut a = vec![0.0; dim];
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for k in 0..cons.len() {
        let b = cons.row(k, &mut a);
        if violation(&a, b, &v).abs() > 1e-10 {
            continue;
        }
        basis.push(a.clone());
        if rank(&basis, dim, 1e-9) < basis.len() {
            basis.pop();
            continue;
        }
        rhs.push(b);
        if basis.len() == dim {
            break;
        }
    }
    if basis.len() < dim {
        return v;
    }
    let flat: Vec<f64> = basis.concat();
    let Some(x) = solve(&flat, &rhs, dim) else { return v };
    let feasible = (0..cons.len()).all(|k| {
        let b = cons.row(k, &mut a);
        violation(&a, b, &x) <= 1e-10
    });
    if feasible && x[0] <= v[0] + 1e-12 * (1.0 + v[0].abs()) {
        x
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rows(Vec<(Vec<f64>, f64)>);

    impl ConstraintSet for Rows {
        fn dim(&self) -> usize {
            self.0[0].0.len()
        }
        fn len(&self) -> usize {
            self.0.len()
        }
        fn row(&self, k: usize, a: &mut [f64]) -> f64 {
            a.copy_from_slice(&self.0[k].0);
            self.0[k].1
        }
    }

    #[test]
    fn triangle_feasible_region() {
        // x >= 1, y >= 2, x + y <= 10: lexmin is (1, 2).
        let rows = Rows(vec![(vec![-1.0, 0.0], -1.0), (vec![0.0, -1.0], -2.0), (vec![1.0, 1.0], 10.0)]);
        let x = lexmin(&rows, 1e6, 7).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12, "{x:?}");
    }

    #[test]
    fn lexicographic_tie_breaking() {
        // x >= 3 - y, x >= 3 + y, y in [-5, 5]: x minimal at y = 0.
        let rows = Rows(vec![(vec![-1.0, -1.0, 0.0], -3.0), (vec![-1.0, 1.0, 0.0], -3.0), (vec![0.0, 0.0, -1.0], 4.0)]);
        let x = lexmin(&rows, 1e6, 1).unwrap();
        assert!((x[0] - 3.0).abs() < 1e-9 && x[1].abs() < 1e-9 && (x[2] + 4.0).abs() < 1e-9);
    }

    #[test]
    fn seed_independent_on_random_lps() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rows: Vec<(Vec<f64>, f64)> = (0..40)
                .map(|_| {
                    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    let z: f64 = rng.gen_range(-1.0..1.0);
                    let r = (1.0 - z * z).sqrt();
                    (vec![r * t.cos(), r * t.sin(), z], rng.gen_range(0.5..2.0))
                })
                .collect();
            let rows = Rows(rows);
            let a = lexmin(&rows, 1e4, 1).unwrap();
            let b = lexmin(&rows, 1e4, 99).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-9, "{a:?} vs {b:?}");
            }
        }
    }
}
