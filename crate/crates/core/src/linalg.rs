//! Small dense helpers for the fixed, tiny dimensions used throughout the crate.

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Solves the square system `m x = rhs` (row-major `n x n`) with partial pivoting.
/// Returns `None` when a pivot falls below `1e-12` of the largest row entry.
pub fn solve(m: &[f64], rhs: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut a = m.to_vec();
    let mut b = rhs.to_vec();
    let scale = a.iter().fold(0.0_f64, |s, x| s.max(x.abs())).max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).unwrap();
        if a[piv * n + col].abs() <= 1e-12 * scale {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        let d = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Some(x)
}

/// Row-reduces `rows` (each of length `n`) and returns their numerical rank.
pub fn rank(rows: &[Vec<f64>], n: usize, rel_tol: f64) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let scale = a.iter().flat_map(|r| r.iter()).fold(0.0_f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut r = 0;
    for col in 0..n {
        if r == a.len() {
            break;
        }
        let piv = (r..a.len()).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[piv][col].abs() <= rel_tol * scale {
            continue;
        }
        a.swap(piv, r);
        for i in r + 1..a.len() {
            let f = a[i][col] / a[r][col];
            for k in col..n {
                a[i][k] -= f * a[r][k];
            }
        }
        r += 1;
    }
    r
}

/// Unit vector spanning the null space of `rows` (`n - 1` rows of length `n`),
/// computed from signed cofactors. `None` when the rows are dependent.
pub fn null_vector(rows: &[Vec<f64>], n: usize) -> Option<Vec<f64>> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut u = vec![0.0; n];
    let mut minor = vec![0.0; (n - 1) * (n - 1)];
    for (j, uj) in u.iter_mut().enumerate() {
        for (r, row) in rows.iter().enumerate() {
            let mut c = 0;
            for (k, &v) in row.iter().enumerate() {
                if k != j {
                    minor[r * (n - 1) + c] = v;
                    c += 1;
                }
            }
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        *uj = sign * det(&minor, n - 1);
    }
    let len = norm(&u);
    let scale = rows.iter().map(|r| norm(r)).product::<f64>().max(f64::MIN_POSITIVE);
    if len <= 1e-12 * scale {
        return None;
    }
    Some(u.into_iter().map(|x| x / len).collect())
}

/// Determinant by Gaussian elimination.
pub fn det(m: &[f64], n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut a = m.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs())).unwrap();
        if a[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            d = -d;
        }
        let p = a[col * n + col];
        d *= p;
        for row in col + 1..n {
            let f = a[row * n + col] / p;
            for k in col..n {
                a[row * n + k] -= f * a[col * n + k];
            }
        }
    }
    d
}

/// Row-major `n x n` matrix product.
pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}
