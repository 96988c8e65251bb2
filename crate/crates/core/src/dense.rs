//! Small dense helpers shared by the pencil, ansatz and spectral layers.

use faer::{c64, Mat, MatRef};
use rand::Rng;

use crate::error::{Error, Result};

pub type Matrix = Mat<f64>;
pub type CMatrix = Mat<c64>;

pub(crate) fn to_complex(m: MatRef<'_, f64>) -> CMatrix {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| c64::new(m[(i, j)], 0.0))
}

/// `x·λ + y` for real `x`, `y` and complex `λ`.
pub(crate) fn affine(x: MatRef<'_, f64>, y: MatRef<'_, f64>, lambda: c64) -> CMatrix {
    Mat::from_fn(x.nrows(), x.ncols(), |i, j| lambda * x[(i, j)] + y[(i, j)])
}

pub fn max_abs(m: MatRef<'_, f64>) -> f64 {
    let mut out = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            out = out.max(m[(i, j)].abs());
        }
    }
    out
}

/// The `count` singular vectors of a square `a` with the smallest singular
/// values, as columns: left ones conjugated so that `uᵀA ≈ 0`, or right ones
/// with `Aw ≈ 0`.
pub(crate) fn smallest_singular_vectors(a: MatRef<'_, c64>, count: usize, left: bool) -> Result<CMatrix> {
    let svd = a.svd().map_err(|e| Error::Internal(format!("svd failed: {e:?}")))?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|x| x.re).collect();
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&x, &y| s[x].total_cmp(&s[y]));
    let basis = if left { svd.U() } else { svd.V() };
    let count = count.min(order.len());
    Ok(Mat::from_fn(basis.nrows(), count, |i, j| {
        let z = basis[(i, order[j])];
        if left {
            z.conj()
        } else {
            z
        }
    }))
}

/// `v ⊗ I_n` as a `kn × n` matrix.
pub fn kron_identity(v: &[f64], n: usize) -> Matrix {
    Mat::from_fn(v.len() * n, n, |r, c| if r % n == c { v[r / n] } else { 0.0 })
}

pub(crate) fn hstack(left: MatRef<'_, f64>, right: MatRef<'_, f64>) -> Matrix {
    assert_eq!(left.nrows(), right.nrows());
    let lc = left.ncols();
    Mat::from_fn(left.nrows(), lc + right.ncols(), |i, j| if j < lc { left[(i, j)] } else { right[(i, j - lc)] })
}

pub(crate) fn vstack(top: MatRef<'_, f64>, bottom: MatRef<'_, f64>) -> Matrix {
    assert_eq!(top.ncols(), bottom.ncols());
    let tr = top.nrows();
    Mat::from_fn(tr + bottom.nrows(), top.ncols(), |i, j| if i < tr { top[(i, j)] } else { bottom[(i - tr, j)] })
}

/// Singular values in descending order.
pub(crate) fn singular_values(m: MatRef<'_, f64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    let mut s = m.singular_values().map_err(|e| Error::Internal(format!("svd failed: {e:?}")))?;
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Numerical rank with the cutoff `max(r, c)·ε·σ_max`; also returns the
/// smallest singular value.
pub(crate) fn numerical_rank(m: MatRef<'_, f64>) -> Result<(usize, f64)> {
    let s = singular_values(m)?;
    let smax = s.first().copied().unwrap_or(0.0);
    let cutoff = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * smax;
    let rank = s.iter().filter(|&&x| x > cutoff).count();
    Ok((rank, s.last().copied().unwrap_or(0.0)))
}

/// Orthonormal basis (as columns) of `{u : uᵀA = 0}` (left) or
/// `{u : Au = 0}` (right), taken from singular vectors whose singular value is
/// at most `rel_tol·σ_max`.
pub(crate) fn null_space(a: MatRef<'_, c64>, rel_tol: f64, left: bool) -> Result<CMatrix> {
    let svd = a.svd().map_err(|e| Error::Internal(format!("svd failed: {e:?}")))?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|x| x.re).collect();
    let smax = s.iter().copied().fold(0.0f64, f64::max);
    let dim = if left { a.nrows() } else { a.ncols() };
    let mut cols = Vec::new();
    for idx in 0..dim {
        let sigma = s.get(idx).copied().unwrap_or(0.0);
        if sigma <= rel_tol * smax || smax == 0.0 {
            cols.push(idx);
        }
    }
    let basis = if left { svd.U() } else { svd.V() };
    // Aᴴ u = 0 for the left singular vectors; conjugate to get uᵀA = 0.
    Ok(Mat::from_fn(dim, cols.len(), |i, j| {
        let z = basis[(i, cols[j])];
        if left {
            z.conj()
        } else {
            z
        }
    }))
}

pub(crate) fn vec_norm(v: &[c64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `k` Chebyshev points of the first kind on `[-half_width, half_width]`.
pub fn chebyshev_points(k: usize, half_width: f64) -> Vec<f64> {
    (0..k)
        .map(|j| {
            let theta = std::f64::consts::PI * (2 * j + 1) as f64 / (2 * k) as f64;
            half_width * theta.cos()
        })
        .collect()
}

/// A uniformly distributed point in the complex disk of the given radius.
pub(crate) fn random_disk_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> c64 {
    let r = radius * rng.gen::<f64>().sqrt();
    let t = std::f64::consts::TAU * rng.gen::<f64>();
    c64::new(r * t.cos(), r * t.sin())
}

/// `|det A| / ∏ ‖row_i‖₂`, which lies in `[0, 1]` by Hadamard's inequality.
/// A zero row gives 0.
pub(crate) fn hadamard_ratio(a: MatRef<'_, c64>) -> f64 {
    let rows: Vec<f64> =
        (0..a.nrows()).map(|i| (0..a.ncols()).map(|j| a[(i, j)].norm_sqr()).sum::<f64>().sqrt()).collect();
    if rows.contains(&0.0) {
        return 0.0;
    }
    // Rows are normalized before the determinant so large kn cannot overflow.
    let normalized = Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] / rows[i]);
    normalized.determinant().norm()
}
