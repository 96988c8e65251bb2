#![allow(dead_code)]

use faer::{c64, Mat};
use polylin::ansatz::{check_linearization, AnsatzFactor, Side};
use polylin::basis::{Basis, BasisKind};
use polylin::dense::Matrix;
use polylin::oracle::{reference_spectrum, Spectrum};
use polylin::random::{self, basis_of_kind};
use polylin::MatrixPolynomial;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const KINDS: [BasisKind; 5] =
    [BasisKind::Monomial, BasisKind::Chebyshev1, BasisKind::Chebyshev2, BasisKind::Legendre, BasisKind::Newton];

pub fn int_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Mat::from_fn(n, n, |_, _| rng.gen_range(-9i32..=9) as f64)
}

pub fn random_basis(rng: &mut ChaCha8Rng, kinds: &[BasisKind], k: usize) -> Basis {
    let kind = &kinds[rng.gen_range(0..kinds.len())];
    basis_of_kind(rng, kind, k).unwrap()
}

/// A random polynomial whose oracle spectrum has finite eigenvalues at
/// least `min_sep` apart; resamples otherwise.
pub fn separated_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    leading_rank: Option<usize>,
    min_sep: f64,
) -> (MatrixPolynomial, Spectrum) {
    loop {
        let basis = random_basis(rng, &KINDS, k);
        let mut p = random::polynomial(rng, basis, n, k).unwrap();
        if let Some(r) = leading_rank {
            p = random::with_rank_deficient_leading(rng, &p, r).unwrap();
        }
        let Ok(spec) = reference_spectrum(&p) else { continue };
        if spec.min_separation() >= min_sep && spec.finite.iter().all(|z| z.norm() < 1e3) {
            return (p, spec);
        }
    }
}

/// A random factor passing the rank test.
pub fn full_rank_factor(rng: &mut ChaCha8Rng, k: usize, n: usize, side: Side) -> AnsatzFactor {
    loop {
        let f = random::factor(rng, k, n, side);
        if check_linearization(&f).unwrap().is_strong_linearization {
            return f;
        }
    }
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    m
}

/// Block `(i, j)` (0-based) of a block matrix with `n × n` blocks.
pub fn block(m: &Matrix, n: usize, i: usize, j: usize) -> Matrix {
    m.as_ref().submatrix(i * n, j * n, n, n).to_owned()
}

pub fn identity(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

pub fn zeros(n: usize) -> Matrix {
    Matrix::zeros(n, n)
}

pub fn scaled(m: &Matrix, s: f64) -> Matrix {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| s * m[(i, j)])
}

/// Assembles a block matrix from a grid of `n × n` blocks.
pub fn assemble(blocks: &[Vec<Matrix>]) -> Matrix {
    let n = blocks[0][0].nrows();
    let (r, c) = (blocks.len(), blocks[0].len());
    Mat::from_fn(r * n, c * n, |i, j| blocks[i / n][j / n][(i % n, j % n)])
}

pub fn random_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<c64> {
    (0..count)
        .map(|_| {
            let r = 2.0 * rng.gen::<f64>().sqrt();
            let t = rng.gen_range(0.0..std::f64::consts::TAU);
            c64::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

/// `|det M| / ∏ ‖row_i M‖`, via faer's LU determinant on the row-normalized
/// matrix.
pub fn hadamard_ratio(m: &Mat<c64>) -> f64 {
    let scaled = Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let norm: f64 = (0..m.ncols()).map(|c| m[(i, c)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            c64::new(0.0, 0.0)
        } else {
            m[(i, j)] / norm
        }
    });
    scaled.determinant().norm()
}
