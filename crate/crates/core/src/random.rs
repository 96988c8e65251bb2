//! Seeded random instances: polynomials, factors, and the degenerate cases
//! used to probe the theory (rank-deficient leading coefficients, common zero
//! columns, rank-deficient factors).

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{AnsatzFactor, Side};
use crate::basis::{Basis, BasisKind, DegreeGradedBasis, ThreeTermBasis};
use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[−1, 1]`.
pub fn uniform_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Mat::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..=1.0))
}

pub fn uniform_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// A basis of the given kind; Newton nodes are drawn from `[−1, 1]`.
pub fn basis_of_kind<R: Rng + ?Sized>(rng: &mut R, kind: &BasisKind, k: usize) -> Result<Basis> {
    Ok(match kind {
        BasisKind::Newton => ThreeTermBasis::newton(&uniform_vector(rng, k)).into(),
        BasisKind::Custom => {
            // nonzero alphas bounded away from 0
            let alpha = (0..k).map(|_| rng.gen_range(0.5..=1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
            ThreeTermBasis::custom(alpha, uniform_vector(rng, k), uniform_vector(rng, k))?.into()
        }
        other => ThreeTermBasis::builtin(other.clone(), None)?.into(),
    })
}

/// A degree-graded basis with random shifts and lower-order terms.
pub fn degree_graded_basis<R: Rng + ?Sized>(rng: &mut R, k: usize) -> DegreeGradedBasis {
    let shift = uniform_vector(rng, k);
    let lower = (2..=k).map(|i| uniform_vector(rng, i - 1)).collect();
    DegreeGradedBasis::new(shift, lower).expect("finite data")
}

/// `P_0, …, P_k` with entries uniform in `[−1, 1]`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    basis: impl Into<Basis>,
    n: usize,
    k: usize,
) -> Result<MatrixPolynomial> {
    let coeffs = (0..=k).map(|_| uniform_matrix(rng, n, n)).collect();
    MatrixPolynomial::new(basis, coeffs)
}

/// Replaces `P_k` by a random matrix of rank `rank < n`.
pub fn with_rank_deficient_leading<R: Rng + ?Sized>(
    rng: &mut R,
    p: &MatrixPolynomial,
    rank: usize,
) -> Result<MatrixPolynomial> {
    let n = p.n();
    if rank == 0 || rank >= n {
        return Err(Error::Dimension(format!("leading rank must be in 1..{n}, got {rank}")));
    }
    let a = uniform_matrix(rng, n, rank);
    let b = uniform_matrix(rng, rank, n);
    let mut coeffs = p.coeffs().to_vec();
    coeffs[p.degree()] = &a * &b;
    MatrixPolynomial::new(p.basis().clone(), coeffs)
}

/// A singular polynomial: every coefficient has column `col` equal to zero.
pub fn with_common_zero_column(p: &MatrixPolynomial, col: usize) -> Result<MatrixPolynomial> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| Mat::from_fn(c.nrows(), c.ncols(), |i, j| if j == col { 0.0 } else { c[(i, j)] }))
        .collect();
    MatrixPolynomial::new(p.basis().clone(), coeffs)
}

/// `(v, B)` with entries uniform in `[−1, 1]`; full rank with probability 1.
pub fn factor<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, side: Side) -> AnsatzFactor {
    AnsatzFactor::new(uniform_vector(rng, k), uniform_matrix(rng, k * n, (k - 1) * n), side)
}

/// A random factor whose column `col` of `B` is replaced by column `col` of
/// `v ⊗ I_n`, so `[v ⊗ I_n  B]` has two equal columns.
pub fn rank_deficient_factor<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, side: Side) -> AnsatzFactor {
    let mut f = factor(rng, k, n, side);
    let col = rng.gen_range(0..n);
    for r in 0..k {
        for i in 0..n {
            f.b[(r * n + i, col)] = if i == col { f.v[r] } else { 0.0 };
        }
    }
    f
}

/// `"n,k,seed"` as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

impl std::str::FromStr for RandomSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Malformed(format!("expected `n,k,seed`, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let k = parts[1].parse().map_err(|_| bad())?;
        let seed = parts[2].parse().map_err(|_| bad())?;
        if n == 0 || k == 0 {
            return Err(Error::Dimension(format!("n and k must be positive, got n = {n}, k = {k}")));
        }
        Ok(Self { n, k, seed })
    }
}

impl RandomSpec {
    /// The instance this spec names, in the given basis family.
    pub fn generate(&self, kind: &BasisKind) -> Result<MatrixPolynomial> {
        let mut r = rng(self.seed);
        let basis = basis_of_kind(&mut r, kind, self.k)?;
        polynomial(&mut r, basis, self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::check_linearization;

    #[test]
    fn seeds_are_reproducible() {
        let s: RandomSpec = "2, 3, 42".parse().unwrap();
        let a = s.generate(&BasisKind::Legendre).unwrap();
        let b = s.generate(&BasisKind::Legendre).unwrap();
        assert_eq!(a.coeffs(), b.coeffs());
        assert!("2,3".parse::<RandomSpec>().is_err());
        assert!(matches!("0,3,1".parse::<RandomSpec>(), Err(Error::Dimension(_))));
    }

    #[test]
    fn rank_deficient_factor_fails_rank_test() {
        let mut r = rng(3);
        for _ in 0..10 {
            let f = rank_deficient_factor(&mut r, 3, 2, Side::M1);
            assert!(!check_linearization(&f).unwrap().is_strong_linearization);
            let g = factor(&mut r, 3, 2, Side::M1);
            assert!(check_linearization(&g).unwrap().is_strong_linearization);
        }
    }
}
