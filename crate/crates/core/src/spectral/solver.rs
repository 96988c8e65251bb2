//! Dense generalized eigensolver behind a small interface.

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack, StackReq};
use faer::linalg::evd::ComputeEigenvectors;
use faer::linalg::gevd::{gevd_real, gevd_scratch};
use faer::{c64, MatRef, Par};

use crate::dense::{CMatrix, Matrix};
use crate::error::{Error, Result};

/// Eigen-decomposition of `A w = μ B w` in homogeneous form `μ = alpha/beta`.
/// Columns of `right` satisfy `beta·A w = alpha·B w`; columns of `left`
/// satisfy `uᵀ(beta·A − alpha·B) = 0` (transpose, not conjugate transpose).
#[derive(Clone, Debug)]
pub struct GeneralizedEigen {
    pub alpha: Vec<c64>,
    pub beta: Vec<f64>,
    pub right: CMatrix,
    pub left: CMatrix,
}

pub trait GeneralizedEigensolver {
    fn solve(&self, a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Result<GeneralizedEigen>;
}

/// QZ from faer.
#[derive(Clone, Copy, Debug, Default)]
pub struct FaerQz;

fn left_residual(a: MatRef<'_, f64>, b: MatRef<'_, f64>, alpha: c64, beta: f64, u: &[c64]) -> f64 {
    let n = a.nrows();
    (0..n)
        .map(|j| (0..n).map(|i| u[i] * (a[(i, j)] * beta - alpha * b[(i, j)])).sum::<c64>().norm_sqr())
        .sum::<f64>()
        .sqrt()
}

impl GeneralizedEigensolver for FaerQz {
    fn solve(&self, a: MatRef<'_, f64>, b: MatRef<'_, f64>) -> Result<GeneralizedEigen> {
        let n = a.nrows();
        if a.ncols() != n || b.nrows() != n || b.ncols() != n {
            return Err(Error::Dimension("generalized eigenproblem needs two square matrices of equal size".into()));
        }
        let mut aa = a.to_owned();
        let mut bb = b.to_owned();
        let mut sre = Diag::<f64>::zeros(n);
        let mut sim = Diag::<f64>::zeros(n);
        let mut beta = Diag::<f64>::zeros(n);
        let mut ul = Matrix::zeros(n, n);
        let mut ur = Matrix::zeros(n, n);
        let par = Par::Seq;
        // the reported scratch size is too small when complex left vectors
        // are requested; pad it
        let req = gevd_scratch::<f64>(n, ComputeEigenvectors::Yes, ComputeEigenvectors::Yes, par, Default::default())
            .and(StackReq::new::<f64>(4 * n * n + 16 * n));
        let mut mem = MemBuffer::new(req);
        gevd_real(
            aa.as_mut(),
            bb.as_mut(),
            sre.as_mut(),
            sim.as_mut(),
            beta.as_mut(),
            Some(ul.as_mut()),
            Some(ur.as_mut()),
            par,
            MemStack::new(&mut mem),
            Default::default(),
        )
        .map_err(|e| Error::Eigensolver(format!("QZ did not converge: {e:?}")))?;

        let mut alpha = vec![c64::new(0.0, 0.0); n];
        let mut betas = vec![0.0; n];
        let mut right = CMatrix::zeros(n, n);
        let mut left = CMatrix::zeros(n, n);
        let mut j = 0;
        while j < n {
            if sim[j] == 0.0 || j + 1 == n {
                alpha[j] = c64::new(sre[j], 0.0);
                betas[j] = beta[j];
                for i in 0..n {
                    right[(i, j)] = c64::new(ur[(i, j)], 0.0);
                    left[(i, j)] = c64::new(ul[(i, j)], 0.0);
                }
                j += 1;
                continue;
            }
            // conjugate pair stored as (re, im) columns; the partner is
            // rebuilt as an exact conjugate
            let a0 = c64::new(sre[j], sim[j]);
            let b0 = beta[j];
            let r: Vec<c64> = (0..n).map(|i| c64::new(ur[(i, j)], ur[(i, j + 1)])).collect();
            let mut l: Vec<c64> = (0..n).map(|i| c64::new(ul[(i, j)], ul[(i, j + 1)])).collect();
            // normalize to the transpose convention whichever way the backend
            // stores the left vector
            let conj: Vec<c64> = l.iter().map(|z| z.conj()).collect();
            if left_residual(a, b, a0, b0, &conj) < left_residual(a, b, a0, b0, &l) {
                l = conj;
            }
            alpha[j] = a0;
            alpha[j + 1] = a0.conj();
            betas[j] = b0;
            betas[j + 1] = b0;
            for i in 0..n {
                right[(i, j)] = r[i];
                right[(i, j + 1)] = r[i].conj();
                left[(i, j)] = l[i];
                left[(i, j + 1)] = l[i].conj();
            }
            j += 2;
        }
        Ok(GeneralizedEigen { alpha, beta: betas, right, left })
    }
}
