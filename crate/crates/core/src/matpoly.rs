//! Matrix polynomials `P(λ) = Σ_i P_i φ_i(λ)` with real `n × n` coefficients.

use faer::{c64, Mat};
use rand::Rng;

use crate::basis::Basis;
use crate::dense::{hadamard_ratio, max_abs, random_disk_point, CMatrix, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MatrixPolynomial {
    basis: Basis,
    /// `P_0, …, P_k`, ascending.
    coeffs: Vec<Matrix>,
}

impl MatrixPolynomial {
    /// `coeffs` are `P_0, …, P_k` in ascending order. Requires `k ≥ 1`, square
    /// coefficients of a common size, a nonzero `P_k`, and basis data up to
    /// degree `k`.
    pub fn new(basis: impl Into<Basis>, coeffs: Vec<Matrix>) -> Result<Self> {
        let basis = basis.into();
        if coeffs.len() < 2 {
            return Err(Error::Dimension(format!("need at least two coefficients, got {}", coeffs.len())));
        }
        let n = coeffs[0].nrows();
        if n == 0 {
            return Err(Error::Dimension("coefficients are empty".into()));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.nrows() != n || c.ncols() != n {
                return Err(Error::Dimension(format!("P_{i} is {}×{}, expected {n}×{n}", c.nrows(), c.ncols())));
            }
            if (0..n).any(|r| (0..n).any(|s| !c[(r, s)].is_finite())) {
                return Err(Error::Malformed(format!("P_{i} has a non-finite entry")));
            }
        }
        if max_abs(coeffs[coeffs.len() - 1].as_ref()) == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        basis.check_degree(coeffs.len() - 1)?;
        Ok(Self { basis, coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs[0].nrows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// `P_i`.
    pub fn coeff(&self, i: usize) -> &Matrix {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// `(Σ_i ‖P_i‖_F²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_l2().powi(2)).sum::<f64>().sqrt()
    }

    /// Fails when `k < 2`, the standing assumption of every ansatz-space
    /// construction.
    pub fn require_ansatz_degree(&self) -> Result<()> {
        if self.degree() < 2 {
            Err(Error::DegreeTooSmall(self.degree()))
        } else {
            Ok(())
        }
    }

    pub fn evaluate(&self, lambda: c64) -> CMatrix {
        let n = self.n();
        let phi = self.basis.eval_all(self.degree(), lambda);
        let mut out = CMatrix::zeros(n, n);
        for (c, p) in self.coeffs.iter().zip(&phi) {
            for j in 0..n {
                for i in 0..n {
                    out[(i, j)] += *p * c[(i, j)];
                }
            }
        }
        out
    }

    /// Coefficients of the same polynomial in the monomial basis, ascending.
    pub fn to_monomial_coeffs(&self) -> Vec<Matrix> {
        let k = self.degree();
        let n = self.n();
        let c = self.basis.to_monomial(k);
        (0..=k).map(|m| Mat::from_fn(n, n, |r, s| (m..=k).map(|i| c[(i, m)] * self.coeffs[i][(r, s)]).sum())).collect()
    }

    /// Monomial coefficients of `rev_k P(λ) = λ^k P(1/λ)`, ascending; entry 0 is
    /// the leading monomial coefficient of `P`.
    pub fn reversal_monomial(&self) -> Vec<Matrix> {
        let mut c = self.to_monomial_coeffs();
        c.reverse();
        c
    }

    /// Leading monomial coefficient `rev_k P(0)`.
    pub fn leading_monomial(&self) -> Matrix {
        let k = self.degree();
        let lc = self.basis.leading_coefficient(k);
        Mat::from_fn(self.n(), self.n(), |i, j| lc * self.coeffs[k][(i, j)])
    }

    /// Randomized regularity test: samples `det P(λ)` at `trials` points of
    /// the disk `|λ| ≤ 2` and declares `P` regular as soon as one sample has
    /// `|det P(λ)| > tol · ∏‖row_i P(λ)‖`. The verdict "singular" is
    /// probabilistic; a nonzero determinant of degree ≤ kn vanishes at no more
    /// than kn points, so `trials ≥ kn + 1` is recommended.
    pub fn is_regular<R: Rng + ?Sized>(&self, rng: &mut R, trials: usize, tol: f64) -> Regularity {
        let mut best = Regularity { regular: false, witness: None, max_ratio: 0.0, trials };
        for _ in 0..trials {
            let lambda = random_disk_point(rng, 2.0);
            let ratio = hadamard_ratio(self.evaluate(lambda).as_ref());
            if ratio > best.max_ratio {
                best.max_ratio = ratio;
                if ratio > tol {
                    best.regular = true;
                    best.witness = Some(lambda);
                    return best;
                }
            }
        }
        best
    }
}

/// Outcome of [`MatrixPolynomial::is_regular`].
#[derive(Clone, Copy, Debug)]
pub struct Regularity {
    pub regular: bool,
    /// A point with `det P(λ)` bounded away from zero.
    pub witness: Option<c64>,
    /// Largest Hadamard-normalized `|det|` seen.
    pub max_ratio: f64,
    pub trials: usize,
}
