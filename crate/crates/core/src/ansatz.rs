//! Pencils in the right and left ansatz spaces.
//!
//! Every pencil `L` with `L(λ)(Φ_k(λ) ⊗ I_n) = v ⊗ P(λ)` factors as
//! `[v ⊗ I_n  B] · F(λ)` through the anchor `F` (or `G` for degree-graded
//! bases); the left space is its block-transpose image. [`AnsatzFactor`] holds
//! the pair `(v, B)`.

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::dense::{chebyshev_points, hstack, kron_identity, numerical_rank, singular_values, Matrix};
use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;
use crate::pencil::{anchor, block_transpose, Pencil};

/// Which ansatz equation a pencil satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `L(λ)(Φ_k(λ) ⊗ I_n) = v ⊗ P(λ)`
    M1,
    /// `(Φ_k(λ)ᵀ ⊗ I_n) L(λ) = vᵀ ⊗ P(λ)`
    M2,
}

impl Side {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m1" => Ok(Self::M1),
            "m2" => Ok(Self::M2),
            other => Err(Error::Malformed(format!("unknown side `{other}`"))),
        }
    }
}

/// The pair `(v, B)` with `v ∈ ℝ^k` and `B ∈ ℝ^{kn × (k−1)n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzFactor {
    pub v: Vec<f64>,
    pub b: Matrix,
    pub side: Side,
}

impl AnsatzFactor {
    pub fn new(v: Vec<f64>, b: Matrix, side: Side) -> Self {
        Self { v, b, side }
    }

    /// `(e_1, [0; I])`, whose pencil is the anchor itself.
    pub fn anchor(k: usize, n: usize, side: Side) -> Self {
        let mut v = vec![0.0; k];
        v[0] = 1.0;
        let b = Mat::from_fn(k * n, (k - 1) * n, |i, j| if i == j + n { 1.0 } else { 0.0 });
        Self { v, b, side }
    }

    pub fn k(&self) -> usize {
        self.v.len()
    }

    /// Checks the shapes against a polynomial of size `n` and degree `k`.
    pub fn check_shape(&self, n: usize, k: usize) -> Result<()> {
        if self.v.len() != k {
            return Err(Error::Dimension(format!("ansatz vector has length {}, expected {k}", self.v.len())));
        }
        if self.b.nrows() != k * n || self.b.ncols() != (k - 1) * n {
            return Err(Error::Dimension(format!(
                "B is {}×{}, expected {}×{}",
                self.b.nrows(),
                self.b.ncols(),
                k * n,
                (k - 1) * n
            )));
        }
        Ok(())
    }

    /// Block size implied by `B`.
    pub fn n(&self) -> usize {
        self.b.nrows() / self.v.len().max(1)
    }

    /// The `kn × kn` multiplier `[v ⊗ I_n  B]`.
    pub fn multiplier(&self) -> Matrix {
        let n = self.n();
        hstack(kron_identity(&self.v, n).as_ref(), self.b.as_ref())
    }
}

fn check_factor(p: &MatrixPolynomial, f: &AnsatzFactor, side: Side) -> Result<()> {
    p.require_ansatz_degree()?;
    if f.side != side {
        return Err(Error::Dimension(format!("factor is for {:?}, {:?} requested", f.side, side)));
    }
    f.check_shape(p.n(), p.degree())
}

/// `[v ⊗ I_n  B] · F(λ)`, a pencil in the right ansatz space with vector `v`.
pub fn make_m1(p: &MatrixPolynomial, f: &AnsatzFactor) -> Result<Pencil> {
    check_factor(p, f, Side::M1)?;
    anchor(p)?.premultiply(f.multiplier().as_ref())
}

/// `F(λ)^𝓑 · [vᵀ ⊗ I_n; B^𝓑]`, a pencil in the left ansatz space with vector `v`.
pub fn make_m2(p: &MatrixPolynomial, f: &AnsatzFactor) -> Result<Pencil> {
    check_factor(p, f, Side::M2)?;
    let n = p.n();
    let f_bt = anchor(p)?.block_transpose();
    let right = block_transpose(f.multiplier().as_ref(), n)?;
    let (x, y) = f_bt.into_parts();
    Pencil::new(&x * &right, &y * &right, n, p.degree())
}

/// `P_k/α_{k−1}` (three-term) or `P_k` (degree-graded): the first block of
/// the anchor's `X`.
fn anchor_lead(p: &MatrixPolynomial) -> Matrix {
    let k = p.degree();
    let scale = match p.basis().as_three_term() {
        Some(b) => 1.0 / b.alpha(k - 1),
        None => 1.0,
    };
    Mat::from_fn(p.n(), p.n(), |i, j| scale * p.coeff(k)[(i, j)])
}

/// Reads `(v, B)` off `X = [v ⊗ lead  B]`, `lead` being the anchor's leading
/// block. Each `v_i` is a Frobenius projection of block `i` of `X`'s first
/// block column onto `lead`, which stays well defined when `P_k` has zero
/// entries. For [`Side::M2`] the pencil is block-transposed first.
///
/// Does not verify membership; see [`verify_membership`].
pub fn recover_factors(l: &Pencil, p: &MatrixPolynomial, side: Side) -> Result<AnsatzFactor> {
    p.require_ansatz_degree()?;
    let (n, k) = (p.n(), p.degree());
    if l.n() != n || l.k() != k {
        return Err(Error::Dimension(format!(
            "pencil has blocks {}×{} of size {}, polynomial needs {k}×{k} of size {n}",
            l.k(),
            l.k(),
            l.n()
        )));
    }
    let owned;
    let m1 = match side {
        Side::M1 => l,
        Side::M2 => {
            owned = l.block_transpose();
            &owned
        }
    };
    let lead = anchor_lead(p);
    let lead_sq = lead.norm_l2().powi(2);
    if lead_sq == 0.0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let x = m1.x();
    let v = (0..k)
        .map(|i| {
            let mut dot = 0.0;
            for c in 0..n {
                for r in 0..n {
                    dot += x[(i * n + r, c)] * lead[(r, c)];
                }
            }
            dot / lead_sq
        })
        .collect();
    let b = x.as_ref().submatrix(0, n, k * n, (k - 1) * n).to_owned();
    Ok(AnsatzFactor { v, b, side })
}

/// Outcome of [`verify_membership`].
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// Ansatz vector read off the pencil.
    pub v: Vec<f64>,
    /// Largest normalized mismatch over the sample points.
    pub residual: f64,
}

/// Points where ansatz identities are checked: `k + 1` Chebyshev points of
/// `[−1.5, 1.5]`. Both sides of an ansatz identity have degree at most `k`,
/// so agreement at `k + 1` distinct points is agreement everywhere.
pub fn sample_points(k: usize) -> Vec<c64> {
    chebyshev_points(k + 1, 1.5).into_iter().map(|x| c64::new(x, 0.0)).collect()
}

/// Max-abs of `L(λ)(Φ_k(λ) ⊗ I_n) − v ⊗ P(λ)` (or the left-sided version)
/// at `λ`, unnormalized.
pub fn ansatz_mismatch(l: &Pencil, p: &MatrixPolynomial, v: &[f64], side: Side, lambda: c64) -> f64 {
    let (n, k) = (p.n(), p.degree());
    let lv = l.eval(lambda);
    let phi = p.basis().phi_vector(k, lambda);
    let pl = p.evaluate(lambda);
    let mut worst = 0.0f64;
    for blk in 0..k {
        for i in 0..n {
            for j in 0..n {
                let mut acc = c64::new(0.0, 0.0);
                for (c, ph) in phi.iter().enumerate() {
                    acc += match side {
                        Side::M1 => lv[(blk * n + i, c * n + j)] * ph,
                        Side::M2 => lv[(c * n + i, blk * n + j)] * ph,
                    };
                }
                let target = v[blk] * pl[(i, j)];
                worst = worst.max((acc - target).norm());
            }
        }
    }
    worst
}

/// Decides membership in the right (`M1`) or left (`M2`) ansatz space. The
/// candidate `v` comes from [`recover_factors`]; the identity is then tested
/// at [`sample_points`], each mismatch scaled by `‖P‖·‖Φ_k(λ)‖·max(1, ‖v‖)`.
pub fn verify_membership(l: &Pencil, p: &MatrixPolynomial, side: Side, tol: f64) -> Result<Membership> {
    let f = recover_factors(l, p, side)?;
    let k = p.degree();
    let vnorm = f.v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let pnorm = p.norm();
    let mut residual = 0.0f64;
    for lambda in sample_points(k) {
        let phi = p.basis().phi_vector(k, lambda);
        let phinorm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let r = ansatz_mismatch(l, p, &f.v, side, lambda) / (pnorm * phinorm * vnorm);
        residual = residual.max(r);
    }
    Ok(Membership { member: residual <= tol, v: f.v, residual })
}

/// Outcome of [`check_linearization`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearizationCheck {
    pub is_strong_linearization: bool,
    pub rank: usize,
    /// `kn − rank`.
    pub deficiency: usize,
    /// Smallest singular value of `[v ⊗ I_n  B]`; reports near-deficiency
    /// that the exact-arithmetic rank statement cannot.
    pub smallest_singular_value: f64,
}

/// Rank test on `[v ⊗ I_n  B]`: full rank exactly when the pencil is a strong
/// linearization (for regular `P`; for singular `P` full rank is sufficient).
/// Numerical rank uses the cutoff `kn·ε·σ_max`.
pub fn check_linearization(f: &AnsatzFactor) -> Result<LinearizationCheck> {
    check_linearization_with_tol(f, None)
}

/// [`check_linearization`] with singular values below `rel_tol·σ_max`
/// counted as zero (`None` keeps the `kn·ε` cutoff).
pub fn check_linearization_with_tol(f: &AnsatzFactor, rel_tol: Option<f64>) -> Result<LinearizationCheck> {
    let m = f.multiplier();
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!("[v ⊗ I  B] is {}×{}", m.nrows(), m.ncols())));
    }
    let (mut rank, smallest) = numerical_rank(m.as_ref())?;
    if let Some(tol) = rel_tol {
        let s = singular_values(m.as_ref())?;
        let cut = tol * s.first().copied().unwrap_or(0.0);
        rank = rank.min(s.iter().filter(|&&x| x > cut).count());
    }
    let size = m.nrows();
    Ok(LinearizationCheck {
        is_strong_linearization: rank == size,
        rank,
        deficiency: size - rank,
        smallest_singular_value: smallest,
    })
}

/// `dim 𝕄₁(P) = dim 𝕄₂(P) = k(k−1)n² + k`.
pub fn dimension_m(k: usize, n: usize) -> usize {
    k * (k - 1) * n * n + k
}

/// The canonical spanning set `{(e_i, 0)} ∪ {(0, E_st)}` of factors.
pub fn canonical_factors(k: usize, n: usize, side: Side) -> Vec<AnsatzFactor> {
    let mut out = Vec::with_capacity(dimension_m(k, n));
    for i in 0..k {
        let mut v = vec![0.0; k];
        v[i] = 1.0;
        out.push(AnsatzFactor { v, b: Matrix::zeros(k * n, (k - 1) * n), side });
    }
    for s in 0..k * n {
        for t in 0..(k - 1) * n {
            let b = Mat::from_fn(k * n, (k - 1) * n, |i, j| if (i, j) == (s, t) { 1.0 } else { 0.0 });
            out.push(AnsatzFactor { v: vec![0.0; k], b, side });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::ThreeTermBasis;

    fn cheb3() -> MatrixPolynomial {
        let c = |s: f64| Mat::from_fn(2, 2, |i, j| s + (i * 2 + j) as f64);
        MatrixPolynomial::new(ThreeTermBasis::chebyshev1(), vec![c(1.0), c(-2.0), c(0.5), c(3.0)]).unwrap()
    }

    #[test]
    fn anchor_factor_reproduces_anchor() {
        let p = cheb3();
        let f = AnsatzFactor::anchor(3, 2, Side::M1);
        assert_eq!(make_m1(&p, &f).unwrap(), anchor(&p).unwrap());
        let g = AnsatzFactor::anchor(3, 2, Side::M2);
        assert_eq!(make_m2(&p, &g).unwrap(), anchor(&p).unwrap().block_transpose());
    }

    #[test]
    fn anchor_recovers_e1() {
        let p = cheb3();
        let f = recover_factors(&anchor(&p).unwrap(), &p, Side::M1).unwrap();
        assert_eq!(f.v, vec![1.0, 0.0, 0.0]);
        assert_eq!(f.b, AnsatzFactor::anchor(3, 2, Side::M1).b);
        let m = verify_membership(&anchor(&p).unwrap(), &p, Side::M1, 1e-8).unwrap();
        assert!(m.member);
        assert!(m.residual < 1e-15);
    }

    #[test]
    fn perturbed_anchor_is_not_a_member() {
        let p = cheb3();
        let (x, mut y) = anchor(&p).unwrap().into_parts();
        y[(3, 4)] += 1.0;
        let l = Pencil::new(x, y, 2, 3).unwrap();
        assert!(!verify_membership(&l, &p, Side::M1, 1e-8).unwrap().member);
    }

    #[test]
    fn rank_test_edge_cases() {
        let f = AnsatzFactor::anchor(3, 2, Side::M1);
        let c = check_linearization(&f).unwrap();
        assert!(c.is_strong_linearization);
        assert_eq!((c.rank, c.deficiency), (6, 0));
        let z = AnsatzFactor::new(vec![0.0; 3], Matrix::zeros(6, 4), Side::M1);
        let c = check_linearization(&z).unwrap();
        assert_eq!((c.rank, c.deficiency), (0, 6));
        assert!(!c.is_strong_linearization);
    }

    #[test]
    fn dimension_formula_values() {
        assert_eq!(dimension_m(3, 2), 27);
        assert_eq!(dimension_m(2, 1), 4);
        assert_eq!(dimension_m(4, 2), 52);
        assert_eq!(canonical_factors(3, 2, Side::M1).len(), 27);
    }

    #[test]
    fn shape_errors() {
        let p = cheb3();
        let f = AnsatzFactor::new(vec![1.0, 0.0], Matrix::zeros(4, 2), Side::M1);
        assert!(matches!(make_m1(&p, &f), Err(Error::Dimension(_))));
        let g = AnsatzFactor::anchor(3, 2, Side::M2);
        assert!(make_m1(&p, &g).is_err());
    }
}
