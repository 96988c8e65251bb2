//! Eigenvalues and eigenvectors of pencils, recovery of eigenvectors of `P`,
//! and the two exclusion checks that certify a pencil as a strong
//! linearization.
//!
//! Left eigenvectors use the transpose convention `uᵀ L(α) = 0` throughout.

mod solver;

pub use solver::{FaerQz, GeneralizedEigen, GeneralizedEigensolver};

use std::cmp::Ordering;

use faer::{c64, MatRef};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{recover_factors, Side};
use crate::dense::{
    hadamard_ratio, null_space, random_disk_point, smallest_singular_vectors, to_complex, vec_norm, CMatrix,
};
use crate::error::{Error, Result};
use crate::matpoly::{MatrixPolynomial, Regularity};
use crate::oracle::{poly_roots, ScalarPoly, Spectrum};
use crate::pencil::{anchor, Pencil};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eigenvalue {
    Finite(c64),
    Infinite,
}

impl Eigenvalue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Eigenvalue::Infinite)
    }

    pub fn finite(&self) -> Option<c64> {
        match self {
            Eigenvalue::Finite(z) => Some(*z),
            Eigenvalue::Infinite => None,
        }
    }

    /// Orders by real part, then imaginary part; infinity last.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Infinite, Eigenvalue::Infinite) => Ordering::Equal,
            (Eigenvalue::Infinite, _) => Ordering::Greater,
            (_, Eigenvalue::Infinite) => Ordering::Less,
            (Eigenvalue::Finite(a), Eigenvalue::Finite(b)) => a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)),
        }
    }
}

/// Eigenvalue with unit right and left eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigentriple {
    pub eigenvalue: Eigenvalue,
    /// `L(α) w = 0`, or `X w = 0` at infinity.
    pub right: Vec<c64>,
    /// `uᵀ L(α) = 0`, or `uᵀ X = 0` at infinity.
    pub left: Vec<c64>,
    /// `‖L(α) w‖₂` (`‖X w‖₂` at infinity).
    pub residual: f64,
    /// `‖uᵀ L(α)‖₂` (`‖uᵀ X‖₂` at infinity).
    pub left_residual: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct EigenOptions {
    /// `|α|` beyond which an eigenvalue counts as infinite; equivalently
    /// `|β| ≤ |α_h| / threshold` in homogeneous form.
    pub infinity_threshold: f64,
    /// Random points for the regularity pre-check; `0` skips it.
    pub regularity_trials: usize,
    /// Hadamard-normalized `|det|` a sample must exceed to prove regularity.
    pub regularity_tol: f64,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self { infinity_threshold: 1e10, regularity_trials: 12, regularity_tol: 1e-13, seed: 0x5eed }
    }
}

/// Samples `det L(λ)` on the disk `|λ| ≤ 2`.
pub fn pencil_regularity(l: &Pencil, trials: usize, tol: f64, seed: u64) -> Regularity {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Regularity { regular: false, witness: None, max_ratio: 0.0, trials };
    for _ in 0..trials {
        let z = random_disk_point(&mut rng, 2.0);
        let r = hadamard_ratio(l.eval(z).as_ref());
        out.max_ratio = out.max_ratio.max(r);
        if r > tol {
            out.regular = true;
            out.witness = Some(z);
            break;
        }
    }
    out
}

fn mat_vec(m: MatRef<'_, c64>, v: &[c64]) -> Vec<c64> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect()
}

fn vec_mat(v: &[c64], m: MatRef<'_, c64>) -> Vec<c64> {
    (0..m.ncols()).map(|j| (0..m.nrows()).map(|i| v[i] * m[(i, j)]).sum()).collect()
}

fn normalized(v: Vec<c64>) -> Vec<c64> {
    let s = vec_norm(&v);
    if s == 0.0 {
        v
    } else {
        v.into_iter().map(|z| z / s).collect()
    }
}

/// All `kn` eigenvalues of `L` with the default options and the faer QZ
/// backend, sorted by `(re, im)` with infinite eigenvalues last.
pub fn pencil_eigen(l: &Pencil) -> Result<Vec<Eigentriple>> {
    pencil_eigen_with(l, &FaerQz, &EigenOptions::default())
}

/// Like [`pencil_eigen`] with an explicit solver and options.
pub fn pencil_eigen_with(
    l: &Pencil,
    solver: &dyn GeneralizedEigensolver,
    opts: &EigenOptions,
) -> Result<Vec<Eigentriple>> {
    if opts.regularity_trials > 0 {
        let reg = pencil_regularity(l, opts.regularity_trials, opts.regularity_tol, opts.seed);
        if !reg.regular {
            return Err(Error::SingularPencil { trials: reg.trials, max_ratio: reg.max_ratio });
        }
    }
    let neg_y = -l.y();
    let e = solver.solve(neg_y.as_ref(), l.x().as_ref())?;
    let size = l.size();
    let xc = to_complex(l.x().as_ref());
    let is_infinite = |j: usize| {
        e.beta[j].abs() * opts.infinity_threshold <= e.alpha[j].norm() || (e.alpha[j].norm() == 0.0 && e.beta[j] == 0.0)
    };
    let infinite_total = (0..size).filter(|&j| is_infinite(j)).count();
    // eigenvectors at infinity come from the nullspaces of rev₁L(0) = X
    let (inf_right, inf_left) = if infinite_total > 0 {
        (
            smallest_singular_vectors(xc.as_ref(), infinite_total, false)?,
            smallest_singular_vectors(xc.as_ref(), infinite_total, true)?,
        )
    } else {
        (CMatrix::zeros(size, 0), CMatrix::zeros(size, 0))
    };
    let mut inf_seen = 0;
    let mut out = Vec::with_capacity(size);
    for j in 0..size {
        let (eigenvalue, m, mut right, mut left) = if is_infinite(j) {
            let c = inf_seen;
            inf_seen += 1;
            (
                Eigenvalue::Infinite,
                xc.clone(),
                (0..size).map(|i| inf_right[(i, c)]).collect::<Vec<_>>(),
                (0..size).map(|i| inf_left[(i, c)]).collect::<Vec<_>>(),
            )
        } else {
            let z = e.alpha[j] / e.beta[j];
            (
                Eigenvalue::Finite(z),
                l.eval(z),
                (0..size).map(|i| e.right[(i, j)]).collect(),
                (0..size).map(|i| e.left[(i, j)]).collect(),
            )
        };
        let bad = |v: &[c64]| v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || vec_norm(v) == 0.0;
        if bad(&right) {
            right = smallest_singular_vectors(m.as_ref(), 1, false)?.col(0).iter().copied().collect();
        }
        if bad(&left) {
            left = smallest_singular_vectors(m.as_ref(), 1, true)?.col(0).iter().copied().collect();
        }
        let right = normalized(right);
        let left = normalized(left);
        let residual = vec_norm(&mat_vec(m.as_ref(), &right));
        let left_residual = vec_norm(&vec_mat(&left, m.as_ref()));
        out.push(Eigentriple { eigenvalue, right, left, residual, left_residual });
    }
    out.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    Ok(out)
}

/// Collapses eigentriples to a [`Spectrum`].
pub fn spectrum_of(triples: &[Eigentriple]) -> Spectrum {
    let finite: Vec<c64> = triples.iter().filter_map(|t| t.eigenvalue.finite()).collect();
    Spectrum { infinite_count: triples.len() - finite.len(), finite }
}

/// Eigenvalues of `P` computed from its anchor pencil.
pub fn polynomial_spectrum(p: &MatrixPolynomial) -> Result<Spectrum> {
    match pencil_eigen(&anchor(p)?) {
        Err(Error::SingularPencil { .. }) => Err(Error::SingularPolynomial),
        other => Ok(spectrum_of(&other?)),
    }
}

fn spectral_norm(m: MatRef<'_, c64>) -> f64 {
    m.singular_values().map(|s| s.into_iter().fold(0.0, f64::max)).unwrap_or(f64::NAN)
}

/// Normwise scale of `P` at `α`: `Σ_i |φ_i(α)|·‖P_i‖₂`; at infinity the 2-norm
/// of the leading monomial coefficient.
pub fn polynomial_scale(p: &MatrixPolynomial, alpha: Eigenvalue) -> f64 {
    match alpha {
        Eigenvalue::Finite(z) => {
            let phi = p.basis().eval_all(p.degree(), z);
            p.coeffs().iter().zip(&phi).map(|(c, f)| f.norm() * spectral_norm(to_complex(c.as_ref()).as_ref())).sum()
        }
        Eigenvalue::Infinite => spectral_norm(to_complex(p.leading_monomial().as_ref()).as_ref()),
    }
}

/// `‖M u‖ / (scale · ‖u‖)` with `M = P(α)` (leading monomial coefficient at
/// infinity) and the scale from [`polynomial_scale`]; `side_left` uses `uᵀM`.
fn poly_residual(p: &MatrixPolynomial, alpha: Eigenvalue, u: &[c64], side_left: bool) -> f64 {
    let m: CMatrix = match alpha {
        Eigenvalue::Finite(z) => p.evaluate(z),
        Eigenvalue::Infinite => to_complex(p.leading_monomial().as_ref()),
    };
    let r = if side_left { vec_mat(u, m.as_ref()) } else { mat_vec(m.as_ref(), u) };
    let scale = polynomial_scale(p, alpha) * vec_norm(u);
    if scale == 0.0 {
        0.0
    } else {
        vec_norm(&r) / scale
    }
}

/// An eigenvector of `P` extracted from a pencil eigenvector.
#[derive(Clone, Debug)]
pub struct RightRecovery {
    /// Unit vector.
    pub u: Vec<c64>,
    /// `‖w − Φ_k(α) ⊗ u₀‖ / ‖w‖` for the unnormalized extraction `u₀`
    /// (`e_1 ⊗ u₀` at infinity).
    pub consistency: f64,
    /// `‖P(α) u‖` relative to [`polynomial_scale`]; at infinity the leading
    /// monomial coefficient replaces `P(α)`.
    pub residual: f64,
}

/// Recovers `u` from a right eigenvector `w = Φ_k(α) ⊗ u` (or `e_1 ⊗ u` at
/// infinity) of a strong linearization in the right ansatz space. Fails when
/// `w` does not have that Kronecker structure to within `tol`.
pub fn recover_right(p: &MatrixPolynomial, alpha: Eigenvalue, w: &[c64], tol: f64) -> Result<RightRecovery> {
    let (n, k) = (p.n(), p.degree());
    if w.len() != n * k {
        return Err(Error::Dimension(format!("eigenvector has length {}, expected {}", w.len(), n * k)));
    }
    let weights: Vec<c64> = match alpha {
        Eigenvalue::Finite(z) => p.basis().phi_vector(k, z),
        Eigenvalue::Infinite => {
            let mut e = vec![c64::new(0.0, 0.0); k];
            e[0] = c64::new(1.0, 0.0);
            e
        }
    };
    let r = (0..k).max_by(|&a, &b| weights[a].norm().total_cmp(&weights[b].norm())).expect("k ≥ 1");
    let u0: Vec<c64> = (0..n).map(|i| w[r * n + i] / weights[r]).collect();
    let diff: Vec<c64> = (0..n * k).map(|i| w[i] - weights[i / n] * u0[i % n]).collect();
    let consistency = vec_norm(&diff) / vec_norm(w).max(f64::MIN_POSITIVE);
    if consistency.is_nan() || consistency > tol {
        return Err(Error::InconsistentEigenvector { mismatch: consistency });
    }
    let u = normalized(u0);
    let residual = poly_residual(p, alpha, &u, false);
    Ok(RightRecovery { u, consistency, residual })
}

/// `wᵀ = uᵀ(v ⊗ I_n)`, i.e. `w = Σ_i v_i u_i` over the blocks of `u`.
/// A vanishing result means the eigenvector exclusion condition fails.
pub fn recover_left(v: &[f64], u: &[c64]) -> Result<Vec<c64>> {
    let k = v.len();
    if k == 0 || !u.len().is_multiple_of(k) {
        return Err(Error::Dimension(format!("left vector of length {} does not split into {k} blocks", u.len())));
    }
    let n = u.len() / k;
    let w: Vec<c64> = (0..n).map(|i| (0..k).map(|r| u[r * n + i] * v[r]).sum()).collect();
    let norm = vec_norm(&w);
    let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm <= 1e-12 * vn * vec_norm(u) {
        return Err(Error::VanishingLeftVector { norm });
    }
    Ok(w)
}

/// `‖wᵀ P(α)‖ / (scale · ‖w‖)` with the scale from [`polynomial_scale`]; the
/// leading monomial coefficient replaces `P(α)` at infinity.
pub fn left_residual(p: &MatrixPolynomial, alpha: Eigenvalue, w: &[c64]) -> f64 {
    poly_residual(p, alpha, w, true)
}

/// `‖P(α) u‖ / (scale · ‖u‖)`, the right-side counterpart of
/// [`left_residual`].
pub fn right_residual(p: &MatrixPolynomial, alpha: Eigenvalue, u: &[c64]) -> f64 {
    poly_residual(p, alpha, u, false)
}

/// One eigenvalue's contribution to an exclusion verdict.
#[derive(Clone, Debug)]
pub struct ExclusionCheck {
    pub eigenvalue: Eigenvalue,
    /// Dimension of the numerical nullspace of `L(α)`.
    pub nullity: usize,
    /// Smallest singular value of the map `u ↦ uᵀ(v ⊗ I_n)` restricted to
    /// that nullspace, divided by `‖v‖`.
    pub sigma_min: f64,
}

#[derive(Clone, Debug)]
pub struct ExclusionVerdict {
    pub pass: bool,
    pub checks: Vec<ExclusionCheck>,
    /// Nullvector of `L(α)` annihilated by the ansatz map, when one exists.
    pub witness: Option<(Eigenvalue, Vec<c64>)>,
}

/// Relative singular-value cutoff for the nullspaces of `L(α)`.
pub const NULLSPACE_TOL: f64 = 1e-9;

/// Eigenvector exclusion check for a pencil in `M1(P)` (left nullvectors) or
/// `M2(P)` (right nullvectors). Every nullvector of `L(α)` at every eigenvalue
/// `α` of `P` must have a nonzero image under `v ⊗ I_n` (or `vᵀ ⊗ I_n`).
pub fn exclusion(l: &Pencil, p: &MatrixPolynomial, side: Side, tol: f64) -> Result<ExclusionVerdict> {
    let v = recover_factors(l, p, side)?.v;
    let spec = polynomial_spectrum(p)?;
    let (n, k) = (p.n(), p.degree());
    let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if vn == 0.0 {
        return Err(Error::ZeroAnsatzVector);
    }
    let mut alphas: Vec<Eigenvalue> = spec.finite.iter().map(|&z| Eigenvalue::Finite(z)).collect();
    if spec.infinite_count > 0 {
        alphas.push(Eigenvalue::Infinite);
    }
    let mut checks = Vec::new();
    let mut witness = None;
    for alpha in alphas {
        let m = match alpha {
            Eigenvalue::Finite(z) => l.eval(z),
            Eigenvalue::Infinite => to_complex(l.x().as_ref()),
        };
        let left = side == Side::M1;
        let nulls = null_space(m.as_ref(), NULLSPACE_TOL, left)?;
        let d = nulls.ncols();
        // rows: one per nullvector, image under the ansatz map
        let image = CMatrix::from_fn(d, n, |a, i| (0..k).map(|r| nulls[(r * n + i, a)] * v[r]).sum::<c64>() / vn);
        let sv = if d == 0 {
            vec![]
        } else {
            image.singular_values().map_err(|e| Error::Internal(format!("svd failed: {e:?}")))?
        };
        let sigma_min = if d > n { 0.0 } else { sv.iter().copied().fold(f64::INFINITY, f64::min) };
        if sigma_min <= tol && witness.is_none() && d > 0 {
            // the right singular vector of imageᵀ with smallest singular value
            let svd = image.transpose().to_owned().svd().map_err(|e| Error::Internal(format!("svd failed: {e:?}")))?;
            let coeffs: Vec<c64> = (0..d).map(|a| svd.V()[(a, d - 1)]).collect();
            let w: Vec<c64> = (0..n * k).map(|i| (0..d).map(|a| nulls[(i, a)] * coeffs[a]).sum()).collect();
            witness = Some((alpha, w));
        }
        checks.push(ExclusionCheck {
            eigenvalue: alpha,
            nullity: d,
            sigma_min: if d == 0 { f64::INFINITY } else { sigma_min },
        });
    }
    let pass = checks.iter().all(|c| c.sigma_min > tol);
    Ok(ExclusionVerdict { pass, checks, witness })
}

/// [`exclusion`] for pencils in `M1(P)`.
pub fn exclusion_left(l: &Pencil, p: &MatrixPolynomial, tol: f64) -> Result<ExclusionVerdict> {
    exclusion(l, p, Side::M1, tol)
}

/// Outcome of [`eigenvalue_exclusion`].
#[derive(Clone, Debug)]
pub struct EigenvalueExclusion {
    /// No root of `Φ_k(λ)ᵀv` is an eigenvalue of `P`, and `v_1 ≠ 0` if `P`
    /// has infinite eigenvalues.
    pub excluded: bool,
    /// `Φ_k(λ)ᵀv = Σ_r v_r φ_{k−r}(λ)` in the monomial basis.
    pub polynomial: ScalarPoly,
    pub roots: Vec<c64>,
    /// `min |root − α| / max(1, |α|)` over roots and finite eigenvalues.
    pub min_distance: f64,
    pub infinite_eigenvalues: usize,
    pub spectrum: Spectrum,
}

/// Eigenvalue exclusion test for the block-symmetric pencil with ansatz
/// vector `v`.
pub fn eigenvalue_exclusion(p: &MatrixPolynomial, v: &[f64], tol: f64) -> Result<EigenvalueExclusion> {
    p.require_ansatz_degree()?;
    let k = p.degree();
    if v.len() != k {
        return Err(Error::Dimension(format!("ansatz vector has length {}, expected {k}", v.len())));
    }
    if v.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroAnsatzVector);
    }
    let c = p.basis().to_monomial(k - 1);
    let coeffs: Vec<f64> = (0..k).map(|m| (0..k).map(|r| v[r] * c[(k - 1 - r, m)]).sum()).collect();
    let polynomial = ScalarPoly::new(coeffs).trimmed(1e-14);
    let roots = match polynomial.degree() {
        Some(d) if d >= 1 => poly_roots(&polynomial)?,
        _ => vec![],
    };
    let spectrum = polynomial_spectrum(p)?;
    let mut min_distance = f64::INFINITY;
    for r in &roots {
        for a in &spectrum.finite {
            min_distance = min_distance.min((r - a).norm() / a.norm().max(1.0));
        }
    }
    let infinite_ok = spectrum.infinite_count == 0 || v[0] != 0.0;
    Ok(EigenvalueExclusion {
        excluded: min_distance > tol && infinite_ok,
        polynomial,
        roots,
        min_distance,
        infinite_eigenvalues: spectrum.infinite_count,
        spectrum,
    })
}
