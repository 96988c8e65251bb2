//! Polynomial bases defined by recurrences.
//!
//! Two families are supported:
//!
//! * three-term bases, `α_j φ_{j+1} = (λ − β_j) φ_j − γ_j φ_{j−1}` with
//!   `α_j ≠ 0`, covering monomials, Newton, Chebyshev and Legendre;
//! * degree-graded bases, `φ_i = (λ − a_i) φ_{i−1} + Σ_{j ≤ i−2} b_i^j φ_j`,
//!   which are monic by construction.
//!
//! Evaluation uses the forward recurrence from `φ_{−1} = 0`, `φ_0 = 1`. That is
//! adequate for the small degrees (k ≲ 20) linearizations are built for; no
//! Clenshaw summation is attempted.

use faer::c64;
use serde::{Deserialize, Serialize};

use crate::dense::Matrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Monomial,
    Chebyshev1,
    Chebyshev2,
    Legendre,
    Newton,
    Custom,
}

impl BasisKind {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "monomial" => Self::Monomial,
            "chebyshev1" => Self::Chebyshev1,
            "chebyshev2" => Self::Chebyshev2,
            "legendre" => Self::Legendre,
            "newton" => Self::Newton,
            "custom" => Self::Custom,
            other => return Err(Error::UnknownBasis(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Monomial => "monomial",
            Self::Chebyshev1 => "chebyshev1",
            Self::Chebyshev2 => "chebyshev2",
            Self::Legendre => "legendre",
            Self::Newton => "newton",
            Self::Custom => "custom",
        }
    }
}

/// Coefficients of a three-term recurrence.
///
/// Built-in families compute their coefficients by formula, so they serve any
/// degree. Newton and custom bases carry explicit sequences and only support
/// degrees their data covers.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTermBasis {
    kind: BasisKind,
    // Explicit sequences; empty for the closed-form kinds.
    alpha: Vec<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
}

impl ThreeTermBasis {
    pub fn monomial() -> Self {
        Self::closed_form(BasisKind::Monomial)
    }

    pub fn chebyshev1() -> Self {
        Self::closed_form(BasisKind::Chebyshev1)
    }

    pub fn chebyshev2() -> Self {
        Self::closed_form(BasisKind::Chebyshev2)
    }

    pub fn legendre() -> Self {
        Self::closed_form(BasisKind::Legendre)
    }

    /// Newton basis `φ_{j+1} = (λ − x_j) φ_j`; degree `k` needs `k` nodes.
    pub fn newton(nodes: &[f64]) -> Self {
        Self {
            kind: BasisKind::Newton,
            alpha: vec![1.0; nodes.len()],
            beta: nodes.to_vec(),
            gamma: vec![0.0; nodes.len()],
        }
    }

    /// A basis from explicit recurrence data. `gamma[0]` is never read and is
    /// stored as 0.
    pub fn custom(alpha: Vec<f64>, beta: Vec<f64>, mut gamma: Vec<f64>) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.len() != gamma.len() {
            return Err(Error::InvalidBasis(format!(
                "alpha, beta, gamma lengths differ ({}, {}, {})",
                alpha.len(),
                beta.len(),
                gamma.len()
            )));
        }
        if let Some(j) = alpha.iter().position(|&a| a == 0.0 || !a.is_finite()) {
            return Err(Error::InvalidBasis(format!("alpha_{j} must be finite and nonzero")));
        }
        if beta.iter().chain(gamma.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidBasis("non-finite recurrence coefficient".into()));
        }
        if let Some(g) = gamma.first_mut() {
            *g = 0.0;
        }
        Ok(Self { kind: BasisKind::Custom, alpha, beta, gamma })
    }

    /// Instantiates a named family. `nodes` is required for Newton and ignored
    /// otherwise; custom bases go through [`ThreeTermBasis::custom`].
    pub fn builtin(kind: BasisKind, nodes: Option<&[f64]>) -> Result<Self> {
        match kind {
            BasisKind::Newton => nodes.map(Self::newton).ok_or(Error::MissingNodes),
            BasisKind::Custom => Err(Error::InvalidBasis("custom bases need explicit alpha/beta/gamma".into())),
            other => Ok(Self::closed_form(other)),
        }
    }

    fn closed_form(kind: BasisKind) -> Self {
        Self { kind, alpha: Vec::new(), beta: Vec::new(), gamma: Vec::new() }
    }

    pub fn kind(&self) -> &BasisKind {
        &self.kind
    }

    fn is_closed_form(&self) -> bool {
        !matches!(self.kind, BasisKind::Newton | BasisKind::Custom)
    }

    /// Largest degree `k` for which `φ_0..φ_k` are defined, `None` if unbounded.
    pub fn max_degree(&self) -> Option<usize> {
        if self.is_closed_form() {
            None
        } else {
            Some(self.alpha.len())
        }
    }

    /// `α_j`. Panics past [`max_degree`](Self::max_degree) for explicit bases.
    pub fn alpha(&self, j: usize) -> f64 {
        match self.kind {
            BasisKind::Monomial => 1.0,
            BasisKind::Chebyshev1 => {
                if j == 0 {
                    1.0
                } else {
                    0.5
                }
            }
            BasisKind::Chebyshev2 => 0.5,
            BasisKind::Legendre => (j + 1) as f64 / (2 * j + 1) as f64,
            _ => self.explicit(&self.alpha, j),
        }
    }

    pub fn beta(&self, j: usize) -> f64 {
        if self.is_closed_form() {
            0.0
        } else {
            self.explicit(&self.beta, j)
        }
    }

    pub fn gamma(&self, j: usize) -> f64 {
        if j == 0 {
            return 0.0;
        }
        match self.kind {
            BasisKind::Monomial => 0.0,
            BasisKind::Chebyshev1 | BasisKind::Chebyshev2 => 0.5,
            BasisKind::Legendre => j as f64 / (2 * j + 1) as f64,
            _ => self.explicit(&self.gamma, j),
        }
    }

    fn explicit(&self, seq: &[f64], j: usize) -> f64 {
        match seq.get(j) {
            Some(&x) => x,
            None => panic!("{} basis has recurrence data for j < {}, index {j} requested", self.kind.name(), seq.len()),
        }
    }

    /// Explicit sequences for serialization (empty for closed-form kinds).
    pub fn sequences(&self) -> (&[f64], &[f64], &[f64]) {
        (&self.alpha, &self.beta, &self.gamma)
    }

    /// The same basis as a degree-graded recurrence, available when it is
    /// monic (every `α_j = 1`), which holds for monomial and Newton bases.
    pub fn to_degree_graded(&self, k: usize) -> Option<DegreeGradedBasis> {
        if (0..k).any(|j| self.alpha(j) != 1.0) {
            return None;
        }
        let shift = (1..=k).map(|i| self.beta(i - 1)).collect();
        let lower = (2..=k)
            .map(|i| {
                let mut row = vec![0.0; i - 1];
                row[i - 2] = -self.gamma(i - 1);
                row
            })
            .collect();
        DegreeGradedBasis::new(shift, lower).ok()
    }
}

/// A monic degree-graded basis `φ_i = (λ − a_i) φ_{i−1} + Σ_{j=0}^{i−2} b_i^j φ_j`.
///
/// `shift[i−1]` holds `a_i` (i ≥ 1); `lower[i−2][j]` holds `b_i^j` (i ≥ 2,
/// j ≤ i−2). Missing trailing entries of a `lower` row read as zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeGradedBasis {
    shift: Vec<f64>,
    lower: Vec<Vec<f64>>,
}

impl DegreeGradedBasis {
    pub fn new(shift: Vec<f64>, lower: Vec<Vec<f64>>) -> Result<Self> {
        for (r, row) in lower.iter().enumerate() {
            if row.len() > r + 1 {
                return Err(Error::InvalidBasis(format!(
                    "lower row for i = {} has {} entries, at most {} allowed",
                    r + 2,
                    row.len(),
                    r + 1
                )));
            }
        }
        if shift.iter().chain(lower.iter().flatten()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidBasis("non-finite recurrence coefficient".into()));
        }
        Ok(Self { shift, lower })
    }

    /// The basis `φ_0 = 1`, `φ_i = λ φ_{i−1} + 1`, i.e. `1, λ+1, λ²+λ+1, …`.
    pub fn geometric_sum(k: usize) -> Self {
        let mut shift = vec![0.0; k];
        if k > 0 {
            shift[0] = -1.0;
        }
        let lower = (2..=k)
            .map(|i| {
                let mut row = vec![0.0; i - 1];
                row[0] = 1.0;
                row
            })
            .collect();
        Self { shift, lower }
    }

    /// Largest degree the stored data covers.
    pub fn max_degree(&self) -> usize {
        self.shift.len().min(self.lower.len() + 1)
    }

    /// `a_i` for `i ≥ 1`.
    pub fn shift(&self, i: usize) -> f64 {
        assert!(i >= 1, "shift index starts at 1");
        self.shift[i - 1]
    }

    /// `b_i^j` for `i ≥ 2`, `j ≤ i − 2`; zero when outside that range.
    pub fn lower(&self, i: usize, j: usize) -> f64 {
        if i < 2 || j + 2 > i {
            return 0.0;
        }
        self.lower
            .get(i - 2)
            .map(|row| row.get(j).copied().unwrap_or(0.0))
            .unwrap_or_else(|| panic!("degree-graded basis has no data for i = {i}"))
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shift
    }

    pub fn lower_rows(&self) -> &[Vec<f64>] {
        &self.lower
    }
}

/// Either basis family.
#[derive(Clone, Debug, PartialEq)]
pub enum Basis {
    ThreeTerm(ThreeTermBasis),
    DegreeGraded(DegreeGradedBasis),
}

impl From<ThreeTermBasis> for Basis {
    fn from(b: ThreeTermBasis) -> Self {
        Self::ThreeTerm(b)
    }
}

impl From<DegreeGradedBasis> for Basis {
    fn from(b: DegreeGradedBasis) -> Self {
        Self::DegreeGraded(b)
    }
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Self::ThreeTerm(b) => b.kind().name(),
            Self::DegreeGraded(_) => "degree_graded",
        }
    }

    pub fn as_three_term(&self) -> Option<&ThreeTermBasis> {
        match self {
            Self::ThreeTerm(b) => Some(b),
            Self::DegreeGraded(_) => None,
        }
    }

    pub fn as_degree_graded(&self) -> Option<&DegreeGradedBasis> {
        match self {
            Self::DegreeGraded(b) => Some(b),
            Self::ThreeTerm(_) => None,
        }
    }

    /// Fails unless `φ_0..φ_k` are all defined.
    pub fn check_degree(&self, k: usize) -> Result<()> {
        let available = match self {
            Self::ThreeTerm(b) => b.max_degree(),
            Self::DegreeGraded(b) => Some(b.max_degree()),
        };
        match available {
            Some(a) if a < k => Err(Error::BasisTooShort { requested: k, available: a }),
            _ => Ok(()),
        }
    }

    /// `φ_0(λ), …, φ_d(λ)` in ascending order.
    pub fn eval_all(&self, d: usize, lambda: c64) -> Vec<c64> {
        let mut out = Vec::with_capacity(d + 1);
        out.push(c64::new(1.0, 0.0));
        match self {
            Self::ThreeTerm(b) => {
                let mut prev = c64::new(0.0, 0.0);
                for j in 0..d {
                    let cur = out[j];
                    let next = ((lambda - b.beta(j)) * cur - b.gamma(j) * prev) / b.alpha(j);
                    prev = cur;
                    out.push(next);
                }
            }
            Self::DegreeGraded(b) => {
                for i in 1..=d {
                    let mut next = (lambda - b.shift(i)) * out[i - 1];
                    for j in 0..i.saturating_sub(1) {
                        let c = b.lower(i, j);
                        if c != 0.0 {
                            next += c * out[j];
                        }
                    }
                    out.push(next);
                }
            }
        }
        out
    }

    /// `φ_j(λ)`.
    pub fn eval_phi(&self, j: usize, lambda: c64) -> c64 {
        self.eval_all(j, lambda)[j]
    }

    /// `Φ_k(λ) = [φ_{k−1}(λ), …, φ_1(λ), φ_0(λ)]` in descending degree order.
    pub fn phi_vector(&self, k: usize, lambda: c64) -> Vec<c64> {
        assert!(k >= 1, "phi_vector needs k >= 1");
        let mut all = self.eval_all(k - 1, lambda);
        all.reverse();
        all
    }

    /// Lower-triangular `(k+1)×(k+1)` matrix `C` with `φ_i(λ) = Σ_m C[i][m] λ^m`.
    pub fn to_monomial(&self, k: usize) -> Matrix {
        let mut c = Matrix::zeros(k + 1, k + 1);
        c[(0, 0)] = 1.0;
        match self {
            Self::ThreeTerm(b) => {
                for j in 0..k {
                    let (a, be, g) = (b.alpha(j), b.beta(j), b.gamma(j));
                    for m in 0..=j + 1 {
                        let shifted = if m > 0 { c[(j, m - 1)] } else { 0.0 };
                        let prev = if j > 0 { c[(j - 1, m)] } else { 0.0 };
                        c[(j + 1, m)] = (shifted - be * c[(j, m)] - g * prev) / a;
                    }
                }
            }
            Self::DegreeGraded(b) => {
                for i in 1..=k {
                    let a = b.shift(i);
                    for m in 0..=i {
                        let shifted = if m > 0 { c[(i - 1, m - 1)] } else { 0.0 };
                        let mut val = shifted - a * c[(i - 1, m)];
                        for j in 0..i.saturating_sub(1) {
                            val += b.lower(i, j) * c[(j, m)];
                        }
                        c[(i, m)] = val;
                    }
                }
            }
        }
        c
    }

    /// Leading monomial coefficient of `φ_k`.
    pub fn leading_coefficient(&self, k: usize) -> f64 {
        match self {
            Self::ThreeTerm(b) => (0..k).map(|j| 1.0 / b.alpha(j)).product(),
            Self::DegreeGraded(_) => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn monomial_cube() {
        let b = Basis::from(ThreeTermBasis::monomial());
        assert_eq!(b.eval_phi(3, re(2.0)), re(8.0));
    }

    #[test]
    fn chebyshev_recurrence_matches_cosine_identity() {
        let b = Basis::from(ThreeTermBasis::chebyshev1());
        // T_2(0.3) = cos(2 arccos 0.3)
        let oracle = (2.0 * 0.3f64.acos()).cos();
        assert!((b.eval_phi(2, re(0.3)).re - oracle).abs() < 1e-15);
        assert!((b.eval_phi(2, re(0.3)).re + 0.82).abs() < 1e-15);
        for j in 1..8 {
            let x = 0.37;
            let lhs = b.eval_phi(j + 1, re(x));
            let rhs = 2.0 * x * b.eval_phi(j, re(x)) - b.eval_phi(j - 1, re(x));
            assert!((lhs - rhs).norm() < 1e-13);
        }
        assert_eq!(b.eval_phi(1, re(0.7)), re(0.7));
    }

    #[test]
    fn legendre_p2_at_half() {
        let b = Basis::from(ThreeTermBasis::legendre());
        // P_2(x) = (3x² − 1)/2
        let oracle = (3.0 * 0.25 - 1.0) / 2.0;
        assert!((b.eval_phi(2, re(0.5)).re - oracle).abs() < 1e-15);
        assert!((oracle + 0.125).abs() < 1e-15);
    }

    #[test]
    fn chebyshev2_starts_with_two_lambda() {
        let b = Basis::from(ThreeTermBasis::chebyshev2());
        assert_eq!(b.eval_phi(1, re(0.3)), re(0.6));
        // U_2 = 4x² − 1
        assert!((b.eval_phi(2, re(0.3)).re - (4.0 * 0.09 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn phi_vector_descending() {
        let m = Basis::from(ThreeTermBasis::monomial());
        assert_eq!(m.phi_vector(3, re(2.0)), vec![re(4.0), re(2.0), re(1.0)]);
        let c = Basis::from(ThreeTermBasis::chebyshev1());
        let v = c.phi_vector(3, re(0.5));
        // T_2(0.5) = −0.5, T_1(0.5) = 0.5
        assert!((v[0] - re(-0.5)).norm() < 1e-15);
        assert!((v[1] - re(0.5)).norm() < 1e-15);
        assert_eq!(v[2], re(1.0));
    }

    #[test]
    fn geometric_sum_basis() {
        let b = Basis::from(DegreeGradedBasis::geometric_sum(4));
        let l = c64::new(0.3, -1.1);
        assert!((b.eval_phi(2, l) - (l * l + l + 1.0)).norm() < 1e-14);
        let c = b.to_monomial(2);
        assert_eq!((c[(2, 0)], c[(2, 1)], c[(2, 2)]), (1.0, 1.0, 1.0));
    }

    #[test]
    fn to_monomial_known_rows() {
        let m = Basis::from(ThreeTermBasis::monomial()).to_monomial(4);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m[(i, j)], if i == j { 1.0 } else { 0.0 });
            }
        }
        let c = Basis::from(ThreeTermBasis::chebyshev1()).to_monomial(2);
        assert_eq!((c[(2, 0)], c[(2, 1)], c[(2, 2)]), (-1.0, 0.0, 2.0));
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(ThreeTermBasis::builtin(BasisKind::Newton, None), Err(Error::MissingNodes)));
        assert!(matches!(BasisKind::parse("hermite"), Err(Error::UnknownBasis(_))));
        assert!(ThreeTermBasis::custom(vec![1.0, 0.0], vec![0.0; 2], vec![0.0; 2]).is_err());
    }

    #[test]
    fn custom_bases_report_their_reach() {
        let b = Basis::from(ThreeTermBasis::newton(&[0.0, 1.0, 2.0]));
        assert!(b.check_degree(3).is_ok());
        assert!(matches!(b.check_degree(4), Err(Error::BasisTooShort { requested: 4, available: 3 })));
        // (λ − 0)(λ − 1)(λ − 2) at λ = 3
        assert_eq!(b.eval_phi(3, re(3.0)), re(6.0));
    }

    #[test]
    fn monic_three_term_converts_to_degree_graded() {
        let nodes = [0.5, -1.0, 2.0, 0.25];
        let tt = Basis::from(ThreeTermBasis::newton(&nodes));
        let dg = Basis::from(ThreeTermBasis::newton(&nodes).to_degree_graded(4).unwrap());
        let l = c64::new(0.2, 0.9);
        for j in 0..=4 {
            assert!((tt.eval_phi(j, l) - dg.eval_phi(j, l)).norm() < 1e-13);
        }
        assert!(ThreeTermBasis::chebyshev1().to_degree_graded(3).is_none());
    }
}
