//! Pencils `Xλ + Y` with `n × n` block structure, and the anchor pencils
//! `F = [m; M]` (three-term bases) and `G = [m; M ⊗ I]` (degree-graded bases).

use faer::{c64, Mat, MatRef};

use crate::basis::{DegreeGradedBasis, ThreeTermBasis};
use crate::dense::{affine, vstack, CMatrix, Matrix};
use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;

/// A `kn × kn` pencil `Xλ + Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    x: Matrix,
    y: Matrix,
    n: usize,
    k: usize,
}

impl Pencil {
    pub fn new(x: Matrix, y: Matrix, n: usize, k: usize) -> Result<Self> {
        let size = k * n;
        if n == 0 || k == 0 {
            return Err(Error::Dimension("block size and block count must be positive".into()));
        }
        for (name, m) in [("X", &x), ("Y", &y)] {
            if m.nrows() != size || m.ncols() != size {
                return Err(Error::Dimension(format!("{name} is {}×{}, expected {size}×{size}", m.nrows(), m.ncols())));
            }
        }
        Ok(Self { x, y, n, k })
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &Matrix {
        &self.y
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.n * self.k
    }

    pub fn into_parts(self) -> (Matrix, Matrix) {
        (self.x, self.y)
    }

    pub fn eval(&self, lambda: c64) -> CMatrix {
        affine(self.x.as_ref(), self.y.as_ref(), lambda)
    }

    /// `rev₁(Xλ + Y) = Yλ + X`.
    pub fn reversal(&self) -> Self {
        Self { x: self.y.clone(), y: self.x.clone(), n: self.n, k: self.k }
    }

    /// Block-transpose of `X` and `Y`; blocks keep their interior layout.
    pub fn block_transpose(&self) -> Self {
        Self {
            x: block_transpose(self.x.as_ref(), self.n).expect("validated at construction"),
            y: block_transpose(self.y.as_ref(), self.n).expect("validated at construction"),
            n: self.n,
            k: self.k,
        }
    }

    /// Top-left `s × s` part of `X` and `Y`, as plain matrices.
    pub fn leading_principal(&self, s: usize) -> Result<(Matrix, Matrix)> {
        if s == 0 || s > self.size() {
            return Err(Error::Dimension(format!("leading size {s} outside 1..={}", self.size())));
        }
        Ok((self.x.as_ref().submatrix(0, 0, s, s).to_owned(), self.y.as_ref().submatrix(0, 0, s, s).to_owned()))
    }

    /// Block `(i, j)` (zero-based) of `X` and `Y`.
    pub fn block(&self, i: usize, j: usize) -> (MatRef<'_, f64>, MatRef<'_, f64>) {
        let n = self.n;
        (self.x.as_ref().submatrix(i * n, j * n, n, n), self.y.as_ref().submatrix(i * n, j * n, n, n))
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &Pencil, b: f64) -> Result<Self> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::Dimension("pencil block structures differ".into()));
        }
        let s = self.size();
        Ok(Self {
            x: Mat::from_fn(s, s, |i, j| a * self.x[(i, j)] + b * other.x[(i, j)]),
            y: Mat::from_fn(s, s, |i, j| a * self.y[(i, j)] + b * other.y[(i, j)]),
            n: self.n,
            k: self.k,
        })
    }

    /// Multiplies from the left by a constant `kn × kn` matrix.
    pub fn premultiply(&self, m: MatRef<'_, f64>) -> Result<Self> {
        if m.nrows() != self.size() || m.ncols() != self.size() {
            return Err(Error::Dimension(format!(
                "multiplier is {}×{}, pencil is {}×{}",
                m.nrows(),
                m.ncols(),
                self.size(),
                self.size()
            )));
        }
        Ok(Self { x: m * &self.x, y: m * &self.y, n: self.n, k: self.k })
    }
}

/// An `r × kn` pencil; holds `m_Φ^P` (`r = n`) and `M_Φ` (`r = (k−1)n`).
#[derive(Clone, Debug, PartialEq)]
pub struct RowBlockPencil {
    pub x: Matrix,
    pub y: Matrix,
    pub n: usize,
    pub k: usize,
}

impl RowBlockPencil {
    pub fn rows(&self) -> usize {
        self.x.nrows()
    }

    pub fn eval(&self, lambda: c64) -> CMatrix {
        affine(self.x.as_ref(), self.y.as_ref(), lambda)
    }
}

/// Block-transpose of a matrix split into `n × n` blocks: block `(i, j)` of
/// the output is block `(j, i)` of the input.
pub fn block_transpose(a: MatRef<'_, f64>, n: usize) -> Result<Matrix> {
    if n == 0 || a.nrows() % n != 0 || a.ncols() % n != 0 {
        return Err(Error::Dimension(format!("{}×{} matrix does not split into {n}×{n} blocks", a.nrows(), a.ncols())));
    }
    Ok(Mat::from_fn(a.ncols(), a.nrows(), |r, c| {
        let (bi, ii) = (r / n, r % n);
        let (bj, jj) = (c / n, c % n);
        a[(bj * n + ii, bi * n + jj)]
    }))
}

fn three_term(p: &MatrixPolynomial) -> Result<&ThreeTermBasis> {
    p.basis().as_three_term().ok_or(Error::WrongBasis { expected: "three-term" })
}

fn degree_graded(p: &MatrixPolynomial) -> Result<&DegreeGradedBasis> {
    p.basis().as_degree_graded().ok_or(Error::WrongBasis { expected: "degree-graded" })
}

fn set_block(m: &mut Matrix, bi: usize, bj: usize, n: usize, f: impl Fn(usize, usize) -> f64) {
    for j in 0..n {
        for i in 0..n {
            m[(bi * n + i, bj * n + j)] = f(i, j);
        }
    }
}

/// `m_Φ^P(λ) = [ (λ−β_{k−1})/α_{k−1} P_k + P_{k−1},  P_{k−2} − γ_{k−1}/α_{k−1} P_k,  P_{k−3}, …, P_0 ]`.
pub fn build_polynomial_row(p: &MatrixPolynomial) -> Result<RowBlockPencil> {
    p.require_ansatz_degree()?;
    let basis = three_term(p)?;
    let (n, k) = (p.n(), p.degree());
    let a = basis.alpha(k - 1);
    let b = basis.beta(k - 1);
    let g = basis.gamma(k - 1);
    let pk = p.coeff(k);
    let mut x = Matrix::zeros(n, k * n);
    let mut y = Matrix::zeros(n, k * n);
    set_block(&mut x, 0, 0, n, |i, j| pk[(i, j)] / a);
    set_block(&mut y, 0, 0, n, |i, j| -(b / a) * pk[(i, j)] + p.coeff(k - 1)[(i, j)]);
    set_block(&mut y, 0, 1, n, |i, j| p.coeff(k - 2)[(i, j)] - (g / a) * pk[(i, j)]);
    for c in 2..k {
        let pc = p.coeff(k - 1 - c);
        set_block(&mut y, 0, c, n, |i, j| pc[(i, j)]);
    }
    Ok(RowBlockPencil { x, y, n, k })
}

/// `m_Φ^P(λ) = [ (λ−a_k)P_k + P_{k−1},  b_k^{k−2}P_k + P_{k−2}, …, b_k^0 P_k + P_0 ]`.
pub fn build_polynomial_row_dg(p: &MatrixPolynomial) -> Result<RowBlockPencil> {
    p.require_ansatz_degree()?;
    let basis = degree_graded(p)?;
    let (n, k) = (p.n(), p.degree());
    let pk = p.coeff(k);
    let mut x = Matrix::zeros(n, k * n);
    let mut y = Matrix::zeros(n, k * n);
    set_block(&mut x, 0, 0, n, |i, j| pk[(i, j)]);
    let a = basis.shift(k);
    set_block(&mut y, 0, 0, n, |i, j| -a * pk[(i, j)] + p.coeff(k - 1)[(i, j)]);
    for c in 1..k {
        // block column c multiplies φ_{k−1−c}
        let deg = k - 1 - c;
        let bc = basis.lower(k, deg);
        let pc = p.coeff(deg);
        set_block(&mut y, 0, c, n, |i, j| bc * pk[(i, j)] + pc[(i, j)]);
    }
    Ok(RowBlockPencil { x, y, n, k })
}

/// Scalar `(k−1) × k` pencil `M^⋆(λ)` with `M^⋆(λ) Φ_k(λ) = 0`, as `(X, Y)`.
pub fn recurrence_star(basis: &ThreeTermBasis, k: usize) -> Result<(Matrix, Matrix)> {
    if k < 2 {
        return Err(Error::DegreeTooSmall(k));
    }
    let mut x = Matrix::zeros(k - 1, k);
    let mut y = Matrix::zeros(k - 1, k);
    for r in 0..k - 1 {
        let j = k - 2 - r;
        y[(r, r)] = -basis.alpha(j);
        x[(r, r + 1)] = 1.0;
        y[(r, r + 1)] = -basis.beta(j);
        if r + 2 < k {
            y[(r, r + 2)] = -basis.gamma(j);
        }
    }
    Ok((x, y))
}

/// Degree-graded counterpart of [`recurrence_star`].
pub fn recurrence_star_dg(basis: &DegreeGradedBasis, k: usize) -> Result<(Matrix, Matrix)> {
    if k < 2 {
        return Err(Error::DegreeTooSmall(k));
    }
    let mut x = Matrix::zeros(k - 1, k);
    let mut y = Matrix::zeros(k - 1, k);
    for r in 0..k - 1 {
        // row r encodes φ_i = (λ − a_i)φ_{i−1} + Σ b_i^j φ_j with i = k − 1 − r
        let i = k - 1 - r;
        y[(r, r)] = -1.0;
        x[(r, r + 1)] = 1.0;
        y[(r, r + 1)] = -basis.shift(i);
        for j in 0..i.saturating_sub(1) {
            y[(r, k - 1 - j)] = basis.lower(i, j);
        }
    }
    Ok((x, y))
}

fn kron_rows(star: (Matrix, Matrix), n: usize, k: usize) -> RowBlockPencil {
    let (xs, ys) = star;
    // `+ 0.0` turns the −0.0 of negated zero coefficients into 0.0
    let kron = |s: &Matrix| {
        Mat::from_fn(s.nrows() * n, s.ncols() * n, |r, c| if r % n == c % n { s[(r / n, c / n)] + 0.0 } else { 0.0 })
    };
    RowBlockPencil { x: kron(&xs), y: kron(&ys), n, k }
}

/// `M_Φ(λ) = M^⋆(λ) ⊗ I_n`.
pub fn build_recurrence_block(basis: &ThreeTermBasis, k: usize, n: usize) -> Result<RowBlockPencil> {
    Ok(kron_rows(recurrence_star(basis, k)?, n, k))
}

pub fn build_recurrence_block_dg(basis: &DegreeGradedBasis, k: usize, n: usize) -> Result<RowBlockPencil> {
    Ok(kron_rows(recurrence_star_dg(basis, k)?, n, k))
}

/// The anchor `F_Φ^P(λ) = [m_Φ^P(λ); M_Φ(λ)]`, a strong linearization with
/// `F(λ)(Φ_k(λ) ⊗ I_n) = e_1 ⊗ P(λ)`.
pub fn build_anchor(p: &MatrixPolynomial) -> Result<Pencil> {
    let top = build_polynomial_row(p)?;
    let basis = three_term(p)?;
    let bottom = build_recurrence_block(basis, p.degree(), p.n())?;
    stack(top, bottom)
}

/// The degree-graded anchor `G_Φ^P(λ) = [m_Φ^P(λ); M_Φ(λ) ⊗ I_n]`.
pub fn build_anchor_dg(p: &MatrixPolynomial) -> Result<Pencil> {
    let top = build_polynomial_row_dg(p)?;
    let basis = degree_graded(p)?;
    let bottom = build_recurrence_block_dg(basis, p.degree(), p.n())?;
    stack(top, bottom)
}

/// [`build_anchor`] or [`build_anchor_dg`], whichever fits the basis.
pub fn anchor(p: &MatrixPolynomial) -> Result<Pencil> {
    if p.basis().as_three_term().is_some() {
        build_anchor(p)
    } else {
        build_anchor_dg(p)
    }
}

/// Scalar recurrence rows of the anchor for either basis family.
pub(crate) fn anchor_star(p: &MatrixPolynomial) -> Result<(Matrix, Matrix)> {
    match p.basis() {
        crate::basis::Basis::ThreeTerm(b) => recurrence_star(b, p.degree()),
        crate::basis::Basis::DegreeGraded(b) => recurrence_star_dg(b, p.degree()),
    }
}

fn stack(top: RowBlockPencil, bottom: RowBlockPencil) -> Result<Pencil> {
    Pencil::new(vstack(top.x.as_ref(), bottom.x.as_ref()), vstack(top.y.as_ref(), bottom.y.as_ref()), top.n, top.k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_transpose_scalar_blocks_is_transpose() {
        let a = Mat::from_fn(3, 3, |i, j| (3 * i + j) as f64);
        let t = block_transpose(a.as_ref(), 1).unwrap();
        assert_eq!(t, a.transpose().to_owned());
    }

    #[test]
    fn block_transpose_keeps_block_interiors() {
        let a = Mat::from_fn(4, 4, |i, j| (10 * i + j) as f64);
        let t = block_transpose(a.as_ref(), 2).unwrap();
        // block (0,1) of t is block (1,0) of a, untransposed
        assert_eq!(t[(0, 2)], a[(2, 0)]);
        assert_eq!(t[(0, 3)], a[(2, 1)]);
        assert_eq!(t[(1, 2)], a[(3, 0)]);
        assert_eq!(block_transpose(t.as_ref(), 2).unwrap(), a);
    }

    #[test]
    fn block_transpose_rejects_bad_split() {
        let a = Matrix::zeros(3, 4);
        assert!(block_transpose(a.as_ref(), 2).is_err());
    }

    #[test]
    fn rectangular_block_transpose() {
        let a = Mat::from_fn(6, 4, |i, j| (i * 4 + j) as f64);
        let t = block_transpose(a.as_ref(), 2).unwrap();
        assert_eq!((t.nrows(), t.ncols()), (4, 6));
        assert_eq!(block_transpose(t.as_ref(), 2).unwrap(), a);
    }

    #[test]
    fn pencil_evaluation_and_reversal() {
        let x = Mat::from_fn(2, 2, |i, j| (i + j) as f64);
        let y = Mat::from_fn(2, 2, |i, j| (i * j) as f64 + 1.0);
        let l = Pencil::new(x.clone(), y.clone(), 1, 2).unwrap();
        let at0 = l.eval(c64::new(0.0, 0.0));
        let at1 = l.eval(c64::new(1.0, 0.0));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(at0[(i, j)].re, y[(i, j)]);
                assert_eq!(at1[(i, j)].re, x[(i, j)] + y[(i, j)]);
            }
        }
        let r = l.reversal();
        assert_eq!(r.x(), &y);
        assert_eq!(r.reversal(), l);
        assert_eq!(l.leading_principal(2).unwrap(), (x, y));
        assert!(l.leading_principal(3).is_err());
    }

    #[test]
    fn monomial_recurrence_rows() {
        let (x, y) = recurrence_star(&ThreeTermBasis::monomial(), 3).unwrap();
        // [−1, λ, 0], [0, −1, λ]
        assert_eq!((y[(0, 0)], x[(0, 1)], y[(0, 2)]), (-1.0, 1.0, 0.0));
        assert_eq!((y[(1, 0)], y[(1, 1)], x[(1, 2)]), (0.0, -1.0, 1.0));
    }

    #[test]
    fn chebyshev_recurrence_rows() {
        let (x, y) = recurrence_star(&ThreeTermBasis::chebyshev1(), 3).unwrap();
        // [−1/2, λ, −1/2], [0, −1, λ]
        assert_eq!((y[(0, 0)], x[(0, 1)], y[(0, 1)], y[(0, 2)]), (-0.5, 1.0, 0.0, -0.5));
        assert_eq!((y[(1, 0)], y[(1, 1)], x[(1, 2)], y[(1, 2)]), (0.0, -1.0, 1.0, 0.0));
        assert!(recurrence_star(&ThreeTermBasis::chebyshev1(), 1).is_err());
    }
}
