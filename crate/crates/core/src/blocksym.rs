//! Block-symmetric pencils: the intersection of the two ansatz spaces.
//!
//! For an ansatz vector `v` there is exactly one block-symmetric pencil
//! `[v ⊗ I_n  B] F(λ)`. Its `B = [Z; B⋆]` has first block row
//! `Z = [v_2 … v_k] ⊗ lead` (`lead` is the anchor's leading block) and a
//! block-symmetric `B⋆`. Only the lower triangle of `B⋆` is ever computed;
//! the upper triangle is read through the symmetry map
//! `B_{s,t} = B_{t+1,s−1}` (`t < s`).
//!
//! Three-term bases use closed-form recurrences that need only scalar·matrix
//! products, `O(k²n²)` work in total. Degree-graded bases, where no closed form
//! is available, solve the block-symmetry equations of `L(0)` column by column;
//! that solver also works for three-term anchors and is used to cross-check
//! the closed forms.
//!
//! For the basis `φ_i = λφ_{i−1} + 1` at `k = 4` the solver gives
//! `B_21 = −v_1 P_2 + v_3 P_4 + v_2 P_3`.

use faer::Mat;

use crate::ansatz::{make_m1, AnsatzFactor, Side};
use crate::dense::{max_abs, Matrix};
use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;
use crate::pencil::{anchor, anchor_star, Pencil};

/// The blocks of `B = [Z; B⋆]`, indexed `(i, j)` with `1 ≤ i ≤ k` and
/// `1 ≤ j ≤ k − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockGrid {
    n: usize,
    k: usize,
    z: Vec<Matrix>,
    // lower[p−1][q−1] = B⋆_{p,q} = B_{p+1,q} for q ≤ p
    lower: Vec<Vec<Option<Matrix>>>,
}

impl BlockGrid {
    fn new(n: usize, k: usize, z: Vec<Matrix>) -> Self {
        let lower = (1..k).map(|p| vec![None; p]).collect();
        Self { n, k, z, lower }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn slot(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        if i == 1 {
            return None;
        }
        let (p, q) = (i - 1, j);
        Some(if p >= q { (p - 1, q - 1) } else { (q - 1, p - 1) })
    }

    /// Block `B_{i,j}` (1-based). Above-diagonal blocks of `B⋆` alias their
    /// mirror images.
    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        assert!((1..=self.k).contains(&i) && (1..self.k).contains(&j), "block ({i}, {j}) out of range");
        match self.slot(i, j) {
            None => &self.z[j - 1],
            Some((a, b)) => {
                self.lower[a][b].as_ref().unwrap_or_else(|| panic!("block ({i}, {j}) read before it was computed"))
            }
        }
    }

    fn set(&mut self, i: usize, j: usize, m: Matrix) {
        debug_assert!(i > j, "only the lower triangle of B⋆ is stored");
        let (a, b) = self.slot(i, j).expect("row 1 is Z");
        self.lower[a][b] = Some(m);
    }

    /// `B` as a `kn × (k−1)n` matrix.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.n;
        Mat::from_fn(self.k * n, (self.k - 1) * n, |r, c| self.get(r / n + 1, c / n + 1)[(r % n, c % n)])
    }
}

/// Accumulates `Σ c_t · M_t` skipping zero coefficients, and counts the
/// scalar·matrix products it performs.
struct Accum {
    out: Matrix,
    ops: usize,
}

impl Accum {
    fn new(n: usize) -> Self {
        Self { out: Matrix::zeros(n, n), ops: 0 }
    }

    fn add(&mut self, c: f64, m: &Matrix) {
        if c == 0.0 {
            return;
        }
        self.ops += 1;
        let n = self.out.nrows();
        for j in 0..n {
            for i in 0..n {
                self.out[(i, j)] += c * m[(i, j)];
            }
        }
    }

    fn finish(self, ops: &mut usize) -> Matrix {
        *ops += self.ops;
        self.out
    }
}

fn check_v(p: &MatrixPolynomial, v: &[f64]) -> Result<()> {
    p.require_ansatz_degree()?;
    if v.len() != p.degree() {
        return Err(Error::Dimension(format!("ansatz vector has length {}, expected {}", v.len(), p.degree())));
    }
    Ok(())
}

fn first_row(p: &MatrixPolynomial, v: &[f64], lead_scale: f64) -> Vec<Matrix> {
    let k = p.degree();
    let pk = p.coeff(k);
    (1..k).map(|j| Mat::from_fn(p.n(), p.n(), |r, c| v[j] * lead_scale * pk[(r, c)])).collect()
}

/// Closed-form construction of the block grid for a three-term basis.
pub fn dm_grid(p: &MatrixPolynomial, v: &[f64]) -> Result<BlockGrid> {
    check_v(p, v)?;
    let basis = p.basis().as_three_term().ok_or(Error::WrongBasis { expected: "three-term" })?;
    let (n, k) = (p.n(), p.degree());
    let ki = k as isize;

    // α_{−1} = 0 and v_{k+1} = 0: terms carrying them drop out.
    let alpha = |j: isize| if j < 0 { 0.0 } else { basis.alpha(j as usize) };
    let beta = |j: isize| basis.beta(j as usize);
    let gamma = |j: isize| basis.gamma(j as usize);
    let vv = |i: usize| if i >= 1 && i <= k { v[i - 1] } else { 0.0 };
    let pc = |i: isize| p.coeff(i as usize);
    let pk = p.coeff(k);

    let mut grid = BlockGrid::new(n, k, first_row(p, v, 1.0 / alpha(ki - 1)));
    let mut ops = 0usize;

    // First block column of B⋆.
    for i in 2..=k {
        let ii = i as isize;
        let a1 = alpha(ki - 1);
        let a2 = alpha(ki - 2);
        let s =
            vv(i - 1) * gamma(ki - ii + 1) + vv(i) * (beta(ki - ii) - beta(ki - 1)) + vv(i + 1) * alpha(ki - ii - 1);
        let mut acc = Accum::new(n);
        acc.add(s / (a1 * a2), pk);
        acc.add(vv(i) / a2, pc(ki - 1));
        acc.add(-vv(1) / a2, pc(ki - ii));
        grid.set(i, 1, acc.finish(&mut ops));
    }

    // Second block column.
    if k >= 3 {
        let a3 = alpha(ki - 3);
        for i in 3..=k {
            let ii = i as isize;
            let mut acc = Accum::new(n);
            acc.add(gamma(ki - ii + 1) / a3, grid.get(i - 1, 1));
            acc.add((beta(ki - ii) - beta(ki - 2)) / a3, grid.get(i, 1));
            let a_next = alpha(ki - ii - 1);
            if a_next != 0.0 {
                acc.add(a_next / a3, grid.get(i + 1, 1));
            }
            acc.add(vv(i) / a3, pc(ki - 2));
            acc.add(-vv(2) / a3, pc(ki - ii));
            acc.add(-vv(i) * gamma(ki - 1) / (a3 * alpha(ki - 1)), pk);
            let m = acc.finish(&mut ops);
            grid.set(i, 2, m);
        }
    }

    // Remaining columns.
    for j in 3..k {
        let jj = j as isize;
        let d = alpha(ki - jj - 1);
        for i in j + 1..=k {
            let ii = i as isize;
            let mut acc = Accum::new(n);
            acc.add(gamma(ki - ii + 1) / d, grid.get(i - 1, j - 1));
            acc.add((beta(ki - ii) - beta(ki - jj)) / d, grid.get(i, j - 1));
            let a_next = alpha(ki - ii - 1);
            if a_next != 0.0 {
                acc.add(a_next / d, grid.get(i + 1, j - 1));
            }
            acc.add(-gamma(ki - jj + 1) / d, grid.get(i, j - 2));
            acc.add(vv(i) / d, pc(ki - jj));
            acc.add(-vv(j) / d, pc(ki - ii));
            let m = acc.finish(&mut ops);
            grid.set(i, j, m);
        }
    }

    // at most six scalar·matrix products per stored block
    debug_assert!(ops <= 6 * k * k, "closed-form construction used {ops} products for k = {k}");
    Ok(grid)
}

/// Solves the block-symmetry equations of `L(0) = [v ⊗ I_n  B] · anchor(0)`
/// for the lower triangle of `B⋆`, one block column at a time. Works for any
/// anchor whose recurrence rows have a nonzero leading entry, which covers
/// both basis families.
pub fn solve_symmetric_grid(p: &MatrixPolynomial, v: &[f64]) -> Result<BlockGrid> {
    check_v(p, v)?;
    let (n, k) = (p.n(), p.degree());
    let f = anchor(p)?;
    let (_, star_y) = anchor_star(p)?;
    let lead_scale = match p.basis().as_three_term() {
        Some(b) => 1.0 / b.alpha(k - 1),
        None => 1.0,
    };
    // m0[c] = block c (1-based) of the first block row of anchor(0)
    let m0: Vec<Matrix> = (0..k).map(|c| f.block(0, c).1.to_owned()).collect();
    // M0[l][c], 1-based
    let mstar = |l: usize, c: usize| star_y[(l - 1, c - 1)];

    let mut grid = BlockGrid::new(n, k, first_row(p, v, lead_scale));
    for j in 1..k {
        let diag = mstar(j, j);
        if diag == 0.0 {
            return Err(Error::Internal(format!(
                "recurrence row {j} has a zero leading entry; symmetry system is not triangular"
            )));
        }
        for i in j + 1..=k {
            // v_i m0_j + Σ_l B_{i,l} M0[l][j] = v_j m0_i + Σ_l B_{j,l} M0[l][i]
            let mut acc = Accum::new(n);
            let mut ops = 0;
            acc.add(v[j - 1], &m0[i - 1]);
            for l in 1..k {
                let c = mstar(l, i);
                if c != 0.0 {
                    acc.add(c, grid.get(j, l));
                }
            }
            acc.add(-v[i - 1], &m0[j - 1]);
            for l in 1..j {
                let c = mstar(l, j);
                if c != 0.0 {
                    acc.add(-c, grid.get(i, l));
                }
            }
            let mut rhs = acc.finish(&mut ops);
            for x in 0..n {
                for y in 0..n {
                    rhs[(x, y)] /= diag;
                }
            }
            grid.set(i, j, rhs);
        }
    }
    Ok(grid)
}

fn factor_from_grid(v: &[f64], grid: &BlockGrid) -> AnsatzFactor {
    AnsatzFactor::new(v.to_vec(), grid.to_matrix(), Side::M1)
}

/// The factor `(v, B)` of the unique block-symmetric pencil with ansatz
/// vector `v`, three-term basis.
pub fn build_dm(p: &MatrixPolynomial, v: &[f64]) -> Result<AnsatzFactor> {
    Ok(factor_from_grid(v, &dm_grid(p, v)?))
}

/// Degree-graded counterpart of [`build_dm`]. The result is checked for
/// block-symmetry; a failure is reported as an internal error.
pub fn build_dm_dg(p: &MatrixPolynomial, v: &[f64]) -> Result<AnsatzFactor> {
    if p.basis().as_degree_graded().is_none() {
        return Err(Error::WrongBasis { expected: "degree-graded" });
    }
    let grid = solve_symmetric_grid(p, v)?;
    let f = factor_from_grid(v, &grid);
    let l = make_m1(p, &f)?;
    let sym = is_block_symmetric(&l, 1e-10);
    if !sym.symmetric {
        return Err(Error::Internal(format!(
            "symmetry system inconsistent: residual asymmetry {:.3e} (scale {:.3e})",
            sym.asymmetry, sym.scale
        )));
    }
    Ok(f)
}

/// [`build_dm`] or [`build_dm_dg`] depending on the basis.
pub fn dm_factor(p: &MatrixPolynomial, v: &[f64]) -> Result<AnsatzFactor> {
    if p.basis().as_three_term().is_some() {
        build_dm(p, v)
    } else {
        build_dm_dg(p, v)
    }
}

/// The block-symmetric pencil with ansatz vector `v`.
pub fn dm_pencil(p: &MatrixPolynomial, v: &[f64]) -> Result<Pencil> {
    make_m1(p, &dm_factor(p, v)?)
}

/// `dm_factor(P, e_j)` for `j = 1..k`; a basis of the block-symmetric space.
pub fn dm_basis(p: &MatrixPolynomial) -> Result<Vec<AnsatzFactor>> {
    p.require_ansatz_degree()?;
    let k = p.degree();
    (0..k)
        .map(|j| {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            dm_factor(p, &e)
        })
        .collect()
}

/// Outcome of [`is_block_symmetric`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockSymmetry {
    pub symmetric: bool,
    /// `max |block(i,j) − block(j,i)|` over `X` and `Y`.
    pub asymmetry: f64,
    /// `max(max|X|, max|Y|)`, for relative comparisons.
    pub scale: f64,
}

/// Compares `L` with its block-transpose; symmetric when the largest entry
/// difference is at most `tol · max(1, scale)`.
pub fn is_block_symmetric(l: &Pencil, tol: f64) -> BlockSymmetry {
    let t = l.block_transpose();
    let mut asym = 0.0f64;
    for (a, b) in [(l.x(), t.x()), (l.y(), t.y())] {
        for j in 0..a.ncols() {
            for i in 0..a.nrows() {
                asym = asym.max((a[(i, j)] - b[(i, j)]).abs());
            }
        }
    }
    let scale = max_abs(l.x().as_ref()).max(max_abs(l.y().as_ref()));
    BlockSymmetry { symmetric: asym <= tol * scale.max(1.0), asymmetry: asym, scale }
}
