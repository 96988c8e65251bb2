//! Brute-force reference computations, independent of the pencil machinery:
//! the determinant of `P(λ)` as a scalar polynomial (cofactor expansion over
//! monomial coefficients), its roots from a balanced companion matrix, and
//! optimal matching of two spectra.

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;

/// Largest size accepted by [`det_poly`].
pub const MAX_ORACLE_N: usize = 6;
/// Largest degree accepted by [`det_poly`].
pub const MAX_ORACLE_K: usize = 8;

/// Relative threshold below which leading coefficients are trimmed.
pub const DEFAULT_TRIM: f64 = 1e-11;

/// Real polynomial in the monomial basis, `c_0 + c_1 λ + … + c_d λ^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarPoly {
    coeffs: Vec<f64>,
}

impl ScalarPoly {
    /// Ascending coefficients; exact trailing zeros are removed.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Drops leading coefficients with `|c| ≤ rel · max|c|`.
    pub fn trimmed(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| x.abs() <= cut) {
            c.pop();
        }
        Self { coeffs: c }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        Self::new((0..len).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: c64) -> c64 {
        self.coeffs.iter().rev().fold(c64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }
}

fn det_cofactor(m: &[Vec<ScalarPoly>], rows: &[usize], cols: &[usize]) -> ScalarPoly {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let r = rows[0];
    let sub_rows = &rows[1..];
    let mut acc = ScalarPoly::zero();
    for (idx, &c) in cols.iter().enumerate() {
        if m[r][c].is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_cofactor(m, sub_rows, &sub_cols);
        let term = m[r][c].mul(&minor);
        acc = acc.add(&if idx % 2 == 0 { term } else { term.scale(-1.0) });
    }
    acc
}

/// `det P(λ)` in the monomial basis, trimmed at [`DEFAULT_TRIM`].
pub fn det_poly(p: &MatrixPolynomial) -> Result<ScalarPoly> {
    det_poly_with_trim(p, DEFAULT_TRIM)
}

/// `det P(λ)` with leading coefficients below `trim · max|c|` removed.
pub fn det_poly_with_trim(p: &MatrixPolynomial, trim: f64) -> Result<ScalarPoly> {
    let (n, k) = (p.n(), p.degree());
    if n > MAX_ORACLE_N || k > MAX_ORACLE_K {
        return Err(Error::SizeGuard { n, k });
    }
    let mono = p.to_monomial_coeffs();
    let entries: Vec<Vec<ScalarPoly>> =
        (0..n).map(|i| (0..n).map(|j| ScalarPoly::new(mono.iter().map(|c| c[(i, j)]).collect())).collect()).collect();
    let idx: Vec<usize> = (0..n).collect();
    Ok(det_cofactor(&entries, &idx, &idx).trimmed(trim))
}

/// Diagonal similarity scaling by powers of two that balances row and column
/// norms.
fn balance(a: &mut Mat<f64>) {
    let n = a.nrows();
    let radix = 2.0f64;
    loop {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, g) = (c, r / radix);
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            let g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            // keep the rescaling only when it shrinks the combined norm
            if c * f + r / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Roots of `p` as the eigenvalues of its balanced companion matrix.
pub fn poly_roots(p: &ScalarPoly) -> Result<Vec<c64>> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantPolynomial),
    };
    let c = p.coeffs();
    // zero roots split off exactly
    let zeros = c.iter().take_while(|&&x| x == 0.0).count();
    let c = &c[zeros..];
    let m = d - zeros;
    let mut roots = vec![c64::new(0.0, 0.0); zeros];
    if m == 0 {
        return Ok(roots);
    }
    let lead = c[m];
    let mut comp = Mat::<f64>::zeros(m, m);
    for j in 0..m {
        comp[(0, j)] = -c[m - 1 - j] / lead;
    }
    for i in 1..m {
        comp[(i, i - 1)] = 1.0;
    }
    balance(&mut comp);
    let ev = comp.eigenvalues().map_err(|e| Error::Eigensolver(format!("companion eigenvalues: {e:?}")))?;
    roots.extend(ev);
    Ok(roots)
}

/// Finite eigenvalues plus the number of infinite ones.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    pub finite: Vec<c64>,
    pub infinite_count: usize,
}

impl Spectrum {
    pub fn total(&self) -> usize {
        self.finite.len() + self.infinite_count
    }

    /// Smallest distance between two finite eigenvalues (`∞` for fewer than
    /// two).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.finite.iter().enumerate() {
            for b in &self.finite[i + 1..] {
                best = best.min((a - b).norm());
            }
        }
        best
    }
}

/// Roots of `det P` and `kn − deg det P` infinite eigenvalues.
pub fn reference_spectrum(p: &MatrixPolynomial) -> Result<Spectrum> {
    let det = det_poly(p)?;
    let Some(d) = det.degree() else {
        return Err(Error::SingularPolynomial);
    };
    let finite = if d == 0 { vec![] } else { poly_roots(&det)? };
    Ok(Spectrum { finite, infinite_count: p.n() * p.degree() - d })
}

/// Minimum-cost assignment for a square cost matrix; returns `col[row]`.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // potentials and matching over 1-based indices with a virtual column 0
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            col[p[j] - 1] = j - 1;
        }
    }
    col
}

/// Outcome of [`compare_spectra`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    /// `(index in a, index in b, distance)` for the optimal assignment.
    pub pairs: Vec<(usize, usize, f64)>,
    pub max_distance: f64,
    pub finite_counts_equal: bool,
    pub infinite_counts_equal: bool,
    /// Counts agree and every matched distance is within tolerance.
    pub matched: bool,
}

/// Matches finite eigenvalues by minimum total distance. With unequal
/// counts the smaller list is matched into the larger one and the report
/// says so.
pub fn compare_spectra(a: &Spectrum, b: &Spectrum, tol: f64) -> SpectrumComparison {
    let swap = a.finite.len() > b.finite.len();
    let (s, l) = if swap { (&b.finite, &a.finite) } else { (&a.finite, &b.finite) };
    let size = l.len();
    let cost: Vec<Vec<f64>> =
        (0..size).map(|i| (0..size).map(|j| if i < s.len() { (s[i] - l[j]).norm() } else { 0.0 }).collect()).collect();
    let assignment = if size == 0 { vec![] } else { hungarian(&cost) };
    let mut pairs: Vec<(usize, usize, f64)> = (0..s.len())
        .map(|i| {
            let j = assignment[i];
            let d = (s[i] - l[j]).norm();
            if swap {
                (j, i, d)
            } else {
                (i, j, d)
            }
        })
        .collect();
    pairs.sort_by_key(|p| p.0);
    let max_distance = pairs.iter().fold(0.0f64, |m, p| m.max(p.2));
    let finite_counts_equal = a.finite.len() == b.finite.len();
    let infinite_counts_equal = a.infinite_count == b.infinite_count;
    SpectrumComparison {
        pairs,
        max_distance,
        finite_counts_equal,
        infinite_counts_equal,
        matched: finite_counts_equal && infinite_counts_equal && max_distance <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_arithmetic() {
        let a = ScalarPoly::new(vec![-1.0, 1.0]);
        let b = ScalarPoly::new(vec![-2.0, 1.0]);
        assert_eq!(a.mul(&b).coeffs(), &[2.0, -3.0, 1.0]);
        assert_eq!(a.add(&a.scale(-1.0)), ScalarPoly::zero());
        assert_eq!(ScalarPoly::new(vec![1.0, 1e-20]).trimmed(1e-12).degree(), Some(0));
    }

    #[test]
    fn roots_of_known_quadratics() {
        let mut r = poly_roots(&ScalarPoly::new(vec![2.0, -3.0, 1.0])).unwrap();
        r.sort_by(|x, y| x.re.total_cmp(&y.re));
        assert!((r[0] - c64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c64::new(2.0, 0.0)).norm() < 1e-14);
        let r = poly_roots(&ScalarPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14));
        let r = poly_roots(&ScalarPoly::new(vec![0.0, 0.0, 3.0])).unwrap();
        assert_eq!(r, vec![c64::new(0.0, 0.0); 2]);
        assert!(matches!(poly_roots(&ScalarPoly::constant(4.0)), Err(Error::ConstantPolynomial)));
    }

    #[test]
    fn balancing_handles_badly_scaled_coefficients() {
        // roots 1e-3, 1, 1e3
        let p = ScalarPoly::new(vec![-1.0, 1e3 + 1.0 + 1e-3, -(1e3 + 1.0 + 1e-3), 1.0]);
        let mut r: Vec<f64> = poly_roots(&p).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (got, want) in r.iter().zip([1e-3, 1.0, 1e3]) {
            assert!((got - want).abs() <= 1e-9 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn hungarian_beats_greedy() {
        // greedy would pair 0↔0 (cost 1) and leave 1↔1 (cost 10)
        let cost = vec![vec![1.0, 2.0], vec![2.0, 10.0]];
        assert_eq!(hungarian(&cost), vec![1, 0]);
    }

    #[test]
    fn comparison_reports() {
        let z = |re: f64, im: f64| c64::new(re, im);
        let a = Spectrum { finite: vec![z(1.0, 0.0), z(0.0, 1.0), z(0.0, -1.0)], infinite_count: 1 };
        let b = Spectrum { finite: vec![z(0.0, -1.0), z(1.0, 0.0), z(0.0, 1.0)], infinite_count: 1 };
        let c = compare_spectra(&a, &b, 1e-12);
        assert!(c.matched);
        assert_eq!(c.max_distance, 0.0);
        let short = Spectrum { finite: vec![z(1.0, 0.0)], infinite_count: 0 };
        let c = compare_spectra(&a, &short, 1e-12);
        assert!(!c.matched && !c.finite_counts_equal && !c.infinite_counts_equal);
        assert_eq!(c.pairs, vec![(0, 0, 0.0)]);
        let c2 = compare_spectra(&short, &a, 1e-12);
        assert_eq!(c2.pairs, vec![(0, 0, 0.0)]);
    }
}
