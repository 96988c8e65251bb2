//! JSON forms of bases, problems, pencils, factors and spectrum reports.
//!
//! Matrices are row-major nested arrays. Problem coefficients are listed in
//! ascending degree, `[P_0, …, P_k]`. Floats are written in the shortest form
//! that parses back to the identical double.

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzFactor, Side};
use crate::basis::{Basis, BasisKind, DegreeGradedBasis, ThreeTermBasis};
use crate::dense::Matrix;
use crate::error::{Error, Result};
use crate::matpoly::MatrixPolynomial;
use crate::oracle::Spectrum;
use crate::pencil::Pencil;
use crate::spectral::{Eigentriple, Eigenvalue};

pub type Rows = Vec<Vec<f64>>;

pub fn matrix_to_rows(m: &Matrix) -> Rows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

/// Parses a row-major array, checking it is `rows × cols` with finite
/// entries.
pub fn rows_to_matrix(rows: &Rows, nrows: usize, ncols: usize, what: &str) -> Result<Matrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        let got_cols = rows.first().map_or(0, Vec::len);
        return Err(Error::Dimension(format!("{what} should be {nrows}×{ncols}, got {}×{got_cols}", rows.len())));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Malformed(format!("{what} has a non-finite entry")));
    }
    Ok(Mat::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<Vec<f64>>>,
}

fn required<T: Clone>(field: &Option<T>, name: &str, kind: &str) -> Result<T> {
    field.clone().ok_or_else(|| Error::Malformed(format!("basis kind `{kind}` needs `{name}`")))
}

impl BasisJson {
    pub fn from_basis(b: &Basis) -> Self {
        match b {
            Basis::ThreeTerm(t) => {
                let kind = t.kind().name().to_string();
                match t.kind() {
                    BasisKind::Newton => Self { kind, nodes: Some(t.sequences().1.to_vec()), ..Self::default() },
                    BasisKind::Custom => {
                        let (a, be, g) = t.sequences();
                        Self {
                            kind,
                            alpha: Some(a.to_vec()),
                            beta: Some(be.to_vec()),
                            gamma: Some(g.to_vec()),
                            ..Self::default()
                        }
                    }
                    _ => Self { kind, ..Self::default() },
                }
            }
            Basis::DegreeGraded(d) => Self {
                kind: "degree_graded".into(),
                shift: Some(d.shifts().to_vec()),
                lower: Some(d.lower_rows().to_vec()),
                ..Self::default()
            },
        }
    }

    /// Reads only the fields relevant to `kind`.
    pub fn to_basis(&self) -> Result<Basis> {
        let kind = self.kind.as_str();
        if kind == "degree_graded" {
            let shift = required(&self.shift, "shift", kind)?;
            let lower = self.lower.clone().unwrap_or_default();
            return Ok(DegreeGradedBasis::new(shift, lower)?.into());
        }
        let parsed = BasisKind::parse(kind)?;
        Ok(match parsed {
            BasisKind::Custom => ThreeTermBasis::custom(
                required(&self.alpha, "alpha", kind)?,
                required(&self.beta, "beta", kind)?,
                required(&self.gamma, "gamma", kind)?,
            )?
            .into(),
            other => ThreeTermBasis::builtin(other, self.nodes.as_deref())?.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub basis: BasisJson,
    pub n: usize,
    pub k: usize,
    /// `[P_0, …, P_k]`.
    pub coefficients: Vec<Rows>,
}

impl ProblemJson {
    pub fn from_poly(p: &MatrixPolynomial) -> Self {
        Self {
            basis: BasisJson::from_basis(p.basis()),
            n: p.n(),
            k: p.degree(),
            coefficients: p.coeffs().iter().map(matrix_to_rows).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MatrixPolynomial> {
        if self.coefficients.len() != self.k + 1 {
            return Err(Error::Dimension(format!(
                "k = {} needs {} coefficients, got {}",
                self.k,
                self.k + 1,
                self.coefficients.len()
            )));
        }
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, rows)| rows_to_matrix(rows, self.n, self.n, &format!("P_{i}")))
            .collect::<Result<Vec<_>>>()?;
        MatrixPolynomial::new(self.basis.to_basis()?, coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PencilJson {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "X")]
    pub x: Rows,
    #[serde(rename = "Y")]
    pub y: Rows,
}

impl PencilJson {
    pub fn from_pencil(l: &Pencil) -> Self {
        Self { n: l.n(), k: l.k(), x: matrix_to_rows(l.x()), y: matrix_to_rows(l.y()) }
    }

    pub fn to_pencil(&self) -> Result<Pencil> {
        let s = self.n * self.k;
        Pencil::new(rows_to_matrix(&self.x, s, s, "X")?, rows_to_matrix(&self.y, s, s, "Y")?, self.n, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub v: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Rows,
    pub side: Side,
}

impl FactorJson {
    pub fn from_factor(f: &AnsatzFactor) -> Self {
        Self { v: f.v.clone(), b: matrix_to_rows(&f.b), side: f.side }
    }

    /// `n` is taken from the shape of `B` (`kn` rows for `k = len(v)`).
    pub fn to_factor(&self) -> Result<AnsatzFactor> {
        let k = self.v.len();
        if k < 2 || !self.b.len().is_multiple_of(k) || self.b.is_empty() {
            return Err(Error::Dimension(format!(
                "B has {} rows, not a positive multiple of len(v) = {k} with k ≥ 2",
                self.b.len()
            )));
        }
        if self.v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("v has a non-finite entry".into()));
        }
        let n = self.b.len() / k;
        let b = rows_to_matrix(&self.b, k * n, (k - 1) * n, "B")?;
        Ok(AnsatzFactor::new(self.v.clone(), b, self.side))
    }
}

/// `[re, im]`.
pub type ComplexJson = [f64; 2];

fn cj(z: c64) -> ComplexJson {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteEigenvalueJson {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvectorJson {
    /// `null` for an infinite eigenvalue.
    pub eigenvalue: Option<ComplexJson>,
    pub right: Vec<ComplexJson>,
    pub left: Vec<ComplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_right: Option<Vec<ComplexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_left: Option<Vec<ComplexJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_residual: Option<f64>,
}

impl EigenvectorJson {
    pub fn from_triple(t: &Eigentriple) -> Self {
        Self {
            eigenvalue: t.eigenvalue.finite().map(cj),
            right: t.right.iter().copied().map(cj).collect(),
            left: t.left.iter().copied().map(cj).collect(),
            recovered_right: None,
            right_residual: None,
            recovered_left: None,
            left_residual: None,
        }
    }
}

/// Complex vector from `[re, im]` pairs.
pub fn complex_vec(v: &[ComplexJson]) -> Vec<c64> {
    v.iter().map(|z| c64::new(z[0], z[1])).collect()
}

pub fn complex_json(v: &[c64]) -> Vec<ComplexJson> {
    v.iter().copied().map(cj).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub finite: Vec<FiniteEigenvalueJson>,
    pub infinite_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvectors: Option<Vec<EigenvectorJson>>,
}

impl SpectrumReport {
    /// Finite eigenvalues with their pencil residuals, in the given order.
    pub fn from_triples(triples: &[Eigentriple], with_vectors: bool) -> Self {
        let finite = triples
            .iter()
            .filter_map(|t| match t.eigenvalue {
                Eigenvalue::Finite(z) => Some(FiniteEigenvalueJson { re: z.re, im: z.im, residual: t.residual }),
                Eigenvalue::Infinite => None,
            })
            .collect::<Vec<_>>();
        Self {
            infinite_count: triples.len() - finite.len(),
            finite,
            eigenvectors: with_vectors.then(|| triples.iter().map(EigenvectorJson::from_triple).collect()),
        }
    }

    /// Residuals are reported as 0.
    pub fn from_spectrum(s: &Spectrum) -> Self {
        let mut finite: Vec<FiniteEigenvalueJson> =
            s.finite.iter().map(|z| FiniteEigenvalueJson { re: z.re, im: z.im, residual: 0.0 }).collect();
        finite.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self { finite, infinite_count: s.infinite_count, eigenvectors: None }
    }

    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum {
            finite: self.finite.iter().map(|e| c64::new(e.re, e.im)).collect(),
            infinite_count: self.infinite_count,
        }
    }
}

pub fn parse_problem(json: &str) -> Result<MatrixPolynomial> {
    serde_json::from_str::<ProblemJson>(json)?.to_poly()
}

pub fn problem_to_json(p: &MatrixPolynomial) -> String {
    serde_json::to_string_pretty(&ProblemJson::from_poly(p)).expect("plain data serializes")
}

pub fn parse_pencil(json: &str) -> Result<Pencil> {
    serde_json::from_str::<PencilJson>(json)?.to_pencil()
}

pub fn pencil_to_json(l: &Pencil) -> String {
    serde_json::to_string_pretty(&PencilJson::from_pencil(l)).expect("plain data serializes")
}

pub fn parse_factor(json: &str) -> Result<AnsatzFactor> {
    serde_json::from_str::<FactorJson>(json)?.to_factor()
}

pub fn factor_to_json(f: &AnsatzFactor) -> String {
    serde_json::to_string_pretty(&FactorJson::from_factor(f)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_round_trip_is_bitwise() {
        let coeffs = (0..3).map(|i| Mat::from_fn(2, 2, |r, c| (i + r) as f64 / 3.0 - c as f64 * 1e-17)).collect();
        let p = MatrixPolynomial::new(ThreeTermBasis::newton(&[0.1, 1.0 / 7.0]), coeffs).unwrap();
        let q = parse_problem(&problem_to_json(&p)).unwrap();
        assert_eq!(p.coeffs(), q.coeffs());
        assert_eq!(p.basis(), q.basis());
    }

    #[test]
    fn degree_graded_and_custom_bases_round_trip() {
        for b in [
            Basis::from(DegreeGradedBasis::geometric_sum(4)),
            Basis::from(ThreeTermBasis::custom(vec![1.0, 0.5], vec![0.0, 0.25], vec![0.0, 0.5]).unwrap()),
            Basis::from(ThreeTermBasis::chebyshev2()),
        ] {
            assert_eq!(BasisJson::from_basis(&b).to_basis().unwrap(), b);
        }
    }

    #[test]
    fn malformed_and_mismatched_inputs() {
        assert!(matches!(parse_problem("{"), Err(Error::Json(_))));
        let bad = r#"{"basis":{"kind":"monomial"},"n":2,"k":1,"coefficients":[[[1,0],[0,1]],[[1,0]]]}"#;
        assert!(matches!(parse_problem(bad), Err(Error::Dimension(_))));
        let newton = r#"{"basis":{"kind":"newton"},"n":1,"k":1,"coefficients":[[[1]],[[1]]]}"#;
        assert!(matches!(parse_problem(newton), Err(Error::MissingNodes)));
        let side = r#"{"v":[1,0],"B":[[0],[1]],"side":"M3"}"#;
        assert!(matches!(parse_factor(side), Err(Error::Json(_))));
    }

    #[test]
    fn factor_and_pencil_round_trip() {
        let f = AnsatzFactor::anchor(3, 2, Side::M2);
        assert_eq!(parse_factor(&factor_to_json(&f)).unwrap(), f);
        let l = Pencil::new(Matrix::identity(4, 4), Mat::from_fn(4, 4, |i, j| (i * 4 + j) as f64 * 0.1), 2, 2).unwrap();
        let back = parse_pencil(&pencil_to_json(&l)).unwrap();
        assert_eq!((back.x(), back.y()), (l.x(), l.y()));
    }
}
