//! The brute-force reference: det P(λ) by cofactor expansion in the monomial
//! basis, its roots, and kn − deg det P infinite eigenvalues.

use faer::Mat;
use polylin::basis::ThreeTermBasis;
use polylin::oracle::{det_poly, reference_spectrum};
use polylin::MatrixPolynomial;

fn main() -> polylin::Result<()> {
    // P(λ) = T_2(λ)·diag(1, 0) + T_1(λ)·I + [[0, 1], [1, 0]]
    let coeffs = vec![
        Mat::from_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 }),
        Mat::identity(2, 2),
        Mat::from_fn(2, 2, |i, j| if i == 0 && j == 0 { 1.0 } else { 0.0 }),
    ];
    let p = MatrixPolynomial::new(ThreeTermBasis::chebyshev1(), coeffs)?;
    println!("det P(λ) coefficients, ascending: {:?}", det_poly(&p)?.coeffs());
    let s = reference_spectrum(&p)?;
    println!("finite eigenvalues: {:?}", s.finite);
    println!("infinite eigenvalues: {}", s.infinite_count);
    Ok(())
}
