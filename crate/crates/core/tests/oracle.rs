use faer::{c64, Mat};
use polylin::basis::ThreeTermBasis;
use polylin::error::Error;
use polylin::oracle::{compare_spectra, det_poly, poly_roots, reference_spectrum, ScalarPoly, Spectrum};
use polylin::MatrixPolynomial;

fn scalar(basis: ThreeTermBasis, c: &[f64]) -> MatrixPolynomial {
    MatrixPolynomial::new(basis, c.iter().map(|&x| Mat::from_fn(1, 1, |_, _| x)).collect()).unwrap()
}

#[test]
fn chebyshev_t2_is_two_lambda_squared_minus_one() {
    let d = det_poly(&scalar(ThreeTermBasis::chebyshev1(), &[0.0, 0.0, 1.0])).unwrap();
    assert_eq!(d.coeffs(), &[-1.0, 0.0, 2.0]);
    let d = det_poly(&scalar(ThreeTermBasis::legendre(), &[0.0, 0.0, 0.0, 2.0])).unwrap();
    // 2·P_3 = 5λ³ − 3λ
    for (got, want) in d.coeffs().iter().zip([0.0, -3.0, 0.0, 5.0]) {
        assert!((got - want).abs() < 1e-14);
    }
}

#[test]
fn diagonal_determinant() {
    // diag(λ − 1, λ + 2) in the monomial basis
    let p = MatrixPolynomial::new(
        ThreeTermBasis::monomial(),
        vec![
            Mat::from_fn(2, 2, |i, j| {
                if i != j {
                    0.0
                } else if i == 0 {
                    -1.0
                } else {
                    2.0
                }
            }),
            Mat::identity(2, 2),
        ],
    )
    .unwrap();
    assert_eq!(det_poly(&p).unwrap().coeffs(), &[-2.0, 1.0, 1.0]);
    let s = reference_spectrum(&p).unwrap();
    assert_eq!(s.infinite_count, 0);
    let want = Spectrum { finite: vec![c64::new(1.0, 0.0), c64::new(-2.0, 0.0)], infinite_count: 0 };
    assert!(compare_spectra(&s, &want, 1e-12).matched);
}

#[test]
fn singular_leading_coefficient_gives_infinite_eigenvalue() {
    // λ·diag(1, 0) + I
    let p = MatrixPolynomial::new(
        ThreeTermBasis::monomial(),
        vec![Mat::identity(2, 2), Mat::from_fn(2, 2, |i, j| if i == 0 && j == 0 { 1.0 } else { 0.0 })],
    )
    .unwrap();
    let s = reference_spectrum(&p).unwrap();
    assert_eq!(s.infinite_count, 1);
    assert_eq!(s.finite.len(), 1);
    assert!((s.finite[0] + 1.0).norm() < 1e-14);
}

#[test]
fn identically_singular_is_rejected() {
    let mut r = polylin::random::rng(5);
    let p = polylin::random::polynomial(&mut r, ThreeTermBasis::chebyshev2(), 3, 2).unwrap();
    let q = polylin::random::with_common_zero_column(&p, 1).unwrap();
    assert!(det_poly(&q).unwrap().is_zero());
    assert!(matches!(reference_spectrum(&q), Err(Error::SingularPolynomial)));
}

#[test]
fn roots_of_known_polynomials() {
    let mut r = poly_roots(&ScalarPoly::new(vec![6.0, -5.0, 1.0])).unwrap();
    r.sort_by(|a, b| a.re.total_cmp(&b.re));
    assert!((r[0] - 2.0).norm() < 1e-13 && (r[1] - 3.0).norm() < 1e-13);
    let r = poly_roots(&ScalarPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
    assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14));
    assert!(poly_roots(&ScalarPoly::constant(3.0)).is_err());
}
