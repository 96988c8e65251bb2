mod common;

use faer::c64;
use polylin::basis::ThreeTermBasis;
use polylin::blocksym::dm_pencil;
use polylin::random::{self, rng};
use polylin::spectral::{eigenvalue_exclusion, pencil_regularity};
use polylin::MatrixPolynomial;

fn chebyshev_cubic(seed: u64, n: usize) -> MatrixPolynomial {
    let mut r = rng(seed);
    random::polynomial(&mut r, ThreeTermBasis::chebyshev1(), n, 3).unwrap()
}

// Zeroes column 0 of P(x) by adjusting P_0.
fn singular_at(p: &MatrixPolynomial, x: f64) -> MatrixPolynomial {
    let px = p.evaluate(c64::new(x, 0.0));
    let mut coeffs = p.coeffs().to_vec();
    for i in 0..p.n() {
        coeffs[0][(i, 0)] -= px[(i, 0)].re;
    }
    MatrixPolynomial::new(p.basis().clone(), coeffs).unwrap()
}

// Chebyshev, k = 3, v = e_1: Φ_3ᵀv = T_2 = 2λ² − 1, roots ±1/√2.
#[test]
fn chebyshev_e1_polynomial_and_roots() {
    let p = chebyshev_cubic(1, 2);
    let e = eigenvalue_exclusion(&p, &[1.0, 0.0, 0.0], 1e-8).unwrap();
    let c = e.polynomial.coeffs();
    assert!((c[0] + 1.0).abs() < 1e-15 && c[1].abs() < 1e-15 && (c[2] - 2.0).abs() < 1e-15);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut roots: Vec<f64> = e.roots.iter().map(|z| z.re).collect();
    roots.sort_by(f64::total_cmp);
    assert!((roots[0] + h).abs() < 1e-14 && (roots[1] - h).abs() < 1e-14);
}

#[test]
fn chebyshev_e1_verdict_tracks_regularity() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = [1.0, 0.0, 0.0];
    for seed in 0..8 {
        let p = chebyshev_cubic(seed, 2);
        let e = eigenvalue_exclusion(&p, &v, 1e-8).unwrap();
        assert!(e.excluded, "generic P should pass");
        assert!(pencil_regularity(&dm_pencil(&p, &v).unwrap(), 12, 1e-13, seed).regular);

        let x = if seed % 2 == 0 { h } else { -h };
        let q = singular_at(&p, x);
        let e = eigenvalue_exclusion(&q, &v, 1e-8).unwrap();
        assert!(!e.excluded, "±1/√2 is an eigenvalue of the modified P");
        assert!(e.min_distance < 1e-10);
        assert!(!pencil_regularity(&dm_pencil(&q, &v).unwrap(), 12, 1e-13, seed).regular);
    }
}

#[test]
fn infinite_eigenvalue_needs_nonzero_v1() {
    let mut r = rng(9);
    let p = random::polynomial(&mut r, ThreeTermBasis::legendre(), 2, 3).unwrap();
    let p = random::with_rank_deficient_leading(&mut r, &p, 1).unwrap();
    let e = eigenvalue_exclusion(&p, &[0.0, 1.0, 0.3], 1e-8).unwrap();
    assert_eq!(e.infinite_eigenvalues, 1);
    assert!(!e.excluded);
    assert!(!pencil_regularity(&dm_pencil(&p, &[0.0, 1.0, 0.3]).unwrap(), 12, 1e-13, 0).regular);
}
