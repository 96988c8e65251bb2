//! Eigenvalue exclusion: the block-symmetric pencil of v linearizes P exactly
//! when no root of Φ_k(λ)ᵀv is an eigenvalue of P. Here v = e_1 in the
//! Chebyshev basis, so the roots are ±1/√2.

use faer::c64;
use polylin::ansatz::check_linearization;
use polylin::basis::BasisKind;
use polylin::blocksym::dm_factor;
use polylin::random::RandomSpec;
use polylin::spectral::eigenvalue_exclusion;
use polylin::MatrixPolynomial;

fn report(label: &str, p: &MatrixPolynomial, v: &[f64]) -> polylin::Result<()> {
    let e = eigenvalue_exclusion(p, v, 1e-8)?;
    let rank = check_linearization(&dm_factor(p, v)?)?;
    println!(
        "{label}: Φᵀv coefficients {:?}, excluded {}, min distance {:.1e}, rank test {}",
        e.polynomial.coeffs(),
        e.excluded,
        e.min_distance,
        rank.is_strong_linearization
    );
    Ok(())
}

fn main() -> polylin::Result<()> {
    let v = [1.0, 0.0, 0.0];
    let p = RandomSpec { n: 2, k: 3, seed: 4 }.generate(&BasisKind::Chebyshev1)?;
    report("generic P", &p, &v)?;

    // shift P_0 so that the first column of P(1/√2) vanishes
    let at = p.evaluate(c64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    let mut coeffs = p.coeffs().to_vec();
    for i in 0..p.n() {
        coeffs[0][(i, 0)] -= at[(i, 0)].re;
    }
    let q = MatrixPolynomial::new(p.basis().clone(), coeffs)?;
    report("P with eigenvalue 1/√2", &q, &v)
}
