//! The Chebyshev anchor pencil F for a cubic, and the identity
//! F(λ)(Φ_3(λ) ⊗ I) = e_1 ⊗ P(λ) at a sample point.

use faer::{c64, Mat};
use polylin::basis::ThreeTermBasis;
use polylin::pencil::anchor;
use polylin::MatrixPolynomial;

fn main() -> polylin::Result<()> {
    let coeffs = (0..4).map(|i| Mat::from_fn(2, 2, |r, c| (i * 4 + r * 2 + c) as f64 - 7.0)).collect();
    let p = MatrixPolynomial::new(ThreeTermBasis::chebyshev1(), coeffs)?;
    let f = anchor(&p)?;
    println!("X =\n{:?}", f.x());
    println!("Y =\n{:?}", f.y());

    let z = c64::new(0.4, -0.3);
    let (n, k) = (p.n(), p.degree());
    let phi = p.basis().phi_vector(k, z);
    let lz = f.eval(z);
    let pz = p.evaluate(z);
    let mut worst = 0.0f64;
    for blk in 0..k {
        for i in 0..n {
            for j in 0..n {
                let lhs: c64 = (0..k).map(|c| lz[(blk * n + i, c * n + j)] * phi[c]).sum();
                let rhs = if blk == 0 { pz[(i, j)] } else { c64::new(0.0, 0.0) };
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    println!("max |F(λ)(Φ ⊗ I) − e_1 ⊗ P(λ)| at λ = {z}: {worst:.2e}");
    Ok(())
}
