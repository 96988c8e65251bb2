//! Eigenvalues of a linearization against the determinant oracle, and
//! eigenvectors of P recovered from the pencil's eigenvectors.

use polylin::ansatz::{check_linearization, make_m1, Side};
use polylin::basis::BasisKind;
use polylin::oracle::{compare_spectra, reference_spectrum};
use polylin::random::{self, RandomSpec};
use polylin::spectral::{left_residual, pencil_eigen, recover_left, recover_right, spectrum_of};

fn main() -> polylin::Result<()> {
    let p = RandomSpec { n: 3, k: 3, seed: 23 }.generate(&BasisKind::Chebyshev2)?;
    let mut rng = random::rng(1);
    let f = loop {
        let f = random::factor(&mut rng, 3, 3, Side::M1);
        if check_linearization(&f)?.is_strong_linearization {
            break f;
        }
    };
    let triples = pencil_eigen(&make_m1(&p, &f)?)?;

    let cmp = compare_spectra(&spectrum_of(&triples), &reference_spectrum(&p)?, 1e-8);
    println!(
        "{} eigenvalues, matched with oracle: {} (max distance {:.1e})",
        triples.len(),
        cmp.matched,
        cmp.max_distance
    );

    for t in &triples {
        let right = recover_right(&p, t.eigenvalue, &t.right, 1e-6)?;
        let left = recover_left(&f.v, &t.left)?;
        println!(
            "{:>24}  ‖P(α)u‖ {:.1e}  ‖yᵀP(α)‖ {:.1e}",
            format!("{:.5}", t.eigenvalue.finite().expect("generic P has no infinite eigenvalues")),
            right.residual,
            left_residual(&p, t.eigenvalue, &left)
        );
    }
    Ok(())
}
