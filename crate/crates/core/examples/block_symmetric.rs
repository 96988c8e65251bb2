//! Block-symmetric pencils for the unit vectors in the Chebyshev basis,
//! built with scalar·matrix products only.

use faer::Mat;
use polylin::basis::ThreeTermBasis;
use polylin::blocksym::{dm_factor, dm_pencil, is_block_symmetric};
use polylin::MatrixPolynomial;

fn main() -> polylin::Result<()> {
    // scalar P = 5T_3 + 3T_2 + 2T_1 + 1 keeps the blocks readable
    let coeffs = [1.0, 2.0, 3.0, 5.0].iter().map(|&c| Mat::from_fn(1, 1, |_, _| c)).collect();
    let p = MatrixPolynomial::new(ThreeTermBasis::chebyshev1(), coeffs)?;
    for i in 0..3 {
        let mut v = vec![0.0; 3];
        v[i] = 1.0;
        let f = dm_factor(&p, &v)?;
        let l = dm_pencil(&p, &v)?;
        let sym = is_block_symmetric(&l, 1e-14);
        println!("v = e_{}: [v ⊗ I  B] =\n{:?}\nblock-symmetric: {}\n", i + 1, f.multiplier(), sym.symmetric);
    }
    Ok(())
}
