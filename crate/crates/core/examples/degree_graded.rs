//! A non-orthogonal degree-graded basis φ_i = λφ_{i−1} + 1: its anchor G and
//! a block-symmetric pencil found by solving the symmetry equations.

use polylin::basis::DegreeGradedBasis;
use polylin::blocksym::{dm_pencil, is_block_symmetric};
use polylin::oracle::compare_spectra;
use polylin::pencil::anchor;
use polylin::random;
use polylin::spectral::{pencil_eigen, polynomial_spectrum, spectrum_of};

fn main() -> polylin::Result<()> {
    let mut rng = random::rng(12);
    let p = random::polynomial(&mut rng, DegreeGradedBasis::geometric_sum(4), 2, 4)?;
    let g = anchor(&p)?;
    println!("G: X =\n{:?}\nY =\n{:?}", g.x(), g.y());

    let v = [1.0, -0.5, 0.25, 2.0];
    let l = dm_pencil(&p, &v)?;
    let sym = is_block_symmetric(&l, 1e-12);
    println!("block-symmetric: {} (relative asymmetry {:.1e})", sym.symmetric, sym.asymmetry / sym.scale);

    let cmp = compare_spectra(&spectrum_of(&pencil_eigen(&l)?), &polynomial_spectrum(&p)?, 1e-8);
    println!("same spectrum as the anchor: {} (max distance {:.1e})", cmp.matched, cmp.max_distance);
    Ok(())
}
