//! A singular P (common zero column). Pencils with a full-rank factor are
//! still strong linearizations, and the regularity test reports them as
//! singular pencils.

use polylin::ansatz::{check_linearization, make_m1, Side};
use polylin::basis::BasisKind;
use polylin::random::{self, RandomSpec};
use polylin::spectral::pencil_regularity;

fn main() -> polylin::Result<()> {
    let p = RandomSpec { n: 3, k: 3, seed: 2 }.generate(&BasisKind::Monomial)?;
    let q = random::with_common_zero_column(&p, 1)?;
    let mut rng = random::rng(9);
    for _ in 0..3 {
        let f = random::factor(&mut rng, 3, 3, Side::M1);
        let rank = check_linearization(&f)?;
        let reg = pencil_regularity(&make_m1(&q, &f)?, 12, 1e-13, 0);
        println!(
            "rank {} of 9, pencil regular: {} (max normalized |det| {:.1e})",
            rank.rank, reg.regular, reg.max_ratio
        );
    }
    Ok(())
}
