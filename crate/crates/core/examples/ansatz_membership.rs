//! Pencils from random factors in both ansatz spaces, their membership
//! verdicts, and the rank test that decides whether they linearize P.

use polylin::ansatz::{check_linearization, make_m1, make_m2, verify_membership, Side};
use polylin::basis::BasisKind;
use polylin::random::{self, RandomSpec};

fn main() -> polylin::Result<()> {
    let p = RandomSpec { n: 2, k: 3, seed: 17 }.generate(&BasisKind::Legendre)?;
    let mut rng = random::rng(5);

    for side in [Side::M1, Side::M2] {
        let f = random::factor(&mut rng, 3, 2, side);
        let l = match side {
            Side::M1 => make_m1(&p, &f)?,
            Side::M2 => make_m2(&p, &f)?,
        };
        let own = verify_membership(&l, &p, side, 1e-8)?;
        let flipped = if side == Side::M1 { Side::M2 } else { Side::M1 };
        let other = verify_membership(&l, &p, flipped, 1e-8)?;
        let rank = check_linearization(&f)?;
        println!(
            "{side:?}: member {} (residual {:.1e}), other side {} (residual {:.1e}), rank {}/{} strong: {}",
            own.member,
            own.residual,
            other.member,
            other.residual,
            rank.rank,
            rank.rank + rank.deficiency,
            rank.is_strong_linearization
        );
    }

    let bad = random::rank_deficient_factor(&mut rng, 3, 2, Side::M1);
    let rank = check_linearization(&bad)?;
    println!(
        "duplicated column: rank {} deficiency {} strong: {}",
        rank.rank, rank.deficiency, rank.is_strong_linearization
    );
    Ok(())
}
