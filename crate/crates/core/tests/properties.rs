mod common;

use common::{max_abs_diff, KINDS};
use faer::{c64, Mat};
use polylin::ansatz::{make_m1, make_m2, recover_factors, verify_membership, Side};
use polylin::basis::Basis;
use polylin::blocksym::dm_pencil;
use polylin::io;
use polylin::oracle::{det_poly, reference_spectrum, ScalarPoly};
use polylin::pencil::{anchor, block_transpose};
use polylin::random::{self, basis_of_kind, rng};
use polylin::MatrixPolynomial;
use proptest::prelude::*;

fn instance(seed: u64, n: usize, k: usize, kind: usize) -> MatrixPolynomial {
    let mut r = rng(seed);
    let basis: Basis = if kind == KINDS.len() {
        random::degree_graded_basis(&mut r, k).into()
    } else {
        basis_of_kind(&mut r, &KINDS[kind], k).unwrap()
    };
    random::polynomial(&mut r, basis, n, k).unwrap()
}

fn params() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (any::<u64>(), 1usize..=3, 2usize..=5, 0..=KINDS.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ansatz_identity_both_sides((seed, n, k, kind) in params(), side_m2 in any::<bool>()) {
        let p = instance(seed, n, k, kind);
        let side = if side_m2 { Side::M2 } else { Side::M1 };
        let f = random::factor(&mut rng(seed ^ 1), k, n, side);
        let l = match side { Side::M1 => make_m1(&p, &f), Side::M2 => make_m2(&p, &f) }.unwrap();
        let m = verify_membership(&l, &p, side, 1e-12).unwrap();
        prop_assert!(m.member, "residual {}", m.residual);
        for (a, b) in m.v.iter().zip(&f.v) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn block_transpose_is_an_involution(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=5) {
        let a = random::uniform_matrix(&mut rng(seed), k * n, k * n);
        let t = block_transpose(a.as_ref(), n).unwrap();
        prop_assert_eq!(block_transpose(t.as_ref(), n).unwrap(), a.clone());
        // block (i, j) of the transpose is block (j, i) of the original
        for i in 0..k {
            for j in 0..k {
                for r in 0..n {
                    for c in 0..n {
                        prop_assert_eq!(t[(i * n + r, j * n + c)], a[(j * n + r, i * n + c)]);
                    }
                }
            }
        }
    }

    #[test]
    fn block_symmetric_pencil_is_linear_in_v((seed, n, k, kind) in params(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let p = instance(seed, n, k, kind);
        let mut r = rng(seed ^ 2);
        let v = random::uniform_vector(&mut r, k);
        let w = random::uniform_vector(&mut r, k);
        let mix: Vec<f64> = v.iter().zip(&w).map(|(x, y)| a * x + b * y).collect();
        prop_assume!(mix.iter().any(|x| x.abs() > 1e-3));
        let lv = dm_pencil(&p, &v).unwrap();
        let lw = dm_pencil(&p, &w).unwrap();
        let lm = dm_pencil(&p, &mix).unwrap();
        let combo = lv.combine(a, &lw, b).unwrap();
        let scale = 1.0 + combo.x().norm_max().max(combo.y().norm_max());
        prop_assert!(max_abs_diff(lm.x(), combo.x()) <= 1e-10 * scale);
        prop_assert!(max_abs_diff(lm.y(), combo.y()) <= 1e-10 * scale);
    }

    #[test]
    fn block_symmetric_pencil_has_equal_factors((seed, n, k, kind) in params()) {
        let p = instance(seed, n, k, kind);
        let v = random::uniform_vector(&mut rng(seed ^ 3), k);
        let l = dm_pencil(&p, &v).unwrap();
        let f1 = recover_factors(&l, &p, Side::M1).unwrap();
        let f2 = recover_factors(&l, &p, Side::M2).unwrap();
        // the pencil is determined by v, so both sides give back the same data
        for ((x, y), z) in f1.v.iter().zip(&f2.v).zip(&v) {
            prop_assert!((x - z).abs() <= 1e-10 && (y - z).abs() <= 1e-10);
        }
        prop_assert!(max_abs_diff(&f1.b, &f2.b) <= 1e-10 * (1.0 + f1.b.norm_max()));
    }

    #[test]
    fn json_round_trip((seed, n, k, kind) in params()) {
        let p = instance(seed, n, k, kind);
        let q = io::parse_problem(&io::problem_to_json(&p)).unwrap();
        prop_assert_eq!(p.coeffs(), q.coeffs());
        prop_assert_eq!(p.basis(), q.basis());
        let l = anchor(&p).unwrap();
        let m = io::parse_pencil(&io::pencil_to_json(&l)).unwrap();
        prop_assert_eq!(l, m);
        let f = random::factor(&mut rng(seed), k, n, Side::M2);
        let g = io::parse_factor(&io::factor_to_json(&f)).unwrap();
        prop_assert_eq!(f.v, g.v);
        prop_assert_eq!(f.b, g.b);
        prop_assert_eq!(f.side, g.side);
    }

    #[test]
    fn determinant_degree_is_at_most_kn((seed, n, k, kind) in params()) {
        let p = instance(seed, n, k, kind);
        let d = det_poly(&p).unwrap();
        prop_assert!(d.degree().unwrap_or(0) <= k * n);
        // generic data: exactly kn, no infinite eigenvalues
        let s = reference_spectrum(&p).unwrap();
        prop_assert_eq!(s.total(), k * n);
        let z = c64::new(0.37, -0.21);
        let direct = p.evaluate(z).determinant();
        prop_assert!((d.eval(z) - direct).norm() <= 1e-9 * (1.0 + direct.norm()));
    }

    #[test]
    fn diagonal_polynomial_determinant_factors((seed, n, k, kind) in params()) {
        let p = instance(seed, n, k, kind);
        let coeffs: Vec<_> = p.coeffs().iter().map(|c| Mat::from_fn(n, n, |i, j| if i == j { c[(i, j)] } else { 0.0 })).collect();
        let diag = MatrixPolynomial::new(p.basis().clone(), coeffs.clone()).unwrap();
        let mut prod = ScalarPoly::constant(1.0);
        for i in 0..n {
            let entry: Vec<_> = coeffs.iter().map(|c| Mat::from_fn(1, 1, |_, _| c[(i, i)])).collect();
            let e = MatrixPolynomial::new(p.basis().clone(), entry).unwrap();
            prod = prod.mul(&det_poly(&e).unwrap());
        }
        let d = det_poly(&diag).unwrap();
        let scale = 1.0 + prod.max_abs();
        let len = d.coeffs().len().max(prod.coeffs().len());
        for m in 0..len {
            let a = d.coeffs().get(m).copied().unwrap_or(0.0);
            let b = prod.coeffs().get(m).copied().unwrap_or(0.0);
            prop_assert!((a - b).abs() <= 1e-10 * scale);
        }
    }
}
