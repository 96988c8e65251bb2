mod common;

use common::{block, int_matrix, max_abs_diff};
use faer::Mat;
use polylin::basis::DegreeGradedBasis;
use polylin::blocksym::{dm_factor, dm_pencil, is_block_symmetric};
use polylin::dense::Matrix;
use polylin::random::rng;
use polylin::MatrixPolynomial;
use rand::Rng;

fn lin(terms: &[(f64, &Matrix)]) -> Matrix {
    let n = terms[0].1.nrows();
    let mut out = Mat::zeros(n, n);
    for (c, m) in terms {
        out += *m * faer::Scale(*c);
    }
    out
}

// φ_0 = 1, φ_i = λφ_{i−1} + 1, k = 4, worked by hand from the symmetry
// equations of L(0)
#[test]
fn geometric_sum_basis_k4_blocks() {
    let mut r = rng(404);
    for _ in 0..20 {
        let n = r.gen_range(1..=3);
        let ps: Vec<Matrix> = (0..5).map(|_| int_matrix(&mut r, n)).collect();
        if ps[4].norm_max() == 0.0 {
            continue;
        }
        let v: Vec<f64> = (0..4).map(|_| r.gen_range(-5i32..=5) as f64).collect();
        let p = MatrixPolynomial::new(DegreeGradedBasis::geometric_sum(4), ps.clone()).unwrap();
        let f = dm_factor(&p, &v).unwrap();
        let (p0, p1, p2, p3, p4) = (&ps[0], &ps[1], &ps[2], &ps[3], &ps[4]);
        let p04 = p0 + p4;

        let b21 = lin(&[(-v[0], p2), (v[2], p4), (v[1], p3)]);
        let b31 = lin(&[(-v[0], p1), (v[3], p4), (v[2], p3)]);
        let b41 = lin(&[(-v[0], &p04), (-v[1], p4), (-v[2], p4), (-v[3], p4), (v[3], p3)]);
        let b32 = lin(&[(-v[1], p1), (v[2], p2), (1.0, &b41)]);
        let b42 = lin(&[(-v[1], &p04), (-1.0, &b21), (-1.0, &b31), (-1.0, &b41), (v[3], p2)]);
        let b43 = lin(&[(-v[2], &p04), (-1.0, &b31), (-1.0, &b32), (-1.0, &b42), (v[3], p1)]);

        let expect = [
            [lin(&[(v[1], p4)]), lin(&[(v[2], p4)]), lin(&[(v[3], p4)])],
            [b21.clone(), b31.clone(), b41.clone()],
            [b31, b32.clone(), b42.clone()],
            [b41, b42, b43],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                let got = block(&f.b, n, i, j);
                let scale = 1.0 + want.norm_max();
                assert!(max_abs_diff(&got, want) <= 1e-12 * scale, "block ({}, {}) differs", i + 1, j + 1);
            }
        }
        assert!(is_block_symmetric(&dm_pencil(&p, &v).unwrap(), 1e-12).symmetric);
    }
}
