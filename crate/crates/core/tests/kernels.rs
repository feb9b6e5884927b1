use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use simplicial_forests::linalg::{char_poly_shifted, det, rank, smith_normal_form, Matrix};

fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| [&row[..j], &row[j + 1..]].concat())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

fn square(max_n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-bound..=bound, n), n))
}

fn rect(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn big(m: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_i64_rows(m).unwrap()
}

proptest! {
    #[test]
    fn det_matches_cofactor_expansion(m in square(6, 20)) {
        prop_assert_eq!(det(&big(&m)).unwrap(), BigInt::from(cofactor_det(&m)));
    }

    #[test]
    fn det_generic_over_machine_and_big_integers(m in square(5, 9)) {
        let small = det(&Matrix::<i64>::from_i64_rows(&m).unwrap()).unwrap();
        let wide = det(&Matrix::<i128>::from_i64_rows(&m).unwrap()).unwrap();
        let arbitrary = det(&big(&m)).unwrap();
        prop_assert_eq!(BigInt::from(small), arbitrary.clone());
        prop_assert_eq!(BigInt::from(wide), arbitrary);
    }

    #[test]
    fn rank_is_transpose_invariant(m in rect(6, 3)) {
        let a = big(&m);
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        prop_assert!(rank(&a) <= a.rows().min(a.cols()));
    }

    #[test]
    fn rank_full_iff_det_nonzero(m in square(5, 2)) {
        let a = big(&m);
        prop_assert_eq!(rank(&a) == a.rows(), cofactor_det(&m) != 0);
    }

    #[test]
    fn char_poly_evaluates_to_shifted_det(m in square(5, 9), t in -6i64..=6) {
        let a = big(&m);
        let p = char_poly_shifted(&a).unwrap();
        prop_assert_eq!(p.degree(), Some(a.rows()));
        let t = BigInt::from(t);
        prop_assert_eq!(p.eval(&t), det(&a.shifted(&t).unwrap()).unwrap());
    }

    #[test]
    fn snf_product_is_abs_det(m in square(5, 6)) {
        let d = cofactor_det(&m);
        let s = smith_normal_form(&big(&m));
        prop_assert!(s.satisfies_divisibility());
        prop_assert_eq!(s.rank(), rank(&big(&m)));
        if d != 0 {
            prop_assert_eq!(s.nonzero_product(), BigInt::from(d).abs());
        }
    }

    #[test]
    fn snf_rank_on_rectangles(m in rect(5, 4)) {
        let a = big(&m);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.rank(), rank(&a));
        prop_assert!(s.invariant_factors.iter().all(|f| !f.is_negative()));
    }
}

#[test]
fn laplacian_char_poly_is_generic() {
    let l = [vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
    let p64 = char_poly_shifted(&Matrix::<i64>::from_i64_rows(&l).unwrap()).unwrap();
    let pbig = char_poly_shifted(&big(&l)).unwrap();
    // Triangle graph: x (x + 3)^2.
    assert_eq!(p64.coeffs(), &[0, 9, 6, 1]);
    assert_eq!(
        pbig.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
        ["0", "9", "6", "1"]
    );
}

#[test]
fn large_entries_stay_exact() {
    // Entries near 2^40: the determinant leaves i64 range.
    let m = [
        vec![1 << 40, 3, 0],
        vec![5, 1 << 40, 7],
        vec![0, 11, 1 << 40],
    ];
    assert_eq!(det(&big(&m)).unwrap(), BigInt::from(cofactor_det(&m)));
}
