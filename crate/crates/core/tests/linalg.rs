use lieforge::linalg::{self, int, rat, Rational, SparseMatrix, SparseVec};
use num_traits::Zero;
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => Just(int(0)),
        4 => (-5i64..=5).prop_map(int),
        2 => (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
    ]
}

fn matrix(max: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry(), c), r)
            .prop_map(|rows| SparseMatrix::from_dense(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_equals_transpose_rank(m in matrix(10)) {
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn nullspace_is_exact_and_complete(m in matrix(10)) {
        let ns = linalg::nullspace(&m);
        for v in &ns {
            prop_assert!(m.mul_sparse(v).is_zero());
        }
        prop_assert_eq!(linalg::span_rank(&ns), ns.len());
        prop_assert_eq!(linalg::rank(&m) + ns.len(), m.cols());
    }

    #[test]
    fn dense_and_sparse_routes_agree(m in matrix(9)) {
        prop_assert_eq!(linalg::rank_sparse(&m), linalg::rank_dense(&m.to_dense()));
        prop_assert_eq!(linalg::nullspace_sparse(&m), linalg::nullspace_dense(&m));
    }

    #[test]
    fn dense_and_sparse_agree_on_low_rank_products(a in matrix(18), b in matrix(18)) {
        // Same inner size so the product is defined; rank is at most that size.
        let k = a.cols().min(b.rows());
        let a = SparseMatrix::from_dense(&a.to_dense().iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>());
        let b = SparseMatrix::from_dense(&b.to_dense()[..k]);
        let m = a.mul(&b);
        prop_assert_eq!(linalg::rank_sparse(&m), linalg::rank_dense(&m.to_dense()));
        prop_assert_eq!(linalg::nullspace_sparse(&m), linalg::nullspace_dense(&m));
    }

    #[test]
    fn consistent_systems_are_solved(m in matrix(8), seed in proptest::collection::vec(entry(), 8)) {
        let x: Vec<Rational> = seed.into_iter().take(m.cols()).chain(std::iter::repeat(int(0))).take(m.cols()).collect();
        let b = m.mul_vec(&x);
        let y = linalg::solve(&m, &b).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn inconsistent_systems_are_rejected(m in matrix(6)) {
        // Append a zero row with a nonzero right side.
        let mut rows = m.to_dense();
        rows.push(vec![int(0); m.cols()]);
        let big = SparseMatrix::from_dense(&rows);
        let mut b = vec![int(0); big.rows()];
        *b.last_mut().unwrap() = int(1);
        prop_assert!(linalg::solve(&big, &b).is_none());
    }

    #[test]
    fn intersection_dimension_bounds(a in proptest::collection::vec(proptest::collection::vec(entry(), 5), 0..4),
                                     b in proptest::collection::vec(proptest::collection::vec(entry(), 5), 0..4)) {
        let a: Vec<SparseVec> = a.iter().map(|v| SparseVec::from_dense(v)).collect();
        let b: Vec<SparseVec> = b.iter().map(|v| SparseVec::from_dense(v)).collect();
        let d = linalg::intersection_dim(&a, &b);
        prop_assert!(d <= linalg::span_rank(&a).min(linalg::span_rank(&b)));
        prop_assert_eq!(linalg::intersection_dim(&a, &a), linalg::span_rank(&a));
    }
}

#[test]
fn identity_has_full_rank_and_trivial_kernel() {
    for n in [1, 5, 30, 70] {
        let id = SparseMatrix::identity(n);
        assert_eq!(linalg::rank(&id), n);
        assert!(linalg::nullspace(&id).is_empty());
    }
    let z = SparseMatrix::zeros(3, 4);
    assert_eq!(linalg::nullspace(&z).len(), 4);
    assert!(linalg::nullspace(&z).iter().all(|v| !v.is_zero()));
    assert!(Rational::zero().is_zero());
}
