use chring::exact_linear::{kernel_basis, q, q_frac, rank_of_rows, rref, solve};
use chring::RatMatrix;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
            let rows: Vec<Vec<_>> = rows
                .into_iter()
                .map(|row| row.into_iter().map(q).collect())
                .collect();
            RatMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, piv) = rref(&m);
        let (rr, piv2) = rref(&r);
        prop_assert_eq!(r, rr);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn rank_plus_nullity(m in matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(), seed in proptest::collection::vec(-2i64..=2, 6)) {
        let x: Vec<_> = (0..m.cols()).map(|i| q(seed[i % seed.len()])).collect();
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

fn low_rank_product() -> impl Strategy<Value = (RatMatrix, usize)> {
    (65usize..90, 65usize..90, 1usize..12).prop_flat_map(|(r, c, k)| {
        let left = proptest::collection::vec(-4i64..=4, r * k);
        let right = proptest::collection::vec((-3i64..=3, 1i64..=3), k * c);
        (left, right).prop_map(move |(a, b)| {
            let a: Vec<Vec<_>> = a.chunks(k).map(|row| row.iter().map(|&x| q(x)).collect()).collect();
            let b: Vec<Vec<_>> = b.chunks(c).map(|row| row.iter().map(|&(n, d)| q_frac(n, d)).collect()).collect();
            (RatMatrix::from_rows(&a).mul(&RatMatrix::from_rows(&b)), k)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn large_rank_matches_rational_echelon((m, k) in low_rank_product()) {
        let rational = rank_of_rows(m.cols(), (0..m.rows()).map(|r| m.row(r).clone()));
        prop_assert_eq!(m.rank(), rational);
        prop_assert!(m.rank() <= k);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}
