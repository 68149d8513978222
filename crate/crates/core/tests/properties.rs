use binedge::closed_form::{self, deficiency_classification};
use binedge::graphs::complete_bipartite;
use binedge::ideals::{edge_binomials, minimal_primes};
use binedge::oracle::Oracle;
use binedge::series::series_from_betti;
use binedge::Execution;
use num_bigint::BigInt;
use proptest::prelude::*;

fn pair(max_m: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=max_m).prop_flat_map(|m| (Just(m), 1..=m))
}

proptest! {
    #[test]
    fn auslander_buchsbaum((m, n) in pair(30)) {
        let pd = closed_form::projective_dimension(m, n).unwrap();
        let depth = closed_form::depth(m, n).unwrap();
        prop_assert_eq!(pd + depth, 2 * (m + n));
        prop_assert!(depth <= closed_form::krull_dim(m, n).unwrap());
    }

    #[test]
    fn table_shape((m, n) in pair(12)) {
        let t = closed_form::betti_table(m, n).unwrap();
        prop_assert!(t.is_pure());
        prop_assert_eq!(t.projective_dimension(), Some(closed_form::projective_dimension(m, n).unwrap()));
        prop_assert_eq!(t.regularity(), Some(closed_form::regularity(m, n).unwrap()));
        prop_assert_eq!(t.get(1, 1), (m * n) as u64);
    }

    #[test]
    fn series_identity((m, n) in pair(10)) {
        let t = closed_form::betti_table(m, n).unwrap();
        prop_assert_eq!(series_from_betti(&t), closed_form::hilbert_series(m, n).unwrap());
    }

    #[test]
    fn hilbert_function_is_positive_and_starts_right((m, n) in pair(15)) {
        let h = closed_form::hilbert_series(m, n).unwrap().expand(8);
        prop_assert_eq!(&h[0], &BigInt::from(1));
        prop_assert_eq!(&h[1], &BigInt::from(2 * (m + n)));
        let quad = 2 * (m + n) * (2 * (m + n) + 1) / 2 - m * n;
        prop_assert_eq!(&h[2], &BigInt::from(quad));
        prop_assert!(h.iter().all(|c| *c > BigInt::from(0)));
    }

    #[test]
    fn swapping_parts_changes_nothing((m, n) in pair(9)) {
        let a = complete_bipartite(m, n).unwrap();
        let b = complete_bipartite(n, m).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
        prop_assert_eq!(
            minimal_primes(&a, Execution::Sequential).unwrap(),
            minimal_primes(&b, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn deficiency_bounds((m, n) in pair(20)) {
        let r = deficiency_classification(m, n).unwrap();
        if let Some(idx) = r.nonvanishing_indices() {
            prop_assert_eq!(idx.first().copied(), closed_form::depth(m, n).ok());
            prop_assert_eq!(idx.last().copied(), closed_form::krull_dim(m, n).ok());
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        }
        prop_assert_eq!(r.flags.cohen_macaulay, closed_form::depth(m, n) == closed_form::krull_dim(m, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_hilbert_matches_closed_form((m, n) in pair(4), d in 0usize..5) {
        prop_assume!(m + n <= 5);
        let j = edge_binomials(&complete_bipartite(m, n).unwrap());
        let got = Oracle::default().hilbert_function(&j, d).unwrap();
        let expected = closed_form::hilbert_series(m, n).unwrap().expand(d);
        prop_assert_eq!(BigInt::from(got), expected[d].clone());
    }
}
