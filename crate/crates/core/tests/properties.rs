use coverage_depth::combinat::{int, ExactRational};
use coverage_depth::field::Field;
use coverage_depth::matrix::GeneratorMatrix;
use coverage_depth::moments::{expectation, moment, moment_tailsum, pmf, pmf_table};
use coverage_depth::recovery::{
    alpha_all_strands, alpha_from_beta, alpha_from_xi, beta_of, minimal_recovery_sets, survival,
    xi_from_minimal, AlphaProfile, EnumOptions,
};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Random full-rank `k x n` matrices over GF(2) or GF(3) with `n <= 12`.
fn matrices() -> impl Strategy<Value = GeneratorMatrix> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=12)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), 1usize..=n.min(5)))
        .prop_flat_map(|(q, n, k)| {
            (
                Just(q),
                proptest::collection::vec(proptest::collection::vec(0..q as u32, n), k),
            )
        })
        .prop_filter_map("rank deficient", |(q, rows)| {
            GeneratorMatrix::new(Field::prime(q).unwrap(), rows).ok()
        })
}

fn profiles(g: &GeneratorMatrix) -> Vec<AlphaProfile> {
    alpha_all_strands(
        g,
        EnumOptions {
            threads: 1,
            ..EnumOptions::default()
        },
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_beta_round_trip(g in matrices()) {
        for (i, p) in profiles(&g).into_iter().enumerate() {
            let betas: Vec<BigUint> = (1..=g.n()).map(|r| beta_of(&p, r)).collect();
            let back = alpha_from_beta(&betas, g.n(), Some(i + 1)).unwrap();
            prop_assert_eq!(back.values(), p.values());
            prop_assert!(p.satisfies_superset_growth());
            prop_assert_eq!(p.alpha(g.n()).clone(), BigUint::from(1u8));
        }
    }

    #[test]
    fn pmf_is_a_distribution(g in matrices()) {
        let p = &profiles(&g)[0];
        let table = pmf_table(p, 50);
        prop_assert_eq!(table.total(), int(1));
        prop_assert!(table.entries.iter().all(|v| *v >= int(0)));
        for r in 1..=50 {
            prop_assert_eq!(pmf(p, r), survival(p, r - 1) - survival(p, r));
        }
    }

    #[test]
    fn xi_reconstructs_alpha(g in matrices()) {
        let p = &profiles(&g)[0];
        let sets = minimal_recovery_sets(&g, 1).unwrap();
        // Inclusion-exclusion over minimal sets is exponential in their number.
        prop_assume!(sets.len() <= 16);
        let xi = xi_from_minimal(&sets).unwrap();
        prop_assert!(xi.is_consistent());
        let back = alpha_from_xi(&xi, g.n()).unwrap();
        prop_assert_eq!(back.values(), p.values());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tail_sum_brackets_closed_form(g in matrices()) {
        let p = &profiles(&g)[0];
        let eps: ExactRational = ExactRational::new(1.into(), 1_000_000_000.into());
        for order in 1..=3 {
            let exact = moment(p, order);
            let t = moment_tailsum(p, order, &eps);
            prop_assert!(t.sum <= exact);
            prop_assert!(&exact - &t.sum <= t.remainder);
            prop_assert!(t.remainder <= eps);
        }
        prop_assert_eq!(moment(p, 1), expectation(p));
    }
}
