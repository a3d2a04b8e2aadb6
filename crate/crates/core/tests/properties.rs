use proptest::prelude::*;

use creg_core::bits::binomial;
use creg_core::hadamard::{kappa, theta, theta_inverse, MonomialMatrix};
use creg_core::spectral::krawtchouk;
use creg_core::symmetry::GraphAutomorphism;
use creg_core::{Code, DistanceDistribution};

fn automorphism(m: usize) -> impl Strategy<Value = GraphAutomorphism> {
    (Just((0..m).collect::<Vec<usize>>()).prop_shuffle(), 0u32..(1 << m))
        .prop_map(move |(p, t)| GraphAutomorphism::new(m, t, &p).unwrap())
}

fn monomial(m: usize) -> impl Strategy<Value = MonomialMatrix> {
    (
        Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
        proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m),
    )
        .prop_map(|(p, s)| MonomialMatrix::new(s, p).unwrap())
}

fn sized_pair() -> impl Strategy<Value = (usize, GraphAutomorphism, GraphAutomorphism, u32, u32)> {
    (1usize..=12).prop_flat_map(|m| (Just(m), automorphism(m), automorphism(m), 0u32..(1 << m), 0u32..(1 << m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn action_is_an_isometry((_m, x, _y, u, v) in sized_pair()) {
        prop_assert_eq!((x.apply_mask(u) ^ x.apply_mask(v)).count_ones(), (u ^ v).count_ones());
    }

    #[test]
    fn composition_and_inverse((_m, x, y, u, _v) in sized_pair()) {
        prop_assert_eq!(x.compose(&y).apply_mask(u), y.apply_mask(x.apply_mask(u)));
        prop_assert_eq!(x.inverse().apply_mask(x.apply_mask(u)), u);
        prop_assert_eq!(x.compose(&x.inverse()), GraphAutomorphism::identity(x.perm().len()));
    }

    #[test]
    fn theta_is_a_homomorphism((u, v) in (1usize..=12).prop_flat_map(|m| (monomial(m), monomial(m)))) {
        prop_assert_eq!(theta(&u.compose(&v)), theta(&u).compose(&theta(&v)));
        prop_assert_eq!(theta_inverse(&theta(&u)), u);
    }

    #[test]
    fn kappa_intertwines_rows(
        (u, row) in (1usize..=12).prop_flat_map(|m| (
            monomial(m),
            proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m),
        ))
    ) {
        let lhs = kappa(&u.apply_row(&row)).unwrap().bits();
        let rhs = theta(&u).apply_mask(kappa(&row).unwrap().bits());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn distance_distribution_sums_to_size(m in 1usize..=8, words in proptest::collection::btree_set(0u32..256, 1..20)) {
        let full = (1u32 << m) - 1;
        let code = Code::from_masks(m, words.iter().map(|w| w & full)).unwrap();
        let d: DistanceDistribution = code.distance_distribution();
        prop_assert!(d.is_well_formed());
        prop_assert_eq!(d.total(), creg_core::rational::int(code.size() as i64));
    }
}

proptest! {
    #[test]
    fn krawtchouk_identities(m in 1usize..=16, k in 0usize..=16, i in 0usize..=16) {
        prop_assume!(k <= m && i <= m);
        let kki = krawtchouk(m, k, i).unwrap();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(krawtchouk(m, k, m - i).unwrap(), sign * kki);
        prop_assert_eq!(
            binomial(m as u64, i as u64) as i128 * kki as i128,
            binomial(m as u64, k as u64) as i128 * krawtchouk(m, i, k).unwrap() as i128
        );
        prop_assert_eq!(krawtchouk(m, k, 0).unwrap() as u64, binomial(m as u64, k as u64));
    }
}
