use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use sumfree_core::group::{abelian_groups_of_order, enumerate_subgroups, quotient};
use sumfree_core::sumfree::{
    classify, construct_extremal, count_sf, count_sf_naive, is_sum_free, mu_exact, nu, schur_triples,
    schur_triples_fourier, CountOptions, GroupClass, MuOptions,
};
use sumfree_core::{GroupSet, GroupSpec};

fn groups_upto(n: u64) -> Vec<GroupSpec> {
    (1..=n).flat_map(abelian_groups_of_order).collect()
}

#[test]
fn sum_free_iff_no_triples_exhaustive() {
    for g in groups_upto(10) {
        for mask in 0u64..(1 << g.order()) {
            let a = GroupSet::from_mask(&g, mask);
            let direct = a.iter().all(|x| a.iter().all(|y| !a.contains(g.add(x, y))));
            assert_eq!(is_sum_free(&a), direct);
            assert_eq!(is_sum_free(&a), schur_triples(&a).triples == 0);
        }
    }
}

#[test]
fn mu_equals_nu_n_and_dominates_quotients() {
    let opts = MuOptions::default();
    for g in groups_upto(24).into_iter().filter(|g| g.order() > 1) {
        let mu = mu_exact(&g, &opts).unwrap();
        assert!(mu.optimal);
        assert_eq!(Ratio::from_integer(mu.size as i64), nu(&g).unwrap() * g.order() as i64, "{g}");
        for h in enumerate_subgroups(&g, usize::MAX).unwrap() {
            let q = quotient(&g, &h).unwrap();
            let mu_q = mu_exact(q.target(), &opts).unwrap().size;
            assert!(mu.size >= mu_q * h.order(), "{g} / {}", h.order());
        }
    }
}

#[test]
fn count_dominates_two_to_the_mu_and_matches_naive() {
    for g in groups_upto(16) {
        let c = count_sf(&g, &CountOptions::default()).unwrap();
        assert_eq!(c.count, BigUint::from(count_sf_naive(&g)), "{g}");
        let mu = mu_exact(&g, &MuOptions::default()).unwrap().size;
        assert!(c.count >= BigUint::one() << mu);
    }
}

#[test]
fn diananda_yap_for_type_one_and_two() {
    for g in groups_upto(40).into_iter().filter(|g| g.order() > 1) {
        let class = classify(&g).unwrap();
        if class == GroupClass::TypeIII {
            continue;
        }
        let mu = mu_exact(&g, &MuOptions::default()).unwrap().size;
        let cap = nu(&g).unwrap().max(Ratio::new(1, 3));
        assert!(Ratio::from_integer(mu as i64) <= cap * g.order() as i64, "{g}");
    }
}

#[test]
fn extremal_construction_meets_nu() {
    for g in groups_upto(60).into_iter().filter(|g| g.order() > 1) {
        let a = construct_extremal(&g).unwrap();
        assert!(is_sum_free(&a));
        assert_eq!(Ratio::from_integer(a.len() as i64), nu(&g).unwrap() * g.order() as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fourier_triple_count_matches_direct(gi in 0usize..400, bits in proptest::collection::vec(any::<bool>(), 64)) {
        let gs = groups_upto(64);
        let g = &gs[gi % gs.len()];
        let a = GroupSet::from_predicate(g, |x| bits[x]);
        prop_assert_eq!(schur_triples_fourier(&a), schur_triples(&a).triples);
    }

    #[test]
    fn delta_is_triples_over_n_squared(gi in 0usize..400, bits in proptest::collection::vec(any::<bool>(), 64)) {
        let gs = groups_upto(64);
        let g = &gs[gi % gs.len()];
        let a = GroupSet::from_predicate(g, |x| bits[x]);
        let r = schur_triples(&a);
        let n = g.order() as i64;
        prop_assert_eq!(r.delta, Ratio::new(r.triples as i64, n * n));
        prop_assert!(r.delta.to_f64().unwrap() <= 1.0);
    }
}
