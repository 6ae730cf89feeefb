use num_rational::Ratio;
use proptest::prelude::*;
use sumfree_core::group::abelian_groups_of_order;
use sumfree_core::structure::{
    check_alpha_inequalities, kneser_cover, middle_pair_partition, r_table, verify_kp, verify_popular_sums_bound,
    vosper_check,
};
use sumfree_core::sumfree::{is_sum_free, schur_triples};
use sumfree_core::{GroupSet, GroupSpec};

fn groups_upto(n: u64) -> Vec<GroupSpec> {
    (1..=n).flat_map(abelian_groups_of_order).collect()
}

#[test]
fn kp_holds_exhaustively_up_to_order_seven() {
    for g in groups_upto(7) {
        let n = g.order();
        for ma in 1u64..(1 << n) {
            for mb in 1u64..(1 << n) {
                let (a, b) = (GroupSet::from_mask(&g, ma), GroupSet::from_mask(&g, mb));
                for t in 0..=a.len().min(b.len()) {
                    assert!(verify_kp(&a, &b, t).unwrap().ok, "{g} {ma:b} {mb:b} {t}");
                }
            }
        }
    }
}

#[test]
fn kneser_cover_on_large_sum_free_sets() {
    for g in groups_upto(16) {
        let n = g.order() as i64;
        for mask in 1u64..(1 << g.order()) {
            let a = GroupSet::from_mask(&g, mask);
            if Ratio::from_integer(a.len() as i64) < Ratio::new(n, 3) + 1 || !is_sum_free(&a) {
                continue;
            }
            let cover = kneser_cover(&a, Ratio::from_integer(1)).unwrap();
            assert!(cover.stabilizer.order() >= 3);
            assert!(is_sum_free(&cover.image));
            assert!(a.is_subset(&cover.quotient.preimage(&cover.image)));
        }
    }
}

#[test]
fn vosper_on_all_maximal_sets() {
    for p in [5u64, 11, 17] {
        let g = GroupSpec::cyclic(p);
        let k = (p - 2) / 3;
        for mask in 1u64..(1 << p) {
            if mask.count_ones() as u64 != k + 1 {
                continue;
            }
            let b = GroupSet::from_mask(&g, mask);
            if is_sum_free(&b) {
                vosper_check(&b).unwrap();
            }
        }
    }
}

#[test]
fn alpha_inequalities_on_sum_free_sets() {
    for g in groups_upto(16).into_iter().filter(|g| g.order() > 1) {
        for mask in 1u64..(1 << g.order()) {
            let a = GroupSet::from_mask(&g, mask);
            if is_sum_free(&a) {
                let r = check_alpha_inequalities(&a, Ratio::from_integer(0)).unwrap();
                assert!(r.all_pass(), "{g} {:?}: {:?}", a.to_vec(), r.clauses);
            }
        }
    }
}

#[test]
fn middle_partitions_exist() {
    for q in (7..=1000).step_by(6) {
        let pairs = middle_pair_partition(q).unwrap();
        assert_eq!(pairs.len() as u64, 2 * (q - 1) / 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn representation_counts_sum_to_product(gi in 0usize..200, ma in any::<u64>(), mb in any::<u64>()) {
        let gs = groups_upto(64);
        let g = &gs[gi % gs.len()];
        let (a, b) = (GroupSet::from_mask(g, ma), GroupSet::from_mask(g, mb));
        let t = r_table(&a, &b).unwrap();
        prop_assert_eq!(t.r.iter().map(|&x| x as usize).sum::<usize>(), a.len() * b.len());
    }

    #[test]
    fn kp_holds_on_random_triples(gi in 0usize..100, ma in any::<u64>(), mb in any::<u64>(), t in 1usize..17) {
        let gs = groups_upto(16);
        let g = &gs[gi % gs.len()];
        let (a, b) = (GroupSet::from_mask(g, ma), GroupSet::from_mask(g, mb));
        prop_assert!(verify_kp(&a, &b, t.min(a.len().min(b.len()))).unwrap().ok);
    }

    #[test]
    fn alpha_inequalities_with_measured_delta(gi in 0usize..200, m in any::<u64>()) {
        let gs: Vec<GroupSpec> = groups_upto(40).into_iter().filter(|g| g.order() > 1).collect();
        let g = &gs[gi % gs.len()];
        let a = GroupSet::from_mask(g, m);
        prop_assume!(!a.is_empty());
        let s = schur_triples(&a);
        let r = check_alpha_inequalities(&a, s.delta).unwrap();
        prop_assert!(r.all_pass(), "{:?}", r.clauses);
    }

    #[test]
    fn popular_sums_bound(gi in 0usize..200, ma in any::<u64>(), mb in any::<u64>(), k in 1u32..8) {
        let gs = groups_upto(64);
        let g = &gs[gi % gs.len()];
        let (a, b) = (GroupSet::from_mask(g, ma), GroupSet::from_mask(g, mb));
        match verify_popular_sums_bound(&a, &b, k as f64) {
            Ok(c) => prop_assert!(c.ok),
            Err(sumfree_core::Error::Premise(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
