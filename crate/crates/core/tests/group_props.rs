use num_complex::Complex64;
use proptest::prelude::*;
use sumfree_core::group::{abelian_groups_of_order, dft, enumerate_subgroups, homs_to_zp, idft, prime_factors, Character};
use sumfree_core::{GroupSet, GroupSpec};

fn groups_upto(n: u64) -> Vec<GroupSpec> {
    (1..=n).flat_map(abelian_groups_of_order).collect()
}

fn group_and_mask(max_n: u64) -> impl Strategy<Value = (GroupSpec, Vec<bool>)> {
    let gs = groups_upto(max_n);
    (0..gs.len()).prop_flat_map(move |i| {
        let g = gs[i].clone();
        let n = g.order();
        (Just(g), proptest::collection::vec(any::<bool>(), n))
    })
}

fn to_set(g: &GroupSpec, mask: &[bool]) -> GroupSet {
    GroupSet::from_predicate(g, |x| mask[x])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parseval((g, mask) in group_and_mask(100)) {
        let a = to_set(&g, &mask);
        let energy: f64 = a.fourier().iter().map(|z| z.norm_sqr()).sum();
        let expected = (g.order() * a.len()) as f64;
        prop_assert!((energy - expected).abs() <= 1e-6 * expected.max(1.0));
    }

    #[test]
    fn dft_inverts((g, mask) in group_and_mask(100)) {
        let a = to_set(&g, &mask);
        let back = idft(&g, &dft(&g, &a.indicator()));
        for (x, z) in back.iter().enumerate() {
            prop_assert_eq!(z.re.round() as i64, a.contains(x) as i64);
            prop_assert!(z.im.abs() < 1e-6);
        }
    }

    #[test]
    fn characters_are_multiplicative(gi in 0usize..200, a in any::<u64>(), x in any::<u64>(), y in any::<u64>()) {
        let gs = groups_upto(100);
        let g = &gs[gi % gs.len()];
        let n = g.order() as u64;
        let (a, x, y) = ((a % n) as usize, (x % n) as usize, (y % n) as usize);
        let c = Character::new(a);
        let lhs = c.eval(g, g.add(x, y));
        let rhs = c.eval(g, x) * c.eval(g, y);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn add_is_associative_and_invertible(gi in 0usize..200, x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let gs = groups_upto(60);
        let g = &gs[gi % gs.len()];
        let n = g.order() as u64;
        let (x, y, z) = ((x % n) as usize, (y % n) as usize, (z % n) as usize);
        prop_assert_eq!(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
        prop_assert_eq!(g.add(x, g.neg(x)), 0);
        prop_assert_eq!(g.sub(g.add(x, y), y), x);
    }
}

/// Every subgroup as the closure of some subset; exponential, so only for small n.
fn naive_subgroup_count(g: &GroupSpec) -> usize {
    let n = g.order();
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..(1u64 << n) {
        let mut closed = vec![false; n];
        closed[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for y in (0..n).filter(|&y| mask >> y & 1 == 1) {
                let z = g.add(x, y);
                if !closed[z] {
                    closed[z] = true;
                    frontier.push(z);
                }
            }
        }
        seen.insert(closed);
    }
    seen.len()
}

#[test]
fn subgroup_enumeration_matches_closure_oracle() {
    for g in groups_upto(16) {
        let subs = enumerate_subgroups(&g, usize::MAX).unwrap();
        for h in &subs {
            let e = h.elements();
            assert!(e.contains(0));
            assert!(e.iter().all(|x| e.iter().all(|y| e.contains(g.sub(x, y)))), "{g}: not closed");
        }
        assert_eq!(subs.len(), naive_subgroup_count(&g), "{g}");
    }
}

#[test]
fn hom_counts_match_order_p_elements() {
    for g in groups_upto(100) {
        for p in prime_factors(g.order() as u64) {
            let homs = homs_to_zp(&g, p).unwrap();
            let order_p = g.elements().filter(|&x| g.element_order(x) == p).count();
            assert_eq!(homs.len() - 1, order_p, "{g}, p = {p}");
        }
    }
}

#[test]
fn canonical_forms_agree_for_isomorphic_presentations() {
    let a: GroupSpec = "7x7".parse().unwrap();
    let b: GroupSpec = "49".parse().unwrap();
    assert!(!a.is_isomorphic(&b));
    let c: GroupSpec = "2x3".parse().unwrap();
    assert!(c.is_isomorphic(&GroupSpec::cyclic(6)));
    let d: GroupSpec = "4x6".parse().unwrap();
    assert_eq!(d.canonical().factors(), &[2, 12]);
}

#[test]
fn fourier_of_full_group_is_a_delta() {
    let g: GroupSpec = "3x9".parse().unwrap();
    let f = GroupSet::full(&g).fourier();
    assert!((f[0] - Complex64::new(27.0, 0.0)).norm() < 1e-9);
    assert!(f[1..].iter().all(|z| z.norm() < 1e-9));
}
