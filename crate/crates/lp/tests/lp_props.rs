use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumfree_lp::cases::replay_all;
use sumfree_lp::closed_form::{closed_form_e0, e_lp, sweep_lem34, Parity};
use sumfree_lp::interval::pi_bracket;
use sumfree_lp::problem::{build_primal, eta, k_of};
use sumfree_lp::trig::{cos_pi, sin_pi};
use sumfree_lp::verify::duality_gap;
use sumfree_lp::{amended_certificates, cos_enclosure, published_certificates, replay, Interval, Route};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Points with coordinates in [1/4, 1/2], except those forced to zero, kept when feasible.
fn sample_feasible(
    q: u64,
    zeros: &[usize],
    extras_ok: impl Fn(&[BigRational]) -> bool,
    rng: &mut ChaCha8Rng,
    want: usize,
) -> Vec<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < want && tries < 200 * want {
        tries += 1;
        let beta: Vec<BigRational> = (0..q as usize)
            .map(|j| if zeros.contains(&j) { BigRational::zero() } else { rat(rng.gen_range(12..=24), 48) })
            .collect();
        if extras_ok(&beta) {
            out.push(beta);
        }
    }
    out
}

#[test]
fn weak_duality_on_sampled_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let replays = replay_all(&published_certificates(), 64).unwrap();
    for r in &replays {
        let c = &r.certificate;
        let p = build_primal(c.q, c.l, &c.extras, 64).unwrap();
        let zeros: Vec<usize> = c
            .extras
            .iter()
            .filter(|e| e.rhs.is_zero())
            .flat_map(|e| e.coeffs.keys().map(|&i| i % c.q as usize))
            .collect();
        let points = sample_feasible(c.q, &zeros, |b| p.is_feasible(b), &mut rng, 40);
        assert!(!points.is_empty(), "{}", c.label);
        for beta in &points {
            let gap = duality_gap(c, beta, 64).unwrap();
            assert!(gap.lo >= BigRational::zero(), "{}: gap {}", c.label, gap.lo_f64());
        }
    }
}

#[test]
fn every_published_certificate_reaches_its_claim() {
    let certs = published_certificates();
    assert_eq!(certs.len(), 22);
    let replays = replay_all(&certs, 96).unwrap();
    for r in &replays {
        assert!(r.bound >= r.claimed, "{}", r.label);
    }
    let route_of = |label: &str| replays.iter().find(|r| r.label == label).unwrap().route;
    let mut regenerated: Vec<&str> =
        replays.iter().filter(|r| r.route == Route::Regenerated).map(|r| r.label.as_str()).collect();
    regenerated.sort_unstable();
    assert_eq!(regenerated, ["q13_l2_c", "q67_l11", "q73_l12", "q7_l1_all", "q7_l1_b1", "q7_l1_b3"]);
    assert_eq!(route_of("q37_l6"), Route::Repaired);
    assert_eq!(route_of("q19_l2_b14"), Route::Repaired);
    assert_eq!(replays.iter().filter(|r| r.route == Route::Verbatim).count(), 14);
}

#[test]
fn amended_set_needs_no_regeneration() {
    let amended = amended_certificates();
    assert_eq!(amended.len(), 6);
    for c in &amended {
        let r = replay(c, 96).unwrap();
        assert_ne!(r.route, Route::Regenerated, "{}", c.label);
    }
}

#[test]
fn e0_closed_form_matches_lp() {
    for q in (7..=97u64).step_by(6) {
        let k = k_of(q).unwrap();
        for l in 0..=k {
            let closed = closed_form_e0(q, Parity::of(l), 96).unwrap();
            let brute = e_lp(q, l, 0.0).unwrap();
            assert!((closed.mid_f64() - brute).abs() < 1e-9, "q={q} l={l}");
        }
    }
}

#[test]
fn e_is_lipschitz_in_s() {
    let eta = 1.0 / 8_388_608.0;
    for q in (7..=97u64).step_by(6) {
        for l in 0..=k_of(q).unwrap() {
            let e0 = e_lp(q, l, 0.0).unwrap();
            let e_eta = e_lp(q, l, eta).unwrap();
            assert!(e_eta >= e0 - 3.0 * eta * q as f64 - 1e-12, "q={q} l={l}");
            assert!(e_eta <= e0 + 1e-12);
        }
    }
}

#[test]
fn sweep_reproduces_exception_lists() {
    let s = sweep_lem34(1000, true, 96).unwrap();
    assert_eq!(s.small_l, vec![7, 13, 19]);
    assert_eq!(s.l_k_minus_1, vec![7, 13, 19, 31]);
    assert_eq!(s.l_k, vec![7, 13, 19, 31, 37, 43, 49, 61, 67, 73]);
    assert!(s.max_width < 1e-20 && s.min_gap > 1e-6);
}

#[test]
fn unrestricted_sweep_adds_non_type_three_orders() {
    let s = sweep_lem34(100, false, 64).unwrap();
    assert!(s.l_k.contains(&55));
    assert!(s.failures.iter().any(|f| f.q == 25));
}

#[test]
fn eta_value() {
    assert_eq!(eta(), rat(1, 8_388_608));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arithmetic_contains_point_results(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let x = rat(a, b);
        let y = rat(c, d);
        let eps = rat(1, 1_000_000);
        let ix = Interval::new(&x - &eps, &x + &eps);
        let iy = Interval::new(&y - &eps, &y + &eps);
        prop_assert!((&ix + &iy).contains(&(&x + &y)));
        prop_assert!((&ix - &iy).contains(&(&x - &y)));
        prop_assert!((&ix * &iy).contains(&(&x * &y)));
        prop_assert!((-&ix).contains(&-x.clone()));
        prop_assert!(ix.round_out(20).contains(&x));
        if let Some(q) = ix.div(&iy) {
            if !y.is_zero() {
                prop_assert!(q.contains(&(&x / &y)));
            }
        }
    }

    #[test]
    fn cos_enclosures_are_consistent(j in 0i64..500, q in 1u64..500, bits in 24u32..120) {
        let c = cos_enclosure(j, q, bits);
        let f = (2.0 * std::f64::consts::PI * j as f64 / q as f64).cos();
        prop_assert!((c.mid_f64() - f).abs() < 1e-12 + c.hi_f64() - c.lo_f64());
        let w = c.width();
        prop_assert!(w <= rat(1, 1 << 20));
        // the double-angle identity holds on the enclosures
        let r = rat(j, q as i64);
        let half = cos_pi(&r, bits);
        let two = BigRational::from_integer(2.into());
        let doubled = &(&half * &half).scale(&two) - &Interval::point(BigRational::one());
        prop_assert!(doubled.lo <= c.hi && c.lo <= doubled.hi);
        let s = sin_pi(&r, bits);
        let one = &(&half * &half) + &(&s * &s);
        prop_assert!(one.contains(&BigRational::one()));
    }
}

#[test]
fn pi_bracket_is_tight() {
    let p = pi_bracket();
    assert!(p.contains_f64(std::f64::consts::PI) || (p.mid_f64() - std::f64::consts::PI).abs() < 1e-15);
    assert!(p.width() < rat(1, 1_000_000_000_000_000_000));
}
