//! The acceptance criteria, one function each. Every function is deterministic for a fixed seed.

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use sumfree_core::granular::granularize;
use sumfree_core::group::abelian_groups_of_order;
use sumfree_core::structure::{kneser_cover, type_i_cover, verify_kp, vosper_check};
use sumfree_core::sumfree::{
    classify, construct_extremal, count_sf, count_sf_naive, is_sum_free, main_term_type_i, mu_exact, nu,
    schur_triples, schur_triples_fourier, CountOptions, GroupClass, MuOptions,
};
use sumfree_core::{Error as CoreError, GroupSet, GroupSpec};
use sumfree_lp::closed_form::{closed_form_e0, e_lp, sweep_lem34, Parity};
use sumfree_lp::problem::k_of;
use sumfree_lp::{published_certificates, replay, Route};

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!("{} {:<26} {:>8.2}s  {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.seconds, self.detail)
    }
}

pub const NAMES: [&str; 10] = [
    "mu-census",
    "sf-count",
    "sigma-trend",
    "kp-exhaustive",
    "certificates",
    "lem34",
    "e0-closed-forms",
    "granularization",
    "structure-covers",
    "fourier",
];

fn timed(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Criterion {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Criterion { name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

fn groups_between(lo: u64, hi: u64) -> Vec<GroupSpec> {
    (lo..=hi).flat_map(abelian_groups_of_order).collect()
}

fn first_failure<T: Send>(items: Vec<Result<T, String>>) -> Result<Vec<T>, String> {
    items.into_iter().collect()
}

/// mu_exact equals ν(G)·n for every abelian group of order 2..=40.
pub fn mu_census() -> Criterion {
    timed("mu-census", || {
        let groups = groups_between(2, 40);
        let opts = MuOptions::default();
        let checked = first_failure(
            groups
                .par_iter()
                .map(|g| {
                    let r = mu_exact(g, &opts).map_err(|e| format!("{g}: {e}"))?;
                    let target = nu(g).map_err(|e| format!("{g}: {e}"))? * g.order() as i64;
                    if !r.optimal {
                        return Err(format!("{g}: node budget exhausted"));
                    }
                    if Ratio::from_integer(r.size as i64) != target {
                        return Err(format!("{g}: mu n = {} but nu n = {target}", r.size));
                    }
                    Ok(())
                })
                .collect(),
        )?;
        Ok(format!("{} groups, mu n = nu n in each", checked.len()))
    })
}

/// count_sf against the 2^n filter for every group of order ≤ 16, plus the small cyclic values.
pub fn sf_counting() -> Criterion {
    timed("sf-count", || {
        for (n, want) in [(2u64, 2u64), (3, 3), (4, 5), (5, 7)] {
            let c = count_sf(&GroupSpec::cyclic(n), &CountOptions::default()).map_err(|e| e.to_string())?;
            if c.count != BigUint::from(want) {
                return Err(format!("C_{n}: {} sum-free sets, expected {want}", c.count));
            }
        }
        let groups = groups_between(1, 16);
        let done = first_failure(
            groups
                .par_iter()
                .map(|g| {
                    let c = count_sf(g, &CountOptions::default()).map_err(|e| format!("{g}: {e}"))?;
                    let naive = count_sf_naive(g);
                    if c.count != BigUint::from(naive) {
                        return Err(format!("{g}: {} vs naive {naive}", c.count));
                    }
                    Ok(())
                })
                .collect(),
        )?;
        Ok(format!("{} groups agree with the naive filter", done.len()))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    pub n: u64,
    pub count: String,
    pub mu_n: usize,
    pub sigma: f64,
    pub mu: f64,
    pub ratio_to_main_term: f64,
}

/// |SF(C_n)| against 2^{μn} and the main term for even n ≤ 32.
pub fn sigma_rows() -> Result<Vec<SigmaRow>, String> {
    (1..=16u64)
        .into_par_iter()
        .map(|h| {
            let n = 2 * h;
            let g = GroupSpec::cyclic(n);
            let c = count_sf(&g, &CountOptions::default()).map_err(|e| format!("C_{n}: {e}"))?;
            let mu = mu_exact(&g, &MuOptions::default()).map_err(|e| format!("C_{n}: {e}"))?;
            let main = main_term_type_i(&g).map_err(|e| format!("C_{n}: {e}"))?;
            let count_r = num_rational::BigRational::from_integer(c.count.clone().into());
            let ratio = (count_r / main).to_f64().unwrap_or(f64::NAN);
            Ok(SigmaRow {
                n,
                count: c.count.to_string(),
                mu_n: mu.size,
                sigma: c.sigma,
                mu: mu.size as f64 / n as f64,
                ratio_to_main_term: ratio,
            })
        })
        .collect()
}

pub fn sigma_trend() -> Criterion {
    timed("sigma-trend", || {
        let rows = sigma_rows()?;
        for r in &rows {
            let count: BigUint = r.count.parse().expect("decimal");
            if count < BigUint::one() << r.mu_n {
                return Err(format!("C_{}: |SF| = {} below 2^{}", r.n, r.count, r.mu_n));
            }
            if r.sigma < r.mu || r.ratio_to_main_term.is_nan() || r.ratio_to_main_term <= 0.0 {
                return Err(format!("C_{}: sigma {} mu {} ratio {}", r.n, r.sigma, r.mu, r.ratio_to_main_term));
            }
        }
        let last = rows.last().expect("rows");
        Ok(format!("even n <= 32: |SF| >= 2^(mu n), sigma >= mu; |SF|/main term at n = 32 is {:.3}", last.ratio_to_main_term))
    })
}

fn kp_all_in(g: &GroupSpec) -> Result<u64, String> {
    let n = g.order();
    let mut cases = 0u64;
    for ma in 1u64..(1 << n) {
        let a = GroupSet::from_mask(g, ma);
        for mb in 1u64..(1 << n) {
            let b = GroupSet::from_mask(g, mb);
            for t in 0..=a.len().min(b.len()) {
                let r = verify_kp(&a, &b, t).map_err(|e| e.to_string())?;
                if !r.ok {
                    return Err(format!("{g}: A={:?} B={:?} t={t}: {} < {}", a.to_vec(), b.to_vec(), r.lhs, r.rhs));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Pollard–Kneser: exhaustive in orders ≤ 7, then `random` seeded cases in orders ≤ 16.
pub fn pollard_kneser(seed: u64, random: u64) -> Criterion {
    timed("kp-exhaustive", || {
        let small = groups_between(1, 7);
        let exhaustive: u64 = first_failure(small.par_iter().map(kp_all_in).collect())?.iter().sum();
        let pool = groups_between(1, 16);
        let chunks = 100u64;
        let per = random / chunks;
        let extra = random % chunks;
        let sampled: u64 = first_failure(
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(c));
                    let todo = per + u64::from(c < extra);
                    for _ in 0..todo {
                        let g = &pool[rng.gen_range(0..pool.len())];
                        let full = (1u64 << g.order()) - 1;
                        let a = GroupSet::from_mask(g, rng.gen_range(1..=full));
                        let b = GroupSet::from_mask(g, rng.gen_range(1..=full));
                        let t = rng.gen_range(0..=a.len().min(b.len()));
                        let r = verify_kp(&a, &b, t).map_err(|e| e.to_string())?;
                        if !r.ok {
                            return Err(format!("{g}: A={:?} B={:?} t={t}", a.to_vec(), b.to_vec()));
                        }
                    }
                    Ok(todo)
                })
                .collect(),
        )?
        .iter()
        .sum();
        Ok(format!("{exhaustive} exhaustive and {sampled} random cases, 0 violations"))
    })
}

/// Every shipped certificate replays to a bound at least its claim.
pub fn certificate_replay(bits: u32) -> Criterion {
    timed("certificates", || {
        let certs = published_certificates();
        let replays = first_failure(
            certs.par_iter().map(|c| replay(c, bits).map_err(|e| format!("{}: {e}", c.label))).collect(),
        )?;
        if let Some(bad) = replays.iter().find(|r| r.bound < r.claimed) {
            return Err(format!("{}: bound below claim", bad.label));
        }
        let count = |route| replays.iter().filter(|r| r.route == route).count();
        Ok(format!(
            "{}/{} certified ({} verbatim, {} tau-repaired, {} regenerated)",
            replays.len(),
            certs.len(),
            count(Route::Verbatim),
            count(Route::Repaired),
            count(Route::Regenerated)
        ))
    })
}

/// The closed-form sweep over q < 1000 gives the three exception lists.
pub fn lem34_sweep(bits: u32) -> Criterion {
    timed("lem34", || {
        let s = sweep_lem34(1000, true, bits).map_err(|e| e.to_string())?;
        let want: [&[u64]; 3] = [&[7, 13, 19], &[7, 13, 19, 31], &[7, 13, 19, 31, 37, 43, 49, 61, 67, 73]];
        let got = [&s.small_l[..], &s.l_k_minus_1[..], &s.l_k[..]];
        if got != want {
            return Err(format!("lists {:?} / {:?} / {:?}", s.small_l, s.l_k_minus_1, s.l_k));
        }
        Ok(format!("{} cells; lists {:?} / {:?} / {:?}", s.cells, s.small_l, s.l_k_minus_1, s.l_k))
    })
}

/// Closed forms for E(0) against the LP minimum, q ≡ 1 (mod 6), q ≤ 100, every 0 ≤ l ≤ k.
pub fn e0_closed_forms() -> Criterion {
    timed("e0-closed-forms", || {
        let mut worst: f64 = 0.0;
        let mut cells = 0;
        for q in (7..=100u64).step_by(6) {
            for l in 0..=k_of(q).map_err(|e| e.to_string())? {
                let closed = closed_form_e0(q, Parity::of(l), 96).map_err(|e| e.to_string())?;
                let lp = e_lp(q, l, 0.0).map_err(|e| e.to_string())?;
                let err = (closed.mid_f64() - lp).abs();
                worst = worst.max(err);
                cells += 1;
                if err > 1e-9 {
                    return Err(format!("q={q} l={l}: closed {} vs LP {lp}", closed.mid_f64()));
                }
            }
        }
        Ok(format!("{cells} (q, l) cells, max deviation {worst:.2e}"))
    })
}

/// Greedy random sum-free set.
pub fn random_sum_free(g: &GroupSpec, rng: &mut ChaCha8Rng) -> GroupSet {
    let mut a = GroupSet::empty(g);
    let n = g.order();
    for _ in 0..4 * n {
        let x = rng.gen_range(0..n);
        if a.contains(x) {
            continue;
        }
        a.insert(x);
        if !is_sum_free(&a) {
            a.remove(x);
        }
    }
    a
}

/// 100 successful granularizations of random sum-free sets in groups of order ≤ 200.
pub fn granularization(seed: u64) -> Criterion {
    timed("granularization", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let eps = Ratio::new(1, 4);
        let (mut runs, mut attempts) = (0, 0);
        let mut worst_residual: f64 = 0.0;
        while runs < 100 {
            attempts += 1;
            if attempts > 1000 {
                return Err(format!("only {runs} successful runs in 1000 attempts"));
            }
            let n = rng.gen_range(2..=200u64);
            let gs = abelian_groups_of_order(n);
            let g = &gs[rng.gen_range(0..gs.len())];
            let a = random_sum_free(g, &mut rng);
            match granularize(&a, 2, 1, eps) {
                Ok(r) => {
                    if !r.all_ok() {
                        return Err(format!(
                            "{g} A={:?}: removed {} / {:.3}, schur {} / {:.3}, residual {:.3e} / {:.3e}",
                            a.to_vec(),
                            r.removed,
                            r.removed_bound,
                            r.schur_a_prime,
                            r.schur_bound,
                            r.residual,
                            r.residual_bound
                        ));
                    }
                    worst_residual = worst_residual.max(r.residual / r.residual_bound);
                    runs += 1;
                }
                Err(CoreError::ConstructionFailure(_)) => {}
                Err(e) => return Err(format!("{g}: {e}")),
            }
        }
        Ok(format!("{runs} runs in {attempts} attempts, max residual / (delta n) = {worst_residual:.3}"))
    })
}

fn kneser_in(g: &GroupSpec) -> Result<usize, String> {
    let n = g.order() as i64;
    let one = Ratio::from_integer(1);
    let mut sets = 0;
    for mask in 1u64..(1 << g.order()) {
        let a = GroupSet::from_mask(g, mask);
        if Ratio::from_integer(a.len() as i64) < Ratio::new(n, 3) + one || !is_sum_free(&a) {
            continue;
        }
        let c = kneser_cover(&a, one).map_err(|e| format!("{g} {:?}: {e}", a.to_vec()))?;
        let covered = a.is_subset(&c.quotient.preimage(&c.image));
        if c.stabilizer.order() < 3 || !is_sum_free(&c.image) || !covered {
            return Err(format!("{g} {:?}: cover conclusions fail", a.to_vec()));
        }
        sets += 1;
    }
    Ok(sets)
}

fn vosper_all(p: u64) -> Result<usize, String> {
    let g = GroupSpec::cyclic(p);
    let k = (p - 2) / 3;
    let mut sets = 0;
    for mask in 1u64..(1 << p) {
        if u64::from(mask.count_ones()) != k + 1 {
            continue;
        }
        let b = GroupSet::from_mask(&g, mask);
        if is_sum_free(&b) {
            vosper_check(&b).map_err(|e| format!("Z/{p} {:?}: {e}", b.to_vec()))?;
            sets += 1;
        }
    }
    Ok(sets)
}

/// Kneser covers in orders ≤ 16, Vosper dilates for p ∈ {5, 11, 17, 23}, type I covers of the extremal sets.
pub fn structure_covers() -> Criterion {
    timed("structure-covers", || {
        let kneser: usize = first_failure(groups_between(1, 16).par_iter().map(kneser_in).collect())?.iter().sum();
        let vosper: usize = first_failure([5u64, 11, 17, 23].par_iter().map(|&p| vosper_all(p)).collect())?.iter().sum();
        let mut type_i = 0;
        for g in groups_between(2, 40) {
            if !matches!(classify(&g), Ok(GroupClass::TypeI(_))) {
                continue;
            }
            let a = construct_extremal(&g).map_err(|e| format!("{g}: {e}"))?;
            let c = type_i_cover(&a).map_err(|e| format!("{g}: {e}"))?;
            let middle = c.middle();
            if !a.iter().all(|x| middle.contains(&c.hom.apply(&g, x))) {
                return Err(format!("{g}: cover misses an element"));
            }
            type_i += 1;
        }
        Ok(format!("{kneser} Kneser covers, {vosper} Vosper sets, {type_i} type I covers"))
    })
}

/// Fourier Schur counts and Parseval on `per_group` random sets per group of order ≤ 64.
pub fn fourier_consistency(seed: u64, per_group: usize) -> Criterion {
    timed("fourier", || {
        let groups = groups_between(1, 64);
        let done = first_failure(
            groups
                .par_iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((i as u64) << 32));
                    let n = g.order();
                    let mut worst: f64 = 0.0;
                    for _ in 0..per_group {
                        let density: f64 = rng.gen();
                        let a = GroupSet::from_predicate(g, |_| rng.gen::<f64>() < density);
                        let direct = schur_triples(&a).triples;
                        let fourier = schur_triples_fourier(&a);
                        if direct != fourier {
                            return Err(format!("{g} {:?}: {direct} vs {fourier}", a.to_vec()));
                        }
                        let energy: f64 = a.fourier().iter().map(|z| z.norm_sqr()).sum();
                        let want = (n * a.len()) as f64;
                        let rel = if want.is_zero() { energy } else { (energy - want).abs() / want };
                        worst = worst.max(rel);
                        if rel > 1e-6 {
                            return Err(format!("{g}: Parseval off by {rel:e}"));
                        }
                    }
                    Ok(worst)
                })
                .collect(),
        )?;
        let worst = done.iter().copied().fold(0.0, f64::max);
        Ok(format!("{} groups x {per_group} sets, max Parseval error {worst:.1e}", done.len()))
    })
}

/// Runs one criterion by name with the acceptance parameters.
pub fn run_named(name: &str, seed: u64, bits: u32) -> Option<Criterion> {
    Some(match name {
        "mu-census" => mu_census(),
        "sf-count" => sf_counting(),
        "sigma-trend" => sigma_trend(),
        "kp-exhaustive" => pollard_kneser(seed, 100_000),
        "certificates" => certificate_replay(bits),
        "lem34" => lem34_sweep(bits),
        "e0-closed-forms" => e0_closed_forms(),
        "granularization" => granularization(seed),
        "structure-covers" => structure_covers(),
        "fourier" => fourier_consistency(seed, 1000),
        _ => return None,
    })
}
