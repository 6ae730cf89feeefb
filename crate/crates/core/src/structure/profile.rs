use std::f64::consts::TAU;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{defect, Character, GroupSet, Subgroup};
use crate::sumfree::{nu, schur_triples};

/// The LP constant η.
pub const ETA: f64 = 1.0 / 8_388_608.0;

/// Densities of A on the cosets of the kernel of a character.
#[derive(Clone, Debug)]
pub struct CosetProfile {
    pub gamma: Character,
    pub q: u64,
    pub kernel: Subgroup,
    /// `|A ∩ H_j|` for j = 0..q, with `H_j = γ^{-1}(e^{2πij/q})`.
    pub counts: Vec<usize>,
    /// `Re Â(γ)`.
    pub re_value: f64,
}

impl CosetProfile {
    pub fn new(a: &GroupSet, gamma: Character) -> Self {
        let g = a.group();
        let q = gamma.order(g);
        let step = g.exponent() / q;
        let mut counts = vec![0usize; q as usize];
        let mut re_value = 0.0;
        for x in a.iter() {
            let t = gamma.phase(g, x);
            counts[(t / step) as usize] += 1;
            re_value += (TAU * t as f64 / g.exponent() as f64).cos();
        }
        let kernel = Subgroup::from_set(gamma.kernel(g)).expect("kernels are subgroups");
        CosetProfile { gamma, q, kernel, counts, re_value }
    }

    pub fn alpha(&self, j: usize) -> Ratio<i64> {
        Ratio::new(self.counts[j % self.q as usize] as i64, self.kernel.order() as i64)
    }

    pub fn alphas(&self) -> Vec<Ratio<i64>> {
        (0..self.q as usize).map(|j| self.alpha(j)).collect()
    }

    fn alpha_f(&self, j: usize) -> f64 {
        self.counts[j % self.q as usize] as f64 / self.kernel.order() as f64
    }

    /// `(q − 1)/6` when q ≡ 1 (mod 6).
    pub fn k(&self) -> Option<u64> {
        (self.q % 6 == 1 && self.q > 1).then(|| (self.q - 1) / 6)
    }

    /// `{k+1, …, 5k}` when q ≡ 1 (mod 6).
    pub fn middle(&self) -> Option<std::ops::RangeInclusive<u64>> {
        self.k().map(|k| k + 1..=5 * k)
    }
}

/// `β_i = 0` if `α_i ≤ κ`, else `(α_i − κ)/(1 + κ)`.
#[derive(Clone, Debug, Serialize)]
pub struct BetaProfile {
    pub betas: Vec<f64>,
    pub kappa: f64,
}

impl BetaProfile {
    pub fn new(profile: &CosetProfile, kappa: f64) -> Self {
        let betas = (0..profile.q as usize)
            .map(|i| {
                let a = profile.alpha_f(i);
                if a <= kappa {
                    0.0
                } else {
                    (a - kappa) / (1.0 + kappa)
                }
            })
            .collect();
        BetaProfile { betas, kappa }
    }
}

/// The nontrivial character minimising `Re Â`, ties to the least index, with its coset profile.
pub fn special_direction(a: &GroupSet) -> Result<(Character, CosetProfile)> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("A must be nonempty".into()));
    }
    let g = a.group();
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    let fhat = a.fourier();
    let tol = 1e-9 * (a.len() as f64).max(1.0);
    let min = fhat[1..].iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    let idx = (1..g.order()).find(|&i| fhat[i].re <= min + tol).expect("nontrivial characters exist");
    let gamma = Character::new(idx);
    let profile = CosetProfile::new(a, gamma.clone());
    Ok((gamma, profile))
}

pub fn kappa(delta: f64, q: u64) -> f64 {
    32.0 * delta.cbrt() * (q as f64).powf(2.0 / 3.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseResult {
    pub name: &'static str,
    pub status: ClauseStatus,
    /// Smallest margin over all instances; negative means violated.
    pub slack: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub q: u64,
    pub kappa: f64,
    pub alpha: f64,
    pub clauses: Vec<ClauseResult>,
}

impl AlphaReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }
}

const TOL: f64 = 1e-9;

fn clause(name: &'static str, slack: Option<f64>) -> ClauseResult {
    let status = match slack {
        None => ClauseStatus::NotApplicable,
        Some(s) if s >= -TOL => ClauseStatus::Pass,
        Some(_) => ClauseStatus::Fail,
    };
    ClauseResult { name, status, slack }
}

/// Evaluates the coset-density inequalities along the special direction for a set with at most δn² Schur triples.
pub fn check_alpha_inequalities(a: &GroupSet, delta: Ratio<i64>) -> Result<AlphaReport> {
    let g = a.group();
    let n = g.order() as f64;
    let triples = schur_triples(a).triples;
    if Ratio::from_integer(triples as i64) > delta * Ratio::from_integer((g.order() * g.order()) as i64) {
        return Err(Error::Premise(format!("{triples} Schur triples exceed δn²")));
    }
    let (_, p) = special_direction(a)?;
    let q = p.q as usize;
    let delta_f = delta.to_f64().unwrap_or(0.0);
    let kap = kappa(delta_f, p.q);
    let lambda = defect(g).1.to_f64().unwrap();
    let al: Vec<f64> = (0..q).map(|j| p.alpha_f(j)).collect();
    let alpha = a.len() as f64 / n;
    let mut clauses = Vec::new();

    let mut shift = f64::INFINITY;
    for l in (0..q).filter(|&l| al[l] > kap) {
        for j in 0..q {
            shift = shift.min(1.0 + kap - (al[j] + al[(j + l) % q]));
        }
    }
    clauses.push(clause("pair_shift", Some(shift)));

    let double = (0..q).map(|i| 1.0 + kap - (al[i] + al[2 * i % q])).fold(f64::INFINITY, f64::min);
    clauses.push(clause("pair_double", Some(double)));

    let mut triple = f64::INFINITY;
    for u in (0..q).filter(|&u| al[u] > kap) {
        for v in (0..q).filter(|&v| al[v] > kap) {
            let w = (u + v) % q;
            if al[w] > kap {
                triple = triple.min(1.0 + lambda + kap - (al[u] + al[v] + al[w]));
            }
        }
    }
    clauses.push(clause("popular_triple", Some(triple)));

    let nu_g = nu(g)?.to_f64().unwrap();
    let large = alpha >= nu_g - ETA / 8.0;
    let qf = q as f64;
    let nu_q = (1.0 - 1.0 / qf) / 3.0;
    let cosine = (large && kap <= ETA / (8.0 * qf)).then(|| {
        let s: f64 = (0..q).map(|j| al[j] * (TAU * j as f64 / qf).cos()).sum::<f64>() / qf;
        // strict inequality: a zero margin counts as a failure
        let m = 0.75 * ETA - (s + nu_q * nu_q / (1.0 - nu_q));
        if m > 0.0 {
            m
        } else {
            m.min(-2.0 * TOL)
        }
    });
    clauses.push(clause("cosine_mass", cosine));

    let mass = large.then(|| al.iter().sum::<f64>() - (nu_q - ETA / 8.0) * qf);
    clauses.push(clause("total_mass", mass));

    let fourier = (alpha * (1.0 - alpha) >= 1.0 / 6.0).then(|| (6.0 * delta_f - alpha * alpha / (1.0 - alpha)) * n - p.re_value);
    clauses.push(clause("fourier_minimum", fourier));

    Ok(AlphaReport { q: p.q, kappa: kap, alpha, clauses })
}

/// True iff `α_i ≤ 2κ` off the middle `{k+1, …, 5k}`.
pub fn check_essentially_middled(profile: &CosetProfile, kappa: f64) -> Result<bool> {
    let middle = profile
        .middle()
        .ok_or_else(|| Error::NotApplicable(format!("q = {} is not 1 mod 6", profile.q)))?;
    Ok((0..profile.q).filter(|i| !middle.contains(i)).all(|i| profile.alpha_f(i as usize) <= 2.0 * kappa))
}

/// Splits `{k+1, …, 5k}` into pairs `{i, 2i}` with `i ∈ {k+1..2k} ∪ {4k+1..5k}`; None if that fails.
pub fn middle_pair_partition(q: u64) -> Option<Vec<(u64, u64)>> {
    if q % 6 != 1 {
        return None;
    }
    let k = (q - 1) / 6;
    let pairs: Vec<(u64, u64)> = (k + 1..=2 * k).chain(4 * k + 1..=5 * k).map(|i| (i, 2 * i % q)).collect();
    let mut covered: Vec<u64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    covered.sort_unstable();
    (covered == (k + 1..=5 * k).collect::<Vec<_>>()).then_some(pairs)
}
