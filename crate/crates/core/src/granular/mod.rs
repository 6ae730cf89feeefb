//! Granularization: replacing a sum-free set by a union of cosets or short progressions
//! that carries the same large Fourier coefficients.

mod bounds;
mod grains;

pub use bounds::{
    count_coset_granular_sets, count_progression_granular_sets, family_bounds, max_product_bound, FamilyBounds, ProductBound,
};
pub use grains::{GrainKind, GrainStructure};

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Character, GroupSet, GroupSpec, Subgroup};
use crate::sumfree::{is_sum_free, schur_triples};

/// Nontrivial characters with `|Â(γ)| > threshold`.
pub fn large_spectrum(a: &GroupSet, threshold: f64) -> Result<Vec<Character>> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidArgument("threshold must be positive".into()));
    }
    let fhat = a.fourier();
    Ok(spectrum_from(&fhat, a.len(), threshold))
}

fn spectrum_from(fhat: &[Complex64], card: usize, threshold: f64) -> Vec<Character> {
    let r: Vec<Character> = (1..fhat.len()).filter(|&i| fhat[i].norm() > threshold).map(Character::new).collect();
    let parseval_cap = 4.0 * (fhat.len() * card) as f64 / (threshold * threshold);
    assert!(r.len() as f64 <= parseval_cap + 1e-9, "large spectrum exceeds the Parseval bound");
    r
}

/// `{x : γ(x) = 1 for all γ ∈ R}`.
pub fn annihilator(r: &[Character], g: &GroupSpec) -> Subgroup {
    let set = GroupSet::from_predicate(g, |x| r.iter().all(|c| c.phase(g, x) == 0));
    Subgroup::from_set(set).expect("joint kernels are subgroups")
}

/// Outcome of the scan for a direction d.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DirectionSearch {
    Found(usize),
    /// No valid d; `best` minimises `max_γ |arg γ(d)| / η_γ` over d ∉ G₁.
    NotFound { best: Option<usize>, worst_ratio: f64 },
}

/// Least `d ∉ G₁` with `|arg γ(d)| ≤ η_γ` for every listed γ.
pub fn find_direction(g: &GroupSpec, g1: &Subgroup, etas: &[(Character, f64)]) -> DirectionSearch {
    let ratio = |d: usize| etas.iter().map(|(c, eta)| c.arg(g, d).abs() / eta).fold(0.0f64, f64::max);
    let found = (0..g.order()).into_par_iter().find_first(|&d| !g1.contains(d) && ratio(d) <= 1.0);
    match found {
        Some(d) => DirectionSearch::Found(d),
        None => {
            let best = (0..g.order())
                .filter(|&d| !g1.contains(d))
                .map(|d| (ratio(d), d))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            DirectionSearch::NotFound { best: best.map(|b| b.1), worst_ratio: best.map_or(f64::INFINITY, |b| b.0) }
        }
    }
}

/// `g(γ) = |P|^{-1} Σ_{j=-(L-1)}^{L-1} cos(jβ)` for the symmetric progression with step angle β.
pub fn progression_g(beta: f64, l: usize) -> f64 {
    let s: f64 = (1..l).map(|j| (j as f64 * beta).cos()).sum();
    (1.0 + 2.0 * s) / (2 * l - 1) as f64
}

#[derive(Clone, Debug, Serialize)]
pub struct GranularizationResult {
    pub kind: &'static str,
    pub a_prime: Vec<usize>,
    pub p: Vec<usize>,
    pub d: Option<usize>,
    pub delta: f64,
    pub large_spectrum: usize,
    pub annihilator_order: usize,
    pub removed: usize,
    pub schur_a_prime: u64,
    /// Whether n exceeds `L′(10L/ε)^{2^{34} ε^{-8}}`.
    pub premise_71_holds: bool,
    pub removed_bound: f64,
    pub schur_bound: f64,
    /// `max_{γ ∈ R} |Â(γ)(1 − g(γ))|`, to be compared with δn.
    pub residual: f64,
    pub residual_bound: f64,
}

impl GranularizationResult {
    pub fn removed_ok(&self) -> bool {
        self.removed as f64 <= self.removed_bound + 1e-9
    }

    pub fn schur_ok(&self) -> bool {
        self.schur_a_prime as f64 <= self.schur_bound + 1e-9
    }

    pub fn residual_ok(&self) -> bool {
        self.residual <= self.residual_bound + 1e-6
    }

    pub fn all_ok(&self) -> bool {
        self.removed_ok() && self.schur_ok() && self.residual_ok()
    }
}

/// The granularization with `δ = 2^{-16} ε⁴`.
pub fn granularize(a: &GroupSet, l: usize, l_prime: usize, eps: Ratio<i64>) -> Result<GranularizationResult> {
    let e = eps.to_f64().unwrap_or(0.0);
    granularize_with_delta(a, l, l_prime, eps, 2f64.powi(-16) * e.powi(4))
}

/// The same construction with a caller-chosen δ; the Schur bound becomes `2^{14} ε^{-3} δ n²`.
pub fn granularize_with_delta(
    a: &GroupSet,
    l: usize,
    l_prime: usize,
    eps: Ratio<i64>,
    delta: f64,
) -> Result<GranularizationResult> {
    let g = a.group();
    let n = g.order() as f64;
    let e = eps.to_f64().unwrap_or(0.0);
    if !(e > 0.0 && e < 0.5) {
        return Err(Error::InvalidArgument("eps must lie in (0, 1/2)".into()));
    }
    if l == 0 || l_prime == 0 {
        return Err(Error::InvalidArgument("L and L′ must be positive".into()));
    }
    if !is_sum_free(a) {
        return Err(Error::Premise("A is not sum-free".into()));
    }
    let fhat = a.fourier();
    let r = spectrum_from(&fhat, a.len(), delta * n / 2.0);
    let g1 = annihilator(&r, g);

    let (kind, structure, threshold, p, d) = if g1.order() >= l_prime {
        let structure = GrainStructure::cosets(&g1);
        let p: Vec<(usize, i64)> = g1.elements().iter().map(|x| (x, 0)).collect();
        ("coset", structure, e * g1.order() as f64 / 4.0, p, None)
    } else {
        let etas: Vec<(Character, f64)> = r
            .iter()
            .map(|c| {
                let mag = fhat[c.index].norm();
                let eta = (e * PI / 4.0).min((6.0 * delta * n / mag).sqrt()) / l as f64;
                (c.clone(), eta)
            })
            .collect();
        let d = match find_direction(g, &g1, &etas) {
            DirectionSearch::Found(d) => d,
            DirectionSearch::NotFound { best, worst_ratio } => {
                return Err(Error::ConstructionFailure(format!(
                    "|G₁| = {} < L′ = {l_prime} and no direction d exists (best {best:?}, arg/η = {worst_ratio:.3})",
                    g1.order()
                )));
            }
        };
        let structure = GrainStructure::progressions(g, d, l);
        let lm = l as i64 - 1;
        let p: Vec<(usize, i64)> = (-lm..=lm).map(|j| (g.mul(j, d), j)).collect();
        ("progression", structure, e * l as f64 / 8.0, p, Some(d))
    };

    let mut a_prime = GroupSet::empty(g);
    for grain in &structure.grains {
        if a.intersection(grain)?.len() as f64 >= threshold {
            a_prime = a_prime.union(grain)?;
        }
    }
    let removed = a.difference(&a_prime)?.len();
    let schur_a_prime = schur_triples(&a_prime).triples;

    let residual = r
        .iter()
        .map(|c| {
            let gval: Complex64 = p.iter().map(|&(b, _)| c.eval(g, b)).sum::<Complex64>() / p.len() as f64;
            (fhat[c.index] * (Complex64::new(1.0, 0.0) - gval)).norm()
        })
        .fold(0.0f64, f64::max);

    let premise_71_holds = n.ln() > (l_prime as f64).ln() + 2f64.powi(34) * e.powi(-8) * (10.0 * l as f64 / e).ln();
    let mut p_set: Vec<usize> = p.iter().map(|&(b, _)| b).collect();
    p_set.sort_unstable();
    p_set.dedup();
    Ok(GranularizationResult {
        kind,
        a_prime: a_prime.to_vec(),
        p: p_set,
        d,
        delta,
        large_spectrum: r.len(),
        annihilator_order: g1.order(),
        removed,
        schur_a_prime,
        premise_71_holds,
        removed_bound: e * n / 4.0,
        schur_bound: 2f64.powi(14) * e.powi(-3) * delta * n * n,
        residual,
        residual_bound: delta * n,
    })
}
