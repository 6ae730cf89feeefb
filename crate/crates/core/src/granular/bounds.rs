use std::collections::HashSet;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{enumerate_subgroups, GroupSet, GroupSpec};

#[derive(Clone, Debug, Serialize)]
pub struct FamilyBounds {
    /// log₂ of the granular-family bound, `3n/L`.
    #[serde(serialize_with = "crate::sumfree::ser_ratio")]
    pub granular_exponent: Ratio<i64>,
    /// `2^{3n/L}` when the exponent is an integer.
    #[serde(serialize_with = "ser_big")]
    pub granular_bound: Option<BigUint>,
    /// `L ≤ √n`.
    pub granular_applicable: bool,
    /// log₂ of the small-subset bound, `n√ρ`.
    pub subset_exponent: f64,
    /// `2^{n√ρ}` when the exponent is an integer.
    #[serde(serialize_with = "ser_big")]
    pub subset_bound: Option<BigUint>,
    /// `Σ_{k ≤ ρn} C(n, k)`, computed for n ≤ 20000.
    #[serde(serialize_with = "ser_big")]
    pub subset_count: Option<BigUint>,
    /// `1/n ≤ ρ < 1/2` and `ρ log₂(e/ρ) ≤ √ρ/2`.
    pub subset_applicable: bool,
}

fn ser_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

fn exact_sqrt(r: Ratio<i64>) -> Option<Ratio<i64>> {
    let (a, b) = (*r.numer(), *r.denom());
    let (sa, sb) = (a.sqrt(), b.sqrt());
    (sa * sa == a && sb * sb == b).then(|| Ratio::new(sa, sb))
}

fn pow2(e: Ratio<i64>) -> Option<BigUint> {
    (e.is_integer() && *e.numer() >= 0).then(|| BigUint::one() << e.to_integer() as usize)
}

pub fn family_bounds(n: u64, l: u64, rho: Ratio<i64>) -> Result<FamilyBounds> {
    if n == 0 || l == 0 {
        return Err(Error::InvalidArgument("n and L must be positive".into()));
    }
    if rho < Ratio::from_integer(0) {
        return Err(Error::InvalidArgument("rho must be nonnegative".into()));
    }
    let granular_exponent = Ratio::new(3 * n as i64, l as i64);
    let rho_f = rho.to_f64().unwrap_or(0.0);
    let sqrt = exact_sqrt(rho);
    let subset_exponent = match sqrt {
        Some(s) => (s * n as i64).to_f64().unwrap_or(f64::NAN),
        None => n as f64 * rho_f.sqrt(),
    };
    let subset_count = (n <= 20_000).then(|| {
        let kmax = (rho * n as i64).floor().to_integer().clamp(0, n as i64) as u64;
        let mut term = BigUint::one();
        let mut total = BigUint::one();
        for k in 1..=kmax {
            term = term * (n - k + 1) / k;
            total += &term;
        }
        total
    });
    let subset_applicable = rho_f > 0.0
        && rho_f * n as f64 >= 1.0
        && rho_f < 0.5
        && rho_f * (std::f64::consts::E / rho_f).log2() <= rho_f.sqrt() / 2.0;
    Ok(FamilyBounds {
        granular_exponent,
        granular_bound: pow2(granular_exponent),
        granular_applicable: l * l <= n,
        subset_exponent,
        subset_bound: sqrt.and_then(|s| pow2(s * n as i64)),
        subset_count,
        subset_applicable,
    })
}

/// Number of distinct sets that are unions of cosets of some subgroup of order at least L.
pub fn count_coset_granular_sets(g: &GroupSpec, l: usize) -> Result<BigUint> {
    let subgroups = enumerate_subgroups(g, usize::MAX)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for h in subgroups.iter().filter(|h| h.order() >= l) {
        let cosets: Vec<GroupSet> = h.coset_representatives().into_iter().map(|x| h.coset(x)).collect();
        if cosets.len() > 24 {
            return Err(Error::Budget(format!("subgroup of index {} is too large to enumerate", cosets.len())));
        }
        for mask in 0u32..(1 << cosets.len()) {
            let mut set = GroupSet::empty(g);
            for (i, c) in cosets.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set = set.union(c)?;
                }
            }
            seen.insert(set.words().to_vec());
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// Number of distinct unions of grains over all progression structures with `ord(d) ≥ L`.
pub fn count_progression_granular_sets(g: &GroupSpec, l: usize) -> Result<BigUint> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for d in g.elements().filter(|&d| g.element_order(d) as usize >= l) {
        let s = super::GrainStructure::progressions(g, d, l);
        if s.grains.len() > 24 {
            return Err(Error::Budget(format!("{} grains are too many to enumerate", s.grains.len())));
        }
        for mask in 0u32..(1 << s.grains.len()) {
            let mut set = GroupSet::empty(g);
            for (i, c) in s.grains.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set = set.union(c)?;
                }
            }
            seen.insert(set.words().to_vec());
        }
    }
    Ok(BigUint::from(seen.len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductBound {
    pub log_lhs: f64,
    pub log_rhs: f64,
    pub holds: bool,
}

/// Compares `Π max(τ, x_i)` with `τ^K` in log scale, for `τ ≥ e^{1/e}`, `x_i ≥ 1`, `Σ x_i ≤ K`.
pub fn max_product_bound(tau: f64, xs: &[f64], k: f64) -> Result<ProductBound> {
    if tau < std::f64::consts::E.powf(1.0 / std::f64::consts::E) {
        return Err(Error::Premise(format!("tau = {tau} is below e^(1/e)")));
    }
    if xs.iter().any(|&x| !(x >= 1.0)) || xs.iter().sum::<f64>() > k {
        return Err(Error::Premise("need every x_i ≥ 1 and Σ x_i ≤ K".into()));
    }
    let log_lhs: f64 = xs.iter().map(|&x| tau.max(x).ln()).sum();
    let log_rhs = k * tau.ln();
    Ok(ProductBound { log_lhs, log_rhs, holds: log_lhs <= log_rhs * (1.0 + 1e-12) })
}
