//! Sum-free predicates, classification, exact μ(G) and |SF(G)|.

mod count;
mod search;

pub use count::{count_sf, count_sf_naive, CountOptions, SfCount};
pub use search::{mu_exact, MuOptions, MuResult};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{homs_to_zp, prime_factors, GroupSet, GroupSpec, HomToCyclic};

/// Ordered Schur triples `(x, y, z) ∈ A³` with `x + y = z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurReport {
    pub triples: u64,
    #[serde(serialize_with = "crate::sumfree::ser_ratio")]
    pub delta: Ratio<i64>,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn schur_triples(a: &GroupSet) -> SchurReport {
    let g = a.group();
    g.ensure_add_table();
    let elems = a.to_vec();
    let mut triples = 0u64;
    for &x in &elems {
        for &y in &elems {
            if a.contains(g.add(x, y)) {
                triples += 1;
            }
        }
    }
    let n = g.order() as i64;
    SchurReport { triples, delta: Ratio::new(triples as i64, n * n) }
}

/// The same count through `n^{-1} Σ_γ |Â(γ)|² Â(γ)`, rounded.
pub fn schur_triples_fourier(a: &GroupSet) -> u64 {
    let fhat = a.fourier();
    let total: f64 = fhat.iter().map(|z| (z.norm_sqr() * z).re).sum();
    (total / a.group().order() as f64).round().max(0.0) as u64
}

pub fn is_sum_free(a: &GroupSet) -> bool {
    let g = a.group();
    a.iter().all(|x| a.iter().all(|y| !a.contains(g.add(x, y))))
}

/// Type of a group by the primes dividing its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupClass {
    /// Divisible by a prime ≡ 2 (mod 3); `p` is the least such prime.
    TypeI(u64),
    /// Not type I, but divisible by 3.
    TypeII,
    /// Every prime factor is ≡ 1 (mod 3).
    TypeIII,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::TypeI(p) => write!(f, "I({p})"),
            GroupClass::TypeII => f.write_str("II"),
            GroupClass::TypeIII => f.write_str("III"),
        }
    }
}

pub fn classify(g: &GroupSpec) -> Result<GroupClass> {
    let n = g.order() as u64;
    if n == 1 {
        return Err(Error::TrivialGroup);
    }
    let primes = prime_factors(n);
    if let Some(&p) = primes.iter().find(|&&p| p % 3 == 2) {
        Ok(GroupClass::TypeI(p))
    } else if n % 3 == 0 {
        Ok(GroupClass::TypeII)
    } else {
        Ok(GroupClass::TypeIII)
    }
}

/// The closed-form density ν(G).
pub fn nu(g: &GroupSpec) -> Result<Ratio<i64>> {
    let third = Ratio::new(1, 3);
    Ok(match classify(g)? {
        GroupClass::TypeI(p) => third + Ratio::new(1, 3 * p as i64),
        GroupClass::TypeII => third,
        GroupClass::TypeIII => third - Ratio::new(1, 3 * g.exponent() as i64),
    })
}

/// The modulus q of the cyclic quotient used by the extremal construction.
pub fn extremal_modulus(g: &GroupSpec) -> Result<u64> {
    Ok(match classify(g)? {
        GroupClass::TypeI(p) => p,
        GroupClass::TypeII => 3,
        GroupClass::TypeIII => g.exponent(),
    })
}

/// The middle third `{t : q < 3t ≤ 2q}` of `Z/q`.
pub fn middle_third(q: u64) -> Vec<u64> {
    (0..q).filter(|&t| q < 3 * t && 3 * t <= 2 * q).collect()
}

/// A sum-free set of size ν(G)·n: the preimage of the middle third of `Z/q`.
pub fn construct_extremal(g: &GroupSpec) -> Result<GroupSet> {
    let q = extremal_modulus(g)?;
    let psi = HomToCyclic::surjective(g, q)?;
    Ok(psi.preimage(g, &middle_third(q)))
}

/// Main term `W · c_p · 2^{ν(G) n}` for a type I(p) group, with W = 1 if p = 2 and 1/2 otherwise.
pub fn main_term_type_i(g: &GroupSpec) -> Result<BigRational> {
    let GroupClass::TypeI(p) = classify(g)? else {
        return Err(Error::NotTypeI(g.to_string()));
    };
    let c_p = homs_to_zp(g, p)?.len() - 1;
    let nun = nu(g)? * Ratio::from_integer(g.order() as i64);
    debug_assert!(nun.is_integer());
    let power = BigUint::one() << nun.to_integer() as usize;
    let w = if p == 2 { BigRational::one() } else { BigRational::new(BigInt::one(), BigInt::from(2)) };
    Ok(w * BigRational::from_integer(BigInt::from(c_p) * BigInt::from(power)))
}

/// Rational r ≥ δ^{1/5}, tight to a few ulps of f64.
pub fn fifth_root_upper(delta: &BigRational) -> BigRational {
    if delta.is_zero() {
        return BigRational::zero();
    }
    let mut guess = delta.to_f64().unwrap_or(f64::MAX).powf(0.2);
    loop {
        let r = BigRational::from_float(guess).expect("finite");
        if num_traits::pow(r.clone(), 5) >= *delta {
            return r;
        }
        guess = guess.next_up();
    }
}

/// Density bound μ(G) + 2^{20} δ^{1/5} for sets with at most δn² Schur triples.
pub fn bound_prop371(g: &GroupSpec, delta: &BigRational) -> Result<BigRational> {
    if delta.is_negative() {
        return Err(Error::InvalidArgument("delta must be nonnegative".into()));
    }
    let mu = nu(g)?;
    let mu = BigRational::new(BigInt::from(*mu.numer()), BigInt::from(*mu.denom()));
    Ok(mu + BigRational::from_integer(BigInt::from(1u64 << 20)) * fifth_root_upper(delta))
}
