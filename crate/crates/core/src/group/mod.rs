//! Finite abelian groups presented as products of cyclic factors.

mod character;
mod set;
mod snf;
mod subgroup;

pub use character::{dft, homs_to_zp, idft, Character, HomToCyclic};
pub use set::GroupSet;
pub use snf::smith_normal_form;
pub use subgroup::{abelian_groups_of_order, defect, enumerate_subgroups, quotient, Quotient, Subgroup};

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest order for which an addition table is materialised.
const ADD_TABLE_LIMIT: usize = 1024;

/// A finite abelian group `C_{d_1} x ... x C_{d_r}`.
///
/// Cheap to clone; the factor data is shared.
#[derive(Clone)]
pub struct GroupSpec(Arc<Inner>);

struct Inner {
    factors: Vec<u64>,
    order: usize,
    exponent: u64,
    // strides[i] = d_{i+1} * ... * d_r, so the first coordinate is most significant
    strides: Vec<usize>,
    // m / d_i, used to turn character pairings into integer phases mod m
    phase_mult: Vec<u64>,
    add_table: OnceLock<Vec<u32>>,
}

/// A group element in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub coords: Vec<u64>,
}

impl GroupSpec {
    /// Builds the group from a list of cyclic factors. The empty list is the trivial group.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d <= 1) {
            return Err(Error::InvalidSpec(format!("factor {d} must be at least 2")));
        }
        let mut order: usize = 1;
        for &d in factors {
            order = order
                .checked_mul(d as usize)
                .filter(|&n| n <= u32::MAX as usize)
                .ok_or_else(|| Error::InvalidSpec("group order too large".into()))?;
        }
        let exponent = factors.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let phase_mult = factors.iter().map(|&d| exponent / d).collect();
        Ok(GroupSpec(Arc::new(Inner {
            factors: factors.to_vec(),
            order,
            exponent,
            strides,
            phase_mult,
            add_table: OnceLock::new(),
        })))
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::new(&[]).unwrap()
        } else {
            Self::new(&[n]).expect("cyclic order must be positive")
        }
    }

    pub fn trivial() -> Self {
        Self::new(&[]).unwrap()
    }

    pub fn factors(&self) -> &[u64] {
        &self.0.factors
    }

    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    /// The order n.
    pub fn order(&self) -> usize {
        self.0.order
    }

    /// The exponent m, the largest order of an element.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn is_cyclic(&self) -> bool {
        self.0.exponent as usize == self.0.order
    }

    /// Invariant-factor form `d_1 | d_2 | ... | d_r`, so isomorphic groups compare equal.
    pub fn canonical(&self) -> GroupSpec {
        let rows: Vec<Vec<i64>> = (0..self.rank())
            .map(|i| {
                let mut row = vec![0i64; self.rank()];
                row[i] = self.0.factors[i] as i64;
                row
            })
            .collect();
        let snf = smith_normal_form(&rows, self.rank());
        let factors: Vec<u64> = snf.diagonal.iter().map(|&s| s as u64).filter(|&s| s > 1).collect();
        GroupSpec::new(&factors).expect("invariant factors are at least 2")
    }

    pub fn is_isomorphic(&self, other: &GroupSpec) -> bool {
        self.canonical().factors() == other.canonical().factors()
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.rank()];
        self.coords_into(index, &mut out);
        out
    }

    pub fn coords_into(&self, mut index: usize, out: &mut [u64]) {
        for i in (0..self.rank()).rev() {
            let d = self.0.factors[i] as usize;
            out[i] = (index % d) as u64;
            index /= d;
        }
    }

    pub fn index_of(&self, coords: &[u64]) -> usize {
        debug_assert_eq!(coords.len(), self.rank());
        coords
            .iter()
            .zip(&self.0.strides)
            .zip(&self.0.factors)
            .map(|((&c, &s), &d)| (c % d) as usize * s)
            .sum()
    }

    pub fn element(&self, index: usize) -> Element {
        Element { coords: self.coords(index) }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.0.add_table.get() {
            return t[a * self.order() + b] as usize;
        }
        self.add_slow(a, b)
    }

    fn add_slow(&self, a: usize, b: usize) -> usize {
        let mut idx = 0usize;
        let (mut a, mut b) = (a, b);
        let mut place = 1usize;
        for i in (0..self.rank()).rev() {
            let d = self.0.factors[i] as usize;
            let s = (a % d + b % d) % d;
            idx += s * place;
            place *= d;
            a /= d;
            b /= d;
        }
        idx
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut idx = 0usize;
        let mut a = a;
        let mut place = 1usize;
        for i in (0..self.rank()).rev() {
            let d = self.0.factors[i] as usize;
            let c = a % d;
            idx += ((d - c) % d) * place;
            place *= d;
            a /= d;
        }
        idx
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a` for an integer `k` (reduced coordinatewise).
    pub fn mul(&self, k: i64, a: usize) -> usize {
        let mut idx = 0usize;
        let mut a = a;
        let mut place = 1usize;
        for i in (0..self.rank()).rev() {
            let d = self.0.factors[i] as i64;
            let c = (a as i64) % d;
            idx += ((k % d * c).rem_euclid(d)) as usize * place;
            place *= d as usize;
            a /= d as usize;
        }
        idx
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.coords(a)
            .iter()
            .zip(&self.0.factors)
            .fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// Materialises the addition table when the group is small enough.
    pub fn ensure_add_table(&self) {
        if self.order() <= ADD_TABLE_LIMIT {
            self.0.add_table.get_or_init(|| {
                let n = self.order();
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.add_slow(a, b) as u32);
                    }
                }
                t
            });
        }
    }

    pub(crate) fn phase_mult(&self) -> &[u64] {
        &self.0.phase_mult
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Spec string, e.g. `2x3`; the trivial group prints as `1`.
    pub fn spec_string(&self) -> String {
        if self.rank() == 0 {
            return "1".into();
        }
        self.0.factors.iter().map(u64::to_string).collect::<Vec<_>>().join("x")
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}

impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self.spec_string())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `d1xd2x...`; `1` and the empty string give the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return GroupSpec::new(&[]);
        }
        let factors = s
            .split(['x', 'X', ','])
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidSpec(format!("bad factor {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(&factors)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
