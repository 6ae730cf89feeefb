use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::search::MaskTables;
use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub bound: usize,
    /// Largest number of sum-free sets enumerated before giving up.
    pub node_limit: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { bound: 32, node_limit: 1 << 36 }
    }
}

/// `|SF(G)|`, the empty set included, and σ = log₂|SF(G)| / n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SfCount {
    #[serde(serialize_with = "ser_biguint")]
    pub count: BigUint,
    pub sigma: f64,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SfCount {
    fn new(count: u64, n: usize) -> Self {
        let sigma = (count as f64).log2() / n as f64;
        SfCount { count: BigUint::from(count), sigma }
    }
}

fn count_from(t: &MaskTables, stack: &mut Vec<u8>, c: u64, budget: &AtomicU64, stop: &AtomicBool) -> u64 {
    if stop.load(Ordering::Relaxed) {
        return 0;
    }
    if budget.fetch_sub(1, Ordering::Relaxed) == 0 {
        stop.store(true, Ordering::Relaxed);
        return 0;
    }
    let mut total = 1u64;
    let mut rest = c;
    while rest != 0 {
        if stop.load(Ordering::Relaxed) {
            break;
        }
        let x = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let f = t.forbid(x, stack);
        stack.push(x as u8);
        total += count_from(t, stack, rest & !f, budget, stop);
        stack.pop();
    }
    total
}

/// Exact number of sum-free subsets by output-sensitive backtracking.
///
/// Each sum-free set is built once, in increasing element order, and every partial
/// set in the tree is itself sum-free. Top-level branches run in parallel.
pub fn count_sf(g: &GroupSpec, opts: &CountOptions) -> Result<SfCount> {
    let n = g.order();
    if n > opts.bound.min(64) {
        return Err(Error::Budget(format!("count bound {} is below n = {n}", opts.bound.min(64))));
    }
    if n == 1 {
        return Ok(SfCount { count: BigUint::from(1u8), sigma: 0.0 });
    }
    let t = MaskTables::new(g);
    let all_nonzero: u64 = if n == 64 { !1u64 } else { ((1u64 << n) - 1) & !1 };
    let budget = AtomicU64::new(opts.node_limit);
    let stop = AtomicBool::new(false);
    let firsts: Vec<usize> = (1..n).collect();
    let branch: Vec<u64> = firsts
        .par_iter()
        .map(|&x| {
            let upto = if x >= 63 { u64::MAX } else { (2u64 << x) - 1 };
            let later = all_nonzero & !upto;
            let f = t.forbid(x, &[]);
            let mut stack = vec![x as u8];
            count_from(&t, &mut stack, later & !f, &budget, &stop)
        })
        .collect();
    let counted: u64 = 1 + branch.iter().sum::<u64>();
    if stop.load(Ordering::Relaxed) {
        return Err(Error::Budget(format!("count_sf({g}) stopped after {counted} sum-free sets (a lower bound)")));
    }
    Ok(SfCount::new(counted, n))
}

/// Filters all 2^n subsets; the reference oracle for small groups.
pub fn count_sf_naive(g: &GroupSpec) -> u64 {
    let n = g.order();
    assert!(n <= 24, "naive oracle is for small groups");
    let t = MaskTables::new(g);
    (0u64..1 << n).into_par_iter().filter(|&m| t.is_sum_free_mask(m)).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str) -> u64 {
        let c = count_sf(&s.parse().unwrap(), &CountOptions::default()).unwrap();
        u64::try_from(c.count).unwrap()
    }

    #[test]
    fn small_cyclic_counts() {
        assert_eq!(count("2"), 2);
        assert_eq!(count("3"), 3);
        assert_eq!(count("4"), 5);
        assert_eq!(count("5"), 7);
        assert_eq!(count("2x2"), 7);
        assert_eq!(count("1"), 1);
    }

    #[test]
    fn agrees_with_naive_filter() {
        for spec in ["6", "7", "8", "2x4", "2x2x2", "9", "3x3", "10", "11", "12", "2x6"] {
            let g: GroupSpec = spec.parse().unwrap();
            assert_eq!(count(spec), count_sf_naive(&g), "{spec}");
        }
    }

    #[test]
    fn budget_reports_lower_bound() {
        let g = GroupSpec::cyclic(20);
        let err = count_sf(&g, &CountOptions { bound: 32, node_limit: 50 }).unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
    }
}
