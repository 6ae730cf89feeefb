use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::interval::Interval;
use crate::problem::{eta, k_of, nu_constant};
use crate::trig::{cos_pi, sin_pi};
use sumfree_core::group::prime_factors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(l: u64) -> Self {
        if l % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn frac(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half() -> BigRational {
    frac(1, 2)
}

/// `E(0)`: `−sin(4kπ/q)/(2 sin(π/q))` for even l, and
/// `−sin((4k−1)π/q)/(2 sin(π/q)) − cos(4kπ/q)/2` for odd l.
pub fn closed_form_e0(q: u64, parity: Parity, bits: u32) -> Result<Interval> {
    let k = k_of(q)? as i64;
    let two_sin = sin_pi(&frac(1, q), bits).scale(&BigRational::from_integer(2.into()));
    let out = match parity {
        Parity::Even => -&sin_pi(&frac(4 * k, q), bits).div(&two_sin).expect("sin(π/q) > 0"),
        Parity::Odd => {
            let a = -&sin_pi(&frac(4 * k - 1, q), bits).div(&two_sin).expect("sin(π/q) > 0");
            &a - &cos_pi(&frac(4 * k, q), bits).scale(&half())
        }
    };
    Ok(out)
}

/// Lower bound on M given the shift constraints alone, for `0 ≤ l ≤ k`.
pub fn closed_form_m_bound(q: u64, l: u64, bits: u32) -> Result<Interval> {
    let e0 = closed_form_e0(q, Parity::of(l), bits)?;
    m_bound_from(&e0, q, l, bits)
}

fn m_bound_from(e0: &Interval, q: u64, l: u64, bits: u32) -> Result<Interval> {
    let k = k_of(q)?;
    if l > k {
        return Err(crate::error::LpError::InvalidProblem(format!("l = {l} exceeds k = {k}")));
    }
    let cos_l = cos_pi(&frac(l as i64, q), bits);
    let q_cos = cos_l.scale(&BigRational::from_integer(BigInt::from(q)));
    // E(0)/(q cos(πl/q)) is exactly the leading term of either parity
    let lead = e0.div(&q_cos).expect("cos(πl/q) > 1/2");
    let shift = nu_constant(q) - eta() * BigRational::from_integer(6.into());
    Ok(&lead + &Interval::point(shift))
}

/// `E(s)` by the greedy rule: weight 1/2 on the smallest `cos((2j+l)π/q)` until the sum reaches `2k − sq`.
pub fn e_greedy(q: u64, l: u64, s: f64) -> Result<f64> {
    let k = k_of(q)?;
    let mut c: Vec<f64> =
        (0..q).map(|j| ((2 * j + l) as f64 * std::f64::consts::PI / q as f64).cos()).collect();
    c.sort_by(f64::total_cmp);
    let mut need = (2 * k) as f64 - s * q as f64;
    let mut total = 0.0;
    for cj in c {
        if need <= 0.0 && cj >= 0.0 {
            break;
        }
        let w = if cj < 0.0 { 0.5 } else { need.min(0.5) };
        total += w * cj;
        need -= w;
    }
    Ok(total)
}

/// `E(s)` by solving its LP with the float simplex.
pub fn e_lp(q: u64, l: u64, s: f64) -> Result<f64> {
    let k = k_of(q)?;
    let qs = q as usize;
    let rat = |x: f64| BigRational::from_float(x).expect("finite");
    let mut a = Vec::with_capacity(qs + 1);
    let mut b = Vec::with_capacity(qs + 1);
    for j in 0..qs {
        let mut row = vec![BigRational::zero(); qs];
        row[j] = BigRational::one();
        a.push(row);
        b.push(half());
    }
    a.push(vec![-BigRational::one(); qs]);
    b.push(rat(s * q as f64 - (2 * k) as f64));
    let c: Vec<BigRational> =
        (0..q).map(|j| rat(-((2 * j + l) as f64 * std::f64::consts::PI / q as f64).cos())).collect();
    let sol = crate::simplex::solve::<f64>(&a, &b, &c, 100_000);
    if sol.status != crate::simplex::Status::Optimal {
        return Err(crate::error::LpError::Simplex(format!("E(s) LP ended {:?}", sol.status)));
    }
    Ok(-sol.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub q: u64,
    pub l: u64,
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub q_max: u64,
    pub restricted: bool,
    /// q failing for some `l ≤ max(k − 2, 0)`.
    pub small_l: Vec<u64>,
    /// q failing at `l = k − 1`.
    pub l_k_minus_1: Vec<u64>,
    /// q failing at `l = k`.
    pub l_k: Vec<u64>,
    pub failures: Vec<SweepFailure>,
    /// Smallest `|bound − η|` seen, against the enclosure widths.
    pub min_gap: f64,
    pub max_width: f64,
    pub cells: usize,
}

/// Whether q can be the order of a character of a type III group.
pub fn is_type_three_order(q: u64) -> bool {
    q > 1 && prime_factors(q).iter().all(|p| p % 3 == 1)
}

/// Evaluates the closed-form M bound over every `q ≡ 1 (mod 6)` up to `q_max` and every `0 ≤ l ≤ k`.
/// With `restricted`, only q whose prime factors are all 1 mod 3 are swept.
pub fn sweep_lem34(q_max: u64, restricted: bool, bits: u32) -> Result<Sweep> {
    let qs: Vec<u64> = (7..=q_max).step_by(6).filter(|&q| !restricted || is_type_three_order(q)).collect();
    let cells: Vec<(u64, u64)> = qs.iter().flat_map(|&q| (0..=(q - 1) / 6).map(move |l| (q, l))).collect();
    let eta = eta();
    let e0s: Vec<(Interval, Interval)> = qs
        .par_iter()
        .map(|&q| Ok((closed_form_e0(q, Parity::Even, bits)?, closed_form_e0(q, Parity::Odd, bits)?)))
        .collect::<Result<_>>()?;
    let e0_of = |q: u64, l: u64| {
        let (even, odd) = &e0s[qs.binary_search(&q).expect("swept q")];
        if l % 2 == 0 {
            even
        } else {
            odd
        }
    };
    let evaluated: Vec<(u64, u64, Interval)> = cells
        .par_iter()
        .map(|&(q, l)| m_bound_from(e0_of(q, l), q, l, bits).map(|iv| (q, l, iv)))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut min_gap = f64::INFINITY;
    let mut max_width: f64 = 0.0;
    for (q, l, iv) in &evaluated {
        let gap = (iv.mid() - &eta).to_f64().unwrap_or(f64::NAN).abs();
        min_gap = min_gap.min(gap);
        max_width = max_width.max(iv.width().to_f64().unwrap_or(f64::NAN));
        // only a proven `bound > η` counts as a pass
        if iv.lo <= eta {
            failures.push(SweepFailure { q: *q, l: *l, bound: iv.mid_f64() });
        }
    }
    let collect = |pred: &dyn Fn(u64, u64) -> bool| {
        let mut v: Vec<u64> = failures.iter().filter(|f| pred(f.q, f.l)).map(|f| f.q).collect();
        v.dedup();
        v
    };
    let k = |q: u64| (q - 1) / 6;
    Ok(Sweep {
        q_max,
        restricted,
        small_l: collect(&|q, l| l <= k(q).saturating_sub(2)),
        l_k_minus_1: collect(&|q, l| l + 1 == k(q)),
        l_k: collect(&|q, l| l == k(q)),
        failures,
        min_gap,
        max_width,
        cells: evaluated.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e0_for_q7() {
        let e = closed_form_e0(7, Parity::Even, 80).unwrap();
        assert!((e.mid_f64() + 1.1235).abs() < 1e-3);
        let direct: f64 = [4.0, 6.0, 8.0, 10.0].iter().map(|x: &f64| (x * std::f64::consts::PI / 7.0).cos()).sum::<f64>() / 2.0;
        assert!((e.mid_f64() - direct).abs() < 1e-12);
    }

    #[test]
    fn e0_matches_greedy() {
        for q in (7..=97).step_by(6) {
            for l in [0, 1] {
                let e = closed_form_e0(q, Parity::of(l), 80).unwrap().mid_f64();
                assert!((e - e_greedy(q, l, 0.0).unwrap()).abs() < 1e-9, "q={q} l={l}");
            }
        }
    }

    #[test]
    fn m_bound_examples() {
        let eta = 2f64.powi(-23);
        assert!(closed_form_m_bound(103, 0, 80).unwrap().lo_f64() > eta);
        assert!(closed_form_m_bound(7, 1, 80).unwrap().hi_f64() < eta);
        assert!(closed_form_m_bound(31, 4, 80).unwrap().hi_f64() < eta);
    }

    #[test]
    fn truncated_sweep() {
        let s = sweep_lem34(20, true, 64).unwrap();
        assert_eq!(s.small_l, vec![7, 13, 19]);
        assert_eq!(s.l_k_minus_1, vec![7, 13, 19]);
        assert_eq!(s.l_k, vec![7, 13, 19]);
    }
}
