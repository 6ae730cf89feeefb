//! Rigorous enclosures of cos and sin at rational multiples of π.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::{pi_bracket, pow2, Interval};

/// Largest precision the π bracket supports.
pub const MAX_BITS: u32 = 120;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Taylor series of cos (`odd = false`) or sin at a dyadic point of `[0, 1]`, in fixed point.
///
/// Every quantity is an integer multiple of `2^{-w}`, truncated after each product. With
/// `|x| < 1` each truncated term is off by at most one unit per step taken, so after n steps
/// the partial sum is off by at most `n²` units.
fn taylor_point(x: &BigRational, odd: bool, prec: u32) -> Interval {
    let w = prec + 24;
    let scale = pow2(w);
    let scaled = x * BigRational::from_integer(scale.clone());
    assert!(scaled.is_integer(), "taylor_point needs a dyadic point with at most {w} bits");
    let xf = scaled.to_integer();
    assert!(xf.abs() < scale, "taylor_point needs |x| < 1");
    let x2 = (&xf * &xf) >> w as usize;
    let mut term = if odd { xf.clone() } else { scale.clone() };
    let mut sum = term.clone();
    let eps = BigInt::one() << 22u32;
    let mut k: i64 = if odd { 1 } else { 0 };
    let mut steps: u64 = 0;
    let mut negative = false;
    loop {
        let mag = (&term * &x2) >> w as usize;
        // truncation toward zero only shrinks the magnitude
        term = mag / BigInt::from((k + 1) * (k + 2));
        negative = !negative;
        k += 2;
        steps += 1;
        let err = BigInt::from(steps * steps);
        if term.abs() + &err <= eps {
            // alternating with decreasing magnitudes: the tail is bounded by the first omitted term
            let r = term.abs() + err * 2;
            let lo = BigRational::new(&sum - &r, scale.clone());
            let hi = BigRational::new(&sum + &r, scale.clone());
            return Interval::new(lo, hi);
        }
        if negative {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
}

/// Encloses cos(sπ) or sin(sπ) for `s ∈ [0, 1/4]`.
fn small(s: &BigRational, odd: bool, prec: u32) -> Interval {
    if s.is_zero() {
        return Interval::from_integer(if odd { 0 } else { 1 });
    }
    let x = Interval::point(s.clone());
    let arg = (&x * &pi_bracket()).round_out(prec + 4);
    let (a, b) = (taylor_point(&arg.lo, odd, prec + 4), taylor_point(&arg.hi, odd, prec + 4));
    // cos decreases and sin increases on [0, π/2]
    let out = if odd { Interval::new(a.lo, b.hi) } else { Interval::new(b.lo, a.hi) };
    out.round_out(prec)
}

/// Reduces `r` modulo 2.
fn reduce_mod2(r: &BigRational) -> BigRational {
    let two = BigInt::from(2);
    let period = r.denom() * &two;
    BigRational::new(r.numer().mod_floor(&period), r.denom().clone())
}

/// Encloses `cos(rπ)` with width at most `2^{-bits}` (`bits` is capped at [`MAX_BITS`]).
pub fn cos_pi(r: &BigRational, bits: u32) -> Interval {
    let prec = bits.min(MAX_BITS) + 8;
    let mut s = reduce_mod2(r);
    let one = BigRational::one();
    if s > one {
        s = BigRational::from_integer(2.into()) - s;
    }
    let (s, sign) = if s > rat(1, 2) { (one - s, -1) } else { (s, 1) };
    let out = if s > rat(1, 4) { small(&(rat(1, 2) - s), true, prec) } else { small(&s, false, prec) };
    if sign < 0 {
        -&out
    } else {
        out
    }
}

/// Encloses `sin(rπ)`.
pub fn sin_pi(r: &BigRational, bits: u32) -> Interval {
    cos_pi(&(rat(1, 2) - r), bits)
}

/// Encloses `cos(2πj/q)` with width at most `2^{-bits}`.
pub fn cos_enclosure(j: i64, q: u64, bits: u32) -> Interval {
    assert!(q >= 1, "q must be positive");
    cos_pi(&BigRational::new(BigInt::from(2 * j), BigInt::from(q)), bits)
}

/// True when the enclosure proves `x > 0`.
pub fn certainly_positive(x: &Interval) -> bool {
    x.lo.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn special_values() {
        assert_eq!(cos_enclosure(0, 7, 60), Interval::from_integer(1));
        assert!(cos_enclosure(2, 4, 60).contains(&BigRational::from_integer((-1).into())));
        let c = cos_enclosure(1, 4, 100);
        assert!(c.contains(&BigRational::zero()));
        assert!(c.width() <= BigRational::new(BigInt::one(), pow2(100)));
    }

    #[test]
    fn matches_f64_and_is_narrow() {
        for q in [7u64, 13, 19, 31, 73, 997] {
            for j in 0..q as i64 {
                for bits in [20, 64, 120, 200] {
                    let c = cos_enclosure(j, q, bits);
                    let f = (2.0 * std::f64::consts::PI * j as f64 / q as f64).cos();
                    assert!((c.mid().to_f64().unwrap() - f).abs() < 1e-12 + c.width().to_f64().unwrap());
                    assert!(c.width() <= BigRational::new(BigInt::one(), pow2(bits.min(MAX_BITS))));
                }
            }
        }
    }

    #[test]
    fn pythagoras_enclosed() {
        for (n, d) in [(1, 7), (3, 13), (5, 11), (-9, 4)] {
            let r = rat(n, d);
            let (c, s) = (cos_pi(&r, 90), sin_pi(&r, 90));
            let sum = &(&c * &c) + &(&s * &s);
            assert!(sum.contains(&BigRational::one()), "{n}/{d}");
        }
    }
}
