use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Forty decimals of π on either side.
pub fn pi_bracket() -> Interval {
    let lo: BigRational = "31415926535897932384626433832795028841971/10000000000000000000000000000000000000000"
        .parse()
        .expect("literal");
    let ulp = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(40));
    Interval { hi: &lo + ulp, lo }
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

pub(crate) fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.numer().div_floor(scaled.denom()), scale)
}

pub(crate) fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = x * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.numer().div_ceil(scaled.denom()), scale)
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_integer(n: i64) -> Self {
        Interval::point(BigRational::from_integer(n.into()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|r| self.contains(&r))
    }

    /// Widens both ends to multiples of `2^{-bits}`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval { lo: floor_dyadic(&self.lo, bits), hi: ceil_dyadic(&self.hi, bits) }
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        if other.lo.is_positive() || other.hi.is_negative() {
            let inv = Interval::new(other.hi.recip(), other.lo.recip());
            Some(self * &inv)
        } else {
            None
        }
    }

    pub fn abs_hi(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("nonempty").clone();
        let hi = p.iter().max().expect("nonempty").clone();
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo_f64(), self.hi_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> BigRational {
        s.parse().unwrap()
    }

    #[test]
    fn pi_bracket_is_narrow_and_correct() {
        let p = pi_bracket();
        assert!(p.width() < r("1/1000000000000000000000000000000"));
        assert!(p.contains_f64(std::f64::consts::PI) || p.lo_f64() == std::f64::consts::PI);
        assert!(p.lo < p.hi);
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(r("-1/2"), r("3/4"));
        let b = Interval::new(r("2"), r("5/2"));
        let prod = &a * &b;
        assert_eq!(prod, Interval::new(r("-5/4"), r("15/8")));
        let q = a.div(&b).unwrap();
        assert!(q.contains(&r("-1/4")) && q.contains(&r("3/8")));
        assert!(a.div(&a).is_none());
        let d = &a - &b;
        assert_eq!(d, Interval::new(r("-3"), r("-5/4")));
    }

    #[test]
    fn rounding_is_outward() {
        let x = Interval::point(r("1/3"));
        let y = x.round_out(10);
        assert!(y.lo < r("1/3") && y.hi > r("1/3"));
        assert!(y.width() <= r("1/1024"));
        let z = Interval::point(r("3/8")).round_out(4);
        assert!(z.is_point());
    }
}
