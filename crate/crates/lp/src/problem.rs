use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LpError, Result};
use crate::interval::Interval;
use crate::trig::cos_enclosure;

/// `η = 2^{-23}`.
pub fn eta() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 23usize)
}

/// `k = (q − 1)/6`.
pub fn k_of(q: u64) -> Result<u64> {
    if q % 6 != 1 || q < 7 {
        return Err(LpError::InvalidProblem(format!("q = {q} is not 1 mod 6")));
    }
    Ok((q - 1) / 6)
}

/// `ν_q = 2k/q`.
pub fn nu_q(q: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * ((q - 1) / 6)), BigInt::from(q))
}

/// `ν_q²/(1 − ν_q) = 4k²/(q(q − 2k))`.
pub fn nu_constant(q: u64) -> BigRational {
    let k = ((q - 1) / 6) as i64;
    let q = q as i64;
    BigRational::new(BigInt::from(4 * k * k), BigInt::from(q * (q - 2 * k)))
}

/// `Σβ_j ≥ 2k − ηq`.
pub fn sum_rhs(q: u64) -> BigRational {
    let k = ((q - 1) / 6) as i64;
    BigRational::from_integer(BigInt::from(2 * k)) - eta() * BigRational::from_integer(BigInt::from(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowKind {
    /// `β_i + β_{i+l} ≤ 1`.
    Shift(usize),
    /// `β_i + β_{2i} ≤ 1`.
    Double(usize),
    /// `Σ β_j ≥ 2k − ηq`.
    Sum,
    Extra(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub kind: RowKind,
    pub coeffs: BTreeMap<usize, BigRational>,
    pub rhs: BigRational,
    pub sense: Sense,
}

/// An extra constraint `Σ a_j β_j ≤ b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtraRow {
    pub coeffs: BTreeMap<usize, i64>,
    #[serde(with = "crate::certificate::rational_str")]
    pub rhs: BigRational,
}

impl ExtraRow {
    pub fn new(coeffs: &[(usize, i64)], rhs: BigRational) -> Self {
        let mut map = BTreeMap::new();
        for &(j, a) in coeffs {
            *map.entry(j).or_insert(0) += a;
        }
        ExtraRow { coeffs: map, rhs }
    }

    /// Coefficient of `β_j`, indices taken mod q.
    pub fn coeff(&self, j: usize, q: usize) -> i64 {
        self.coeffs.iter().filter(|(&i, _)| i % q == j).map(|(_, &a)| a).sum()
    }
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    pub q: u64,
    pub l: u64,
    pub k: u64,
    pub rows: Vec<Row>,
    /// `cos(2πj/q)`; the objective is `q^{-1} Σ β_j cos(2πj/q) + ν_q²/(1 − ν_q)`.
    pub cosines: Vec<Interval>,
    pub constant: BigRational,
    pub eta: BigRational,
}

fn unit_row(kind: RowKind, pairs: &[usize], rhs: BigRational, sense: Sense) -> Row {
    let mut coeffs: BTreeMap<usize, BigRational> = BTreeMap::new();
    for &j in pairs {
        *coeffs.entry(j).or_insert_with(BigRational::zero) += BigRational::one();
    }
    Row { kind, coeffs, rhs, sense }
}

/// The default rows (shift, doubling, sum) followed by `extras`.
pub fn build_primal(q: u64, l: u64, extras: &[ExtraRow], bits: u32) -> Result<LpProblem> {
    let k = k_of(q)?;
    if l > k {
        return Err(LpError::InvalidProblem(format!("l = {l} exceeds k = {k}")));
    }
    let qs = q as usize;
    let mut rows = Vec::with_capacity(2 * qs + 1 + extras.len());
    for i in 0..qs {
        rows.push(unit_row(RowKind::Shift(i), &[i, (i + l as usize) % qs], BigRational::one(), Sense::Le));
    }
    for i in 0..qs {
        rows.push(unit_row(RowKind::Double(i), &[i, 2 * i % qs], BigRational::one(), Sense::Le));
    }
    let all: Vec<usize> = (0..qs).collect();
    rows.push(unit_row(RowKind::Sum, &all, sum_rhs(q), Sense::Ge));
    for (t, e) in extras.iter().enumerate() {
        if e.coeffs.is_empty() || e.coeffs.values().any(|&a| a < 0) || e.rhs.is_negative() {
            return Err(LpError::InvalidProblem(format!("extra row {} is malformed", t + 1)));
        }
        let mut coeffs = BTreeMap::new();
        for j in 0..qs {
            let a = e.coeff(j, qs);
            if a != 0 {
                coeffs.insert(j, BigRational::from_integer(a.into()));
            }
        }
        rows.push(Row { kind: RowKind::Extra(t), coeffs, rhs: e.rhs.clone(), sense: Sense::Le });
    }
    let cosines = (0..q as i64).map(|j| cos_enclosure(j, q, bits)).collect();
    Ok(LpProblem { q, l, k, rows, cosines, constant: nu_constant(q), eta: eta() })
}

impl LpProblem {
    /// Whether `beta` satisfies every row exactly.
    pub fn is_feasible(&self, beta: &[BigRational]) -> bool {
        beta.iter().all(|b| !b.is_negative())
            && self.rows.iter().all(|r| {
                let lhs: BigRational = r.coeffs.iter().map(|(&j, a)| a * &beta[j]).sum();
                match r.sense {
                    Sense::Le => lhs <= r.rhs,
                    Sense::Ge => lhs >= r.rhs,
                }
            })
    }

    /// Encloses `M(β)`.
    pub fn objective(&self, beta: &[BigRational]) -> Interval {
        let mut acc = Interval::point(self.constant.clone());
        let inv_q = BigRational::new(BigInt::one(), BigInt::from(self.q));
        for (b, c) in beta.iter().zip(&self.cosines) {
            acc = &acc + &c.scale(&(b * &inv_q));
        }
        acc
    }
}
