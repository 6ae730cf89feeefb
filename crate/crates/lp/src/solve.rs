use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::certificate::DualCertificate;
use crate::error::{LpError, Result};
use crate::interval::floor_dyadic;
use crate::problem::{build_primal, ExtraRow, LpProblem, RowKind, Sense};
use crate::simplex::{self, Status};
use crate::verify::{evaluate, repair};

const PIVOT_LIMIT: usize = 200_000;

#[derive(Clone, Debug, Serialize)]
pub struct Certified {
    #[serde(skip)]
    pub certificate: DualCertificate,
    pub bound: f64,
    /// Optimum of the LP with dyadic cosines, from the exact phase.
    pub exact_optimum: f64,
    pub float_pivots: usize,
    pub exact_pivots: usize,
}

/// `(A, b, c)` for `max −c̃·β, Aβ ≤ b, β ≥ 0`, with `c̃_j` the dyadic midpoint of `cos(2πj/q)`.
fn standard_form(p: &LpProblem, cost_bits: u32) -> (Vec<Vec<BigRational>>, Vec<BigRational>, Vec<BigRational>) {
    let q = p.q as usize;
    let mut a = Vec::with_capacity(p.rows.len());
    let mut b = Vec::with_capacity(p.rows.len());
    for row in &p.rows {
        let sign = if row.sense == Sense::Ge { -1 } else { 1 };
        let sign = BigRational::from_integer(sign.into());
        let mut dense = vec![BigRational::zero(); q];
        for (&j, v) in &row.coeffs {
            dense[j] = v * &sign;
        }
        a.push(dense);
        b.push(&row.rhs * &sign);
    }
    let c = p.cosines.iter().map(|iv| -floor_dyadic(&iv.mid(), cost_bits)).collect();
    (a, b, c)
}

/// Solves the primal with a float simplex, re-solves exactly from that basis, reads off the
/// duals and repairs them against rigorous cosine lower bounds.
pub fn solve_and_certify(q: u64, l: u64, extras: &[ExtraRow], target: &BigRational, bits: u32) -> Result<Certified> {
    let p = build_primal(q, l, extras, bits)?;
    let (a, b, c) = standard_form(&p, bits.min(64));
    let float = simplex::solve::<f64>(&a, &b, &c, PIVOT_LIMIT);
    if float.status != Status::Optimal {
        return Err(LpError::Simplex(format!("float phase ended {:?}", float.status)));
    }
    let exact = simplex::solve_from_basis(&a, &b, &c, &float.basis, PIVOT_LIMIT);
    if exact.status != Status::Optimal {
        return Err(LpError::Simplex(format!("exact phase ended {:?}", exact.status)));
    }
    let mut lambda = BTreeMap::new();
    let mut mu = BTreeMap::new();
    let mut tau = BigRational::zero();
    let mut theta = vec![BigRational::zero(); extras.len()];
    for (row, y) in p.rows.iter().zip(&exact.y) {
        if y.is_zero() {
            continue;
        }
        match row.kind {
            RowKind::Shift(i) => {
                lambda.insert(i, y.clone());
            }
            RowKind::Double(i) => {
                mu.insert(i, y.clone());
            }
            RowKind::Sum => tau = y.clone(),
            RowKind::Extra(t) => theta[t] = y.clone(),
        }
    }
    let raw = DualCertificate {
        label: format!("q{q}_l{l}_regenerated"),
        q,
        l,
        tau,
        lambda,
        mu,
        theta,
        extras: extras.to_vec(),
        claimed: target.clone(),
    };
    let cert = repair(&raw, bits)?.ok_or_else(|| LpError::Simplex("τ-repair would make τ negative".into()))?;
    let ev = evaluate(&cert, bits)?;
    debug_assert!(ev.feasible());
    let bound = ev.bound.to_f64().unwrap_or(f64::NAN);
    if ev.bound < *target {
        return Err(LpError::Shortfall { label: cert.label, bound, claimed: target.to_f64().unwrap_or(f64::NAN) });
    }
    let q_r = BigRational::from_integer(BigInt::from(q));
    let exact_optimum = (-&exact.value / q_r + &p.constant).to_f64().unwrap_or(f64::NAN);
    Ok(Certified { certificate: cert, bound, exact_optimum, float_pivots: float.pivots, exact_pivots: exact.pivots })
}
