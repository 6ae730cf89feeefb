use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::certificate::DualCertificate;
use crate::error::{LpError, Result};
use crate::interval::Interval;
use crate::problem::{k_of, nu_constant, sum_rhs};
use crate::trig::cos_enclosure;

/// Left-hand side of the dual row for `β_j`:
/// `τ − λ_j − λ_{j−l} − μ_j − μ_{j/2} − Σ_t θ_t a_{t,j}`.
pub fn dual_row_lhs(cert: &DualCertificate, j: usize) -> BigRational {
    let q = cert.q as usize;
    let l = cert.l as usize % q;
    let half = (j * (q + 1) / 2) % q;
    let mut lhs = cert.tau.clone();
    lhs -= cert.lambda_at(j);
    lhs -= cert.lambda_at((j + q - l) % q);
    lhs -= cert.mu_at(j);
    lhs -= cert.mu_at(half);
    for (theta, row) in cert.theta.iter().zip(&cert.extras) {
        let a = row.coeff(j, q);
        if a != 0 {
            lhs -= theta * BigRational::from_integer(a.into());
        }
    }
    lhs
}

/// `(τS − Σλ − Σμ − Σθ_t b_t)/q + ν_q²/(1 − ν_q)`, valid as a lower bound on M once every row is feasible.
pub fn dual_objective(cert: &DualCertificate) -> BigRational {
    let mut obj = &cert.tau * sum_rhs(cert.q);
    for v in cert.lambda.values().chain(cert.mu.values()) {
        obj -= v;
    }
    for (theta, row) in cert.theta.iter().zip(&cert.extras) {
        obj -= theta * &row.rhs;
    }
    obj / BigRational::from_integer(BigInt::from(cert.q)) + nu_constant(cert.q)
}

#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "ser_f64")]
    pub bound: BigRational,
    /// `lo(cos(2πj/q)) − LHS_j` for j = 0..q; negative entries are violated rows.
    #[serde(serialize_with = "ser_vec_f64")]
    pub margins: Vec<BigRational>,
}

fn ser_f64<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(r.to_f64().unwrap_or(f64::NAN))
}

fn ser_vec_f64<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)))
}

impl Evaluation {
    pub fn violated_rows(&self) -> Vec<usize> {
        // rows are reported as 1..q, with q standing for j = 0
        let q = self.margins.len();
        let mut rows: Vec<usize> =
            self.margins.iter().enumerate().filter(|(_, m)| m.is_negative()).map(|(j, _)| if j == 0 { q } else { j }).collect();
        rows.sort_unstable();
        rows
    }

    pub fn max_violation(&self) -> BigRational {
        self.margins.iter().filter(|m| m.is_negative()).map(|m| -m).max().unwrap_or_else(BigRational::zero)
    }

    pub fn feasible(&self) -> bool {
        self.margins.iter().all(|m| !m.is_negative())
    }
}

/// Rigorous lower ends of `cos(2πj/q)`, j = 0..q.
pub fn cos_lower(q: u64, bits: u32) -> Vec<BigRational> {
    (0..q as i64).map(|j| cos_enclosure(j, q, bits).lo).collect::<Vec<_>>()
}

/// Margins and dual objective without judging them.
pub fn evaluate(cert: &DualCertificate, bits: u32) -> Result<Evaluation> {
    k_of(cert.q)?;
    if !cert.is_nonnegative() {
        return Err(LpError::NegativeDual);
    }
    let lows = cos_lower(cert.q, bits);
    let margins = (0..cert.q as usize).map(|j| &lows[j] - dual_row_lhs(cert, j)).collect();
    Ok(Evaluation { bound: dual_objective(cert), margins })
}

#[derive(Clone, Debug, Serialize)]
pub struct Verified {
    #[serde(serialize_with = "ser_f64")]
    pub bound: BigRational,
    #[serde(serialize_with = "ser_vec_f64")]
    pub margins: Vec<BigRational>,
}

/// Checks every dual row against `lo(cos)` and the bound against the claim.
pub fn verify_dual_certificate(cert: &DualCertificate, bits: u32) -> Result<Verified> {
    let ev = evaluate(cert, bits)?;
    if !ev.feasible() {
        return Err(LpError::Infeasible {
            label: cert.label.clone(),
            rows: ev.violated_rows(),
            max_violation: ev.max_violation().to_f64().unwrap_or(f64::NAN),
        });
    }
    if ev.bound < cert.claimed {
        return Err(LpError::Shortfall {
            label: cert.label.clone(),
            bound: ev.bound.to_f64().unwrap_or(f64::NAN),
            claimed: cert.claimed.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(Verified { bound: ev.bound, margins: ev.margins })
}

/// Lowers τ by the largest violation plus `2^{-bits}` so every row holds; None if τ would go negative.
pub fn repair(cert: &DualCertificate, bits: u32) -> Result<Option<DualCertificate>> {
    let ev = evaluate(cert, bits)?;
    if ev.feasible() {
        return Ok(Some(cert.clone()));
    }
    let slop = BigRational::new(BigInt::one(), BigInt::one() << bits.min(crate::trig::MAX_BITS) as usize);
    let tau = &cert.tau - ev.max_violation() - slop;
    if tau.is_negative() {
        return Ok(None);
    }
    let mut out = cert.clone();
    out.tau = tau;
    Ok(Some(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Verbatim,
    Repaired,
    Regenerated,
}

#[derive(Clone, Debug, Serialize)]
pub struct Replay {
    pub label: String,
    pub route: Route,
    #[serde(serialize_with = "ser_f64")]
    pub bound: BigRational,
    #[serde(serialize_with = "ser_f64")]
    pub claimed: BigRational,
    /// Largest violation of the certificate as given.
    #[serde(serialize_with = "ser_f64")]
    pub original_violation: BigRational,
    #[serde(skip)]
    pub certificate: DualCertificate,
}

/// Verbatim check, then τ-repair, then regeneration by the exact simplex.
pub fn replay(cert: &DualCertificate, bits: u32) -> Result<Replay> {
    let ev = evaluate(cert, bits)?;
    let original_violation = ev.max_violation();
    let done = |route, c: DualCertificate, bound| Replay {
        label: cert.label.clone(),
        route,
        bound,
        claimed: cert.claimed.clone(),
        original_violation: original_violation.clone(),
        certificate: c,
    };
    if ev.feasible() && ev.bound >= cert.claimed {
        return Ok(done(Route::Verbatim, cert.clone(), ev.bound));
    }
    if let Some(fixed) = repair(cert, bits)? {
        let fev = evaluate(&fixed, bits)?;
        if fev.feasible() && fev.bound >= cert.claimed {
            return Ok(done(Route::Repaired, fixed, fev.bound));
        }
    }
    let regen = crate::solve::solve_and_certify(cert.q, cert.l, &cert.extras, &cert.claimed, bits)?;
    let mut c = regen.certificate;
    c.label = cert.label.clone();
    let bound = dual_objective(&c);
    Ok(done(Route::Regenerated, c, bound))
}

/// Encloses `M(β) − bound`; weak duality says its lower end is ≥ 0 for feasible β.
pub fn duality_gap(cert: &DualCertificate, beta: &[BigRational], bits: u32) -> Result<Interval> {
    let p = crate::problem::build_primal(cert.q, cert.l, &cert.extras, bits)?;
    Ok(&p.objective(beta) - &Interval::point(dual_objective(cert)))
}
