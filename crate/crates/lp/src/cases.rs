use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{published_certificates, DualCertificate};
use crate::error::{LpError, Result};
use crate::verify::{replay, Replay};
use sumfree_core::group::GroupSet;
use sumfree_core::sumfree::{bound_prop371, classify, nu, schur_triples, GroupClass};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Replays every certificate in `certs` in parallel, keeping their order.
pub fn replay_all(certs: &[DualCertificate], bits: u32) -> Result<Vec<Replay>> {
    certs.par_iter().map(|c| replay(c, bits)).collect()
}

/// The published certificates carrying extra constraints for this q, replayed.
pub fn case_analysis(q: u64, bits: u32) -> Result<Vec<Replay>> {
    if ![7, 13, 19].contains(&q) {
        return Err(LpError::InvalidProblem(format!("no case analysis for q = {q}")));
    }
    let certs: Vec<DualCertificate> =
        published_certificates().into_iter().filter(|c| c.q == q && !c.extras.is_empty()).collect();
    let out = replay_all(&certs, bits)?;
    if let Some(bad) = out.iter().find(|r| !r.bound.is_positive()) {
        return Err(LpError::Shortfall { label: bad.label.clone(), bound: bad.bound.to_f64().unwrap_or(f64::NAN), claimed: 0.0 });
    }
    Ok(out)
}

/// For q = 7 with `β₁ = β₆ = 0`: the four bounds sum to `32/7 + 8/7 + 8/7 + 1`, which equals `4(2 − 1/28)`.
pub fn prime7_identity() -> (BigRational, BigRational) {
    let lhs = rat(32, 7) + rat(8, 7) + rat(8, 7) + BigRational::one();
    let rhs = rat(4, 1) * (rat(2, 1) - rat(1, 28));
    (lhs, rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lem35Check {
    pub size: usize,
    pub triples: u64,
    /// `(ν(G) + 64 m^{2/3} δ^{1/3}) n`.
    pub rhs: f64,
    pub ok: bool,
    /// `(μ(G) + 2^{20} δ^{1/5}) n`.
    pub rhs_prop: f64,
    pub ok_prop: bool,
}

/// Rational `r ≥ x^{1/3}` obtained by stepping a float guess up.
fn cube_root_upper(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let mut g = x.to_f64().unwrap_or(f64::MAX).cbrt();
    loop {
        let r = BigRational::from_float(g).expect("finite");
        if &r * &r * &r >= *x {
            return r;
        }
        g = g.next_up();
    }
}

/// Density bound for type III groups with few Schur triples, premise `δ ≤ 2^{-93} m^{-5}`.
pub fn verify_lem35(a: &GroupSet) -> Result<Lem35Check> {
    let g = a.group();
    if classify(g)? != GroupClass::TypeIII {
        return Err(LpError::Premise(format!("{g} is not type III")));
    }
    let n = g.order() as i64;
    let m = g.exponent() as i64;
    let s = schur_triples(a);
    let delta = BigRational::new(BigInt::from(s.triples), BigInt::from(n * n));
    let cap = BigRational::new(BigInt::one(), (BigInt::one() << 93usize) * BigInt::from(m).pow(5));
    if delta > cap {
        return Err(LpError::Premise(format!("δ = {delta} exceeds 2^-93·m^-5")));
    }
    let nu_g: Ratio<i64> = nu(g)?;
    let nu_g = BigRational::new(BigInt::from(*nu_g.numer()), BigInt::from(*nu_g.denom()));
    // m^{2/3} ≤ cube_root_upper(m²)
    let slack = rat(64, 1) * cube_root_upper(&BigRational::from_integer(BigInt::from(m * m))) * cube_root_upper(&delta);
    let n_r = BigRational::from_integer(BigInt::from(n));
    let rhs = (&nu_g + slack) * &n_r;
    let size = BigRational::from_integer(BigInt::from(a.len()));
    let rhs_prop = bound_prop371(g, &delta)? * &n_r;
    Ok(Lem35Check {
        size: a.len(),
        triples: s.triples,
        ok: size <= rhs,
        rhs: rhs.to_f64().unwrap_or(f64::NAN),
        ok_prop: size <= rhs_prop,
        rhs_prop: rhs_prop.to_f64().unwrap_or(f64::NAN),
    })
}
