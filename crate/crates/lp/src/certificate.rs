use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LpError, Result};
use crate::problem::ExtraRow;

/// Parses `"3"`, `"-8/7"` or a decimal such as `"0.0650"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || LpError::Parse(format!("not a rational: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").trim_start_matches('0').parse().unwrap_or_else(|_| BigInt::zero());
    let r = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Dual multipliers: `tau` for the sum row, `lambda_i` for `β_i + β_{i+l} ≤ 1`,
/// `mu_i` for `β_i + β_{2i} ≤ 1` and `theta_t` for the extra rows.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCertificate {
    pub label: String,
    pub q: u64,
    pub l: u64,
    pub tau: BigRational,
    /// Keyed by index mod q.
    pub lambda: BTreeMap<usize, BigRational>,
    pub mu: BTreeMap<usize, BigRational>,
    pub theta: Vec<BigRational>,
    pub extras: Vec<ExtraRow>,
    pub claimed: BigRational,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    label: String,
    q: u64,
    l: u64,
    tau: String,
    lambda: BTreeMap<String, String>,
    mu: BTreeMap<String, String>,
    theta: Vec<String>,
    extras: Vec<ExtraRow>,
    claimed: String,
}

fn parse_map(q: u64, raw: &BTreeMap<String, String>) -> Result<BTreeMap<usize, BigRational>> {
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (k, v) in raw {
        let idx: u64 = k.parse().map_err(|_| LpError::Parse(format!("bad index {k:?}")))?;
        *out.entry((idx % q) as usize).or_insert_with(BigRational::zero) += parse_rational(v)?;
    }
    Ok(out)
}

fn print_map(q: u64, map: &BTreeMap<usize, BigRational>) -> BTreeMap<String, String> {
    // certificates index 1..q, so 0 is printed as q
    map.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(&k, v)| ((if k == 0 { q as usize } else { k }).to_string(), v.to_string()))
        .collect()
}

impl DualCertificate {
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawCertificate = serde_json::from_str(s).map_err(|e| LpError::Parse(e.to_string()))?;
        if raw.q == 0 {
            return Err(LpError::Parse("q must be positive".into()));
        }
        let cert = DualCertificate {
            label: raw.label,
            q: raw.q,
            l: raw.l,
            tau: parse_rational(&raw.tau)?,
            lambda: parse_map(raw.q, &raw.lambda)?,
            mu: parse_map(raw.q, &raw.mu)?,
            theta: raw.theta.iter().map(|t| parse_rational(t)).collect::<Result<_>>()?,
            extras: raw.extras,
            claimed: parse_rational(&raw.claimed)?,
        };
        if cert.theta.len() != cert.extras.len() {
            return Err(LpError::Parse(format!(
                "{}: {} theta values for {} extra rows",
                cert.label,
                cert.theta.len(),
                cert.extras.len()
            )));
        }
        Ok(cert)
    }

    pub fn to_json(&self) -> String {
        let raw = RawCertificate {
            label: self.label.clone(),
            q: self.q,
            l: self.l,
            tau: self.tau.to_string(),
            lambda: print_map(self.q, &self.lambda),
            mu: print_map(self.q, &self.mu),
            theta: self.theta.iter().map(|t| t.to_string()).collect(),
            extras: self.extras.clone(),
            claimed: self.claimed.to_string(),
        };
        serde_json::to_string_pretty(&raw).expect("certificate serializes")
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.tau.is_negative()
            && self.lambda.values().chain(self.mu.values()).chain(&self.theta).all(|v| !v.is_negative())
    }

    pub fn lambda_at(&self, i: usize) -> BigRational {
        self.lambda.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mu_at(&self, i: usize) -> BigRational {
        self.mu.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }
}

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../data/certificates/", $name, ".json")))),*]
    };
}

const PUBLISHED: &[(&str, &str)] = embedded![
    "q73_l12", "q67_l11", "q61_l10", "q49_l8", "q43_l7", "q37_l6", "q31_l5", "q31_l4",
    "q19_l3_b14", "q19_l3_c", "q19_l2_b14", "q19_l2_c", "q19_l1_b14", "q19_l1_c",
    "q13_l2_b10", "q13_l2_c", "q13_l1_b10", "q13_l1_c",
    "q7_l1_b3", "q7_l1_b2", "q7_l1_b1", "q7_l1_all",
];

const AMENDED: &[(&str, &str)] = embedded![
    "amended/q73_l12", "amended/q67_l11", "amended/q13_l2_c",
    "amended/q7_l1_b3", "amended/q7_l1_b1", "amended/q7_l1_all",
];

/// The 22 published certificates, exactly as printed.
pub fn published_certificates() -> Vec<DualCertificate> {
    PUBLISHED.iter().map(|(_, s)| DualCertificate::from_json(s).expect("embedded certificate parses")).collect()
}

/// Corrected versions of the certificates whose printed values contain misprints.
pub fn amended_certificates() -> Vec<DualCertificate> {
    AMENDED.iter().map(|(_, s)| DualCertificate::from_json(s).expect("embedded certificate parses")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("0.0650").unwrap(), BigRational::new(13.into(), 200.into()));
        assert_eq!(parse_rational("8/7").unwrap(), BigRational::new(8.into(), 7.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("0").unwrap(), BigRational::zero());
        assert_eq!(parse_rational(".5").unwrap(), BigRational::new(1.into(), 2.into()));
        for bad in ["", "x", "1/0", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn embedded_sets_load() {
        let p = published_certificates();
        assert_eq!(p.len(), 22);
        assert!(p.iter().all(|c| c.is_nonnegative()));
        assert_eq!(amended_certificates().len(), 6);
        let b3 = p.iter().find(|c| c.label == "q7_l1_b3").unwrap();
        // λ9 reduces to λ2 mod 7
        assert!(b3.lambda.contains_key(&2));
    }

    #[test]
    fn json_round_trip() {
        for c in published_certificates() {
            assert_eq!(DualCertificate::from_json(&c.to_json()).unwrap(), c);
        }
    }
}
