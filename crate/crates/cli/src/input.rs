use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use sumfree_core::{GroupSet, GroupSpec};
use sumfree_lp::{parse_rational, ExtraRow};

use crate::error::{CliError, Result};

/// Group spec `d1xd2x...`.
pub fn parse_group(s: &str) -> Result<GroupSpec> {
    Ok(s.parse::<GroupSpec>()?)
}

fn parse_indices(g: &GroupSpec, body: &str, sep: impl Fn(char) -> bool) -> Result<GroupSet> {
    let mut out = Vec::new();
    for tok in body.split(sep).map(str::trim).filter(|t| !t.is_empty() && !t.starts_with('#')) {
        let x: usize = tok.parse().map_err(|_| CliError::Usage(format!("bad element index {tok:?}")))?;
        out.push(x);
    }
    Ok(GroupSet::from_indices(g, out)?)
}

/// Inline comma list of element indices, or a file with one index per line.
pub fn parse_set(g: &GroupSpec, s: &str) -> Result<GroupSet> {
    let inline = s.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    if inline {
        return parse_indices(g, s, |c| c == ',');
    }
    let path = Path::new(s);
    if !path.is_file() {
        return Err(CliError::Usage(format!("{s:?} is neither an index list nor a readable file")));
    }
    let body = std::fs::read_to_string(path)?;
    parse_indices(g, &body, |c| c == '\n')
}

pub fn parse_big_ratio(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|e| CliError::Usage(e.to_string()))
}

/// A rational small enough for `Ratio<i64>`.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let r = parse_big_ratio(s)?;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
        _ => Err(CliError::Usage(format!("{s} is out of range"))),
    }
}

/// Extra LP row `i:a,j:b<=rhs`, e.g. `7:2,14:1<=4/3`.
pub fn parse_extra(s: &str) -> Result<ExtraRow> {
    let (lhs, rhs) = s.split_once("<=").ok_or_else(|| CliError::Usage(format!("extra row {s:?} lacks <=")))?;
    let mut coeffs = Vec::new();
    for term in lhs.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (j, a) = term.split_once(':').unwrap_or((term, "1"));
        let j: usize = j.trim().parse().map_err(|_| CliError::Usage(format!("bad index in {term:?}")))?;
        let a: i64 = a.trim().parse().map_err(|_| CliError::Usage(format!("bad coefficient in {term:?}")))?;
        coeffs.push((j, a));
    }
    Ok(ExtraRow::new(&coeffs, parse_big_ratio(rhs.trim())?))
}

pub fn ratio_string(r: &Ratio<i64>) -> String {
    r.to_string()
}

pub fn big_ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn big(r: &Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}
