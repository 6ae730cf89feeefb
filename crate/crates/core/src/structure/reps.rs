use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{defect, GroupSet};

/// Representation counts `r(A,B,x) = #{(a,b) ∈ A×B : a + b = x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopTable {
    pub r: Vec<u32>,
    pub k: usize,
    pub l: usize,
}

pub fn r_table(a: &GroupSet, b: &GroupSet) -> Result<PopTable> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    let g = a.group();
    g.ensure_add_table();
    let mut r = vec![0u32; g.order()];
    let bs = b.to_vec();
    for x in a.iter() {
        for &y in &bs {
            r[g.add(x, y)] += 1;
        }
    }
    Ok(PopTable { r, k: a.len(), l: b.len() })
}

/// Differences with at least `k` representations `x₁ − x₂`.
pub fn popular_differences(x: &GroupSet, k: u32) -> Result<GroupSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let t = r_table(x, &x.negate())?;
    Ok(GroupSet::from_predicate(x.group(), |d| t.r[d] >= k))
}

/// `S_K(A,B) = {x : r(A,B,x) ≥ K}`.
pub fn popular_sums(a: &GroupSet, b: &GroupSet, k: f64) -> Result<GroupSet> {
    if !(k > 0.0) {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    let t = r_table(a, b)?;
    Ok(GroupSet::from_predicate(a.group(), |x| f64::from(t.r[x]) >= k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KpCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
}

/// Pollard–Kneser: `Σ_x min(t, r(A,B,x)) ≥ t·min(n, |A| + |B| − D − t)`.
pub fn verify_kp(a: &GroupSet, b: &GroupSet, t: usize) -> Result<KpCheck> {
    if t > a.len().min(b.len()) {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds min(|A|, |B|)")));
    }
    let table = r_table(a, b)?;
    Ok(kp_from_table(&table, a.group().order(), defect(a.group()).0, t))
}

pub(crate) fn kp_from_table(table: &PopTable, n: usize, d: usize, t: usize) -> KpCheck {
    let lhs: i64 = table.r.iter().map(|&r| i64::from(r).min(t as i64)).sum();
    let inner = (n as i64).min(table.k as i64 + table.l as i64 - d as i64 - t as i64);
    let rhs = t as i64 * inner;
    KpCheck { lhs, rhs, ok: lhs >= rhs }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PopularSumsCheck {
    pub lhs: usize,
    pub rhs: f64,
    pub ok: bool,
}

/// `|S_K(A,B)| ≥ min(n, k + l − D) − 3√(Kn)` whenever `min(k, l) ≥ √(Kn)`.
pub fn verify_popular_sums_bound(a: &GroupSet, b: &GroupSet, k: f64) -> Result<PopularSumsCheck> {
    let n = a.group().order() as f64;
    let root = (k * n).sqrt();
    if (a.len().min(b.len()) as f64) < root {
        return Err(Error::Premise(format!("min(|A|,|B|) = {} is below sqrt(Kn) = {root:.4}", a.len().min(b.len()))));
    }
    let s = popular_sums(a, b, k)?;
    let d = defect(a.group()).0 as f64;
    let rhs = n.min((a.len() + b.len()) as f64 - d) - 3.0 * root;
    Ok(PopularSumsCheck { lhs: s.len(), rhs, ok: s.len() as f64 >= rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn set(g: &GroupSpec, xs: &[usize]) -> GroupSet {
        GroupSet::from_indices(g, xs.iter().copied()).unwrap()
    }

    #[test]
    fn r_table_examples() {
        let c5 = GroupSpec::cyclic(5);
        let a = set(&c5, &[1, 2]);
        let t = r_table(&a, &a).unwrap();
        assert_eq!(t.r, vec![0, 0, 1, 2, 1]);
        assert!(r_table(&GroupSet::empty(&c5), &a).unwrap().r.iter().all(|&r| r == 0));
        let c3 = GroupSpec::cyclic(3);
        assert_eq!(r_table(&GroupSet::full(&c3), &GroupSet::full(&c3)).unwrap().r, vec![3, 3, 3]);
    }

    #[test]
    fn popular_difference_examples() {
        let c5 = GroupSpec::cyclic(5);
        let x = set(&c5, &[0, 1]);
        assert_eq!(popular_differences(&x, 1).unwrap().to_vec(), vec![0, 1, 4]);
        assert!(popular_differences(&x, 2).unwrap().contains(0));
        assert!(popular_differences(&x, 3).unwrap().is_empty());
    }

    #[test]
    fn popular_sum_examples() {
        let c5 = GroupSpec::cyclic(5);
        let a = set(&c5, &[1, 2, 3, 4]);
        assert_eq!(popular_sums(&a, &a, 2.0).unwrap().len(), 5);
        assert!(popular_sums(&a, &a, 5.0).unwrap().is_empty());
        assert_eq!(popular_sums(&a, &a, 1.0).unwrap(), a.sumset(&a).unwrap());
    }

    #[test]
    fn kp_examples() {
        let c7 = GroupSpec::cyclic(7);
        let a = set(&c7, &[1, 2, 3]);
        assert_eq!(verify_kp(&a, &a, 1).unwrap(), KpCheck { lhs: 5, rhs: 4, ok: true });
        assert_eq!(verify_kp(&a, &a, 0).unwrap(), KpCheck { lhs: 0, rhs: 0, ok: true });
        let c5 = GroupSpec::cyclic(5);
        let b = set(&c5, &[1, 2]);
        assert_eq!(verify_kp(&b, &b, 2).unwrap(), KpCheck { lhs: 4, rhs: 2, ok: true });
        assert!(verify_kp(&b, &b, 3).is_err());
    }

    #[test]
    fn popular_sums_bound_example() {
        let c5 = GroupSpec::cyclic(5);
        let a = set(&c5, &[1, 2, 3, 4]);
        let c = verify_popular_sums_bound(&a, &a, 2.0).unwrap();
        assert_eq!(c.lhs, 5);
        assert!(c.rhs < 0.0 && c.ok);
        let small = set(&c5, &[1]);
        assert!(matches!(verify_popular_sums_bound(&small, &small, 2.0), Err(Error::Premise(_))));
    }
}
