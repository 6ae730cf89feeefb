use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{homs_to_zp, quotient, GroupSet, GroupSpec, HomToCyclic, Quotient, Subgroup};
use crate::sumfree::{classify, is_sum_free, GroupClass};

/// Stabilizer `{g : g + X = X}`.
pub fn stabilizer(x: &GroupSet) -> Subgroup {
    let g = x.group();
    let elems = x.to_vec();
    let set = GroupSet::from_predicate(g, |h| elems.iter().all(|&y| x.contains(g.add(y, h))));
    Subgroup::from_set(set).expect("stabilizers are subgroups")
}

#[derive(Clone, Debug)]
pub struct KneserCover {
    pub stabilizer: Subgroup,
    pub quotient: Quotient,
    /// `π(A)`, sum-free in `G/H`.
    pub image: GroupSet,
}

/// Covers a large sum-free A by `π^{-1}(B)` with H the stabilizer of A + A.
pub fn kneser_cover(a: &GroupSet, r: Ratio<i64>) -> Result<KneserCover> {
    let g = a.group();
    let n = g.order() as i64;
    if r <= Ratio::from_integer(0) {
        return Err(Error::Premise("r must be positive".into()));
    }
    if !is_sum_free(a) {
        return Err(Error::Premise("A is not sum-free".into()));
    }
    if Ratio::from_integer(a.len() as i64) < Ratio::new(n, 3) + r {
        return Err(Error::Premise(format!("|A| = {} is below n/3 + {r}", a.len())));
    }
    let h = stabilizer(&a.sumset(a)?);
    if Ratio::from_integer(h.order() as i64) < r * 3 {
        return Err(Error::TheoremViolation(format!("stabilizer of order {} is below 3r = {}", h.order(), r * 3)));
    }
    let q = quotient(g, &h)?;
    let image = q.project_set(a);
    if !is_sum_free(&image) {
        return Err(Error::TheoremViolation("image of A in G/H is not sum-free".into()));
    }
    Ok(KneserCover { stabilizer: h, quotient: q, image })
}

/// A homomorphism onto `Z/p`, p = 3k + 2, together with k.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeICover {
    pub hom: HomToCyclic,
    pub k: u64,
}

impl TypeICover {
    pub fn middle(&self) -> Vec<u64> {
        (self.k + 1..=2 * self.k + 1).collect()
    }
}

/// Finds ψ : G → Z/p with A ⊆ ψ^{-1}({k+1, …, 2k+1}), scanning homomorphisms in canonical order.
pub fn type_i_cover(a: &GroupSet) -> Result<TypeICover> {
    let g = a.group();
    let GroupClass::TypeI(p) = classify(g)? else {
        return Err(Error::NotTypeI(g.to_string()));
    };
    if !is_sum_free(a) {
        return Err(Error::Premise("A is not sum-free".into()));
    }
    let n = g.order() as i64;
    let p_i = p as i64;
    let threshold = (Ratio::new(1, 3) + Ratio::new(1, 3 * (p_i + 1))) * Ratio::from_integer(n);
    if Ratio::from_integer(a.len() as i64) <= threshold {
        return Err(Error::Premise(format!("|A| = {} is not above {threshold}", a.len())));
    }
    let k = (p - 2) / 3;
    for hom in homs_to_zp(g, p)?.into_iter().filter(|h| !h.is_zero()) {
        if a.iter().all(|x| {
            let v = hom.apply(g, x);
            v > k && v <= 2 * k + 1
        }) {
            return Ok(TypeICover { hom, k });
        }
    }
    Err(Error::TheoremViolation(format!("no homomorphism to Z/{p} covers A")))
}

/// Finds c with `B = c·{k+1, …, 2k+1}` in `Z/p`, p = 3k + 2.
pub fn vosper_check(b: &GroupSet) -> Result<u64> {
    let g: &GroupSpec = b.group();
    let p = g.order() as u64;
    if !g.is_cyclic() || !crate::group::is_prime(p) || p % 3 != 2 {
        return Err(Error::Premise(format!("{g} is not Z/p with p ≡ 2 (mod 3)")));
    }
    let k = (p - 2) / 3;
    if b.len() as u64 != k + 1 || !is_sum_free(b) {
        return Err(Error::Premise(format!("B must be sum-free of size {}", k + 1)));
    }
    let middle: Vec<usize> = (k + 1..=2 * k + 1).map(|t| t as usize).collect();
    let middle = GroupSet::from_indices(g, middle)?;
    (1..p)
        .find(|&c| middle.dilate(c as i64) == *b)
        .ok_or_else(|| Error::TheoremViolation(format!("{b:?} is not a dilate of the middle third")))
}
