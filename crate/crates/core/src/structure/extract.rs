use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use super::reps::popular_differences;
use crate::error::{Error, Result};
use crate::group::GroupSet;
use crate::sumfree::{is_sum_free, schur_triples};

#[derive(Clone, Debug)]
pub struct Extraction {
    pub set: GroupSet,
    /// 1 when triples were removed one at a time, 2 for the popular-difference route.
    pub branch: u8,
}

fn big(r: Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Sum-free `S ⊆ F` with `|S| ≥ |F| − εn`, for F of size at least (1/3 + ε)n with few Schur triples.
pub fn extract_sumfree(f: &GroupSet, eps: Ratio<i64>) -> Result<Extraction> {
    let n = f.group().order() as i64;
    let eps_b = big(eps);
    let n_b = BigRational::from_integer(n.into());
    if eps <= Ratio::from_integer(0) {
        return Err(Error::Premise("eps must be positive".into()));
    }
    if BigRational::from_integer((f.len() as i64).into()) < (BigRational::new(1.into(), 3.into()) + &eps_b) * &n_b {
        return Err(Error::Premise(format!("|F| = {} is below (1/3 + {eps})n", f.len())));
    }
    let triples = schur_triples(f).triples;
    let cap = &eps_b * &eps_b * &eps_b * &n_b * &n_b / BigRational::from_integer(27.into());
    if BigRational::from_integer(triples.into()) > cap {
        return Err(Error::Premise(format!("F has {triples} Schur triples, above eps³n²/27 = {cap}")));
    }
    if triples == 0 {
        return Ok(Extraction { set: f.clone(), branch: 1 });
    }
    let set = if &cap * &cap <= n_b {
        remove_one_per_triple(f)
    } else {
        let nf = cap.to_f64().unwrap_or(f64::MAX);
        let k = (nf.powf(2.0 / 3.0) / (n as f64).cbrt()).ceil().max(1.0) as u32;
        let diff = f.difference_set(f)?;
        let budget = ((k as f64) * diff.len() as f64).sqrt().floor() as usize;
        return popular_difference_extraction(f, k, budget, 1 << 22).map(|set| Extraction { set, branch: 2 }).and_then(|e| {
            check_post(f, &e.set, eps)?;
            Ok(e)
        });
    };
    check_post(f, &set, eps)?;
    Ok(Extraction { set, branch: 1 })
}

fn check_post(f: &GroupSet, s: &GroupSet, eps: Ratio<i64>) -> Result<()> {
    let n = f.group().order() as i64;
    if !is_sum_free(s) || Ratio::from_integer((f.len() - s.len()) as i64) > eps * n {
        return Err(Error::TheoremViolation(format!("extracted set of size {} misses the guarantee", s.len())));
    }
    Ok(())
}

/// Deletes the sum element of every Schur triple still present, scanning (x, y) in index order.
pub fn remove_one_per_triple(f: &GroupSet) -> GroupSet {
    let g = f.group();
    let mut s = f.clone();
    for x in f.iter() {
        for y in f.iter() {
            let z = g.add(x, y);
            if s.contains(x) && s.contains(y) && s.contains(z) {
                s.remove(z);
            }
        }
    }
    s
}

/// Finds `F′ ⊆ F` with `F′ − F′ ⊆ D_K(F)` deleting at most `budget` elements, then returns `F′ ∖ (F′ − F′)`.
///
/// Greedy deletion first; if that overshoots the budget, a bounded vertex-cover search over
/// the pairs whose difference is not K-popular.
pub fn popular_difference_extraction(f: &GroupSet, k: u32, budget: usize, node_limit: u64) -> Result<GroupSet> {
    let g = f.group();
    let popular = popular_differences(f, k)?;
    let elems = f.to_vec();
    let bad = |x: usize, y: usize| !popular.contains(g.sub(x, y));

    let mut kept = f.clone();
    let mut greedy_deleted = Vec::new();
    loop {
        let worst = kept
            .iter()
            .map(|x| (kept.iter().filter(|&y| bad(x, y) || bad(y, x)).count(), x))
            .filter(|&(c, _)| c > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match worst {
            Some((_, x)) => {
                kept.remove(x);
                greedy_deleted.push(x);
            }
            None => break,
        }
    }

    if greedy_deleted.len() > budget {
        let mut nodes = 0u64;
        let found = cover_search(&elems, &bad, f.clone(), budget, &mut nodes, node_limit);
        kept = match found {
            Some(k) => k,
            None if nodes >= node_limit => {
                return Err(Error::SearchFailure(format!("deletion search exhausted {node_limit} nodes")));
            }
            None => return Err(Error::SearchFailure(format!("no F′ within {budget} deletions"))),
        };
    }
    let diff = kept.difference_set(&kept)?;
    kept.difference(&diff)
}

fn cover_search(
    elems: &[usize],
    bad: &dyn Fn(usize, usize) -> bool,
    kept: GroupSet,
    budget: usize,
    nodes: &mut u64,
    limit: u64,
) -> Option<GroupSet> {
    *nodes += 1;
    if *nodes >= limit {
        return None;
    }
    let live: Vec<usize> = elems.iter().copied().filter(|&x| kept.contains(x)).collect();
    let edge = live
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| live[i..].iter().map(move |&y| (x, y)))
        .find(|&(x, y)| bad(x, y) || bad(y, x));
    let Some((x, y)) = edge else { return Some(kept) };
    if budget == 0 {
        return None;
    }
    for v in if x == y { vec![x] } else { vec![x, y] } {
        let mut next = kept.clone();
        next.remove(v);
        if let Some(found) = cover_search(elems, bad, next, budget - 1, nodes, limit) {
            return Some(found);
        }
    }
    None
}
