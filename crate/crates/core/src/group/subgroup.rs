use std::collections::HashSet;

use num_rational::Ratio;

use super::{prime_factors, smith_normal_form, GroupSet, GroupSpec};
use crate::error::{Error, Result};

/// A subgroup, stored by its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: GroupSet,
}

impl Subgroup {
    /// Verifies closure and wraps the set.
    pub fn from_set(elements: GroupSet) -> Result<Self> {
        let g = elements.group().clone();
        if !elements.contains(0) {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for a in elements.iter() {
            if !elements.contains(g.neg(a)) {
                return Err(Error::InvalidSubgroup(format!("not closed under negation at {a}")));
            }
            for b in elements.iter() {
                if !elements.contains(g.add(a, b)) {
                    return Err(Error::InvalidSubgroup(format!("{a}+{b} escapes the set")));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn trivial(g: &GroupSpec) -> Self {
        Subgroup { elements: GroupSet::from_indices(g, [0]).unwrap() }
    }

    pub fn whole(g: &GroupSpec) -> Self {
        Subgroup { elements: GroupSet::full(g) }
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(g: &GroupSpec, gens: &[usize]) -> Self {
        let mut h = Self::trivial(g);
        for &x in gens {
            h = h.join_element(x);
        }
        h
    }

    /// `H + <x>`.
    pub fn join_element(&self, x: usize) -> Subgroup {
        let g = self.group().clone();
        if self.contains(x) {
            return self.clone();
        }
        let mut out = self.elements.clone();
        let mut multiple = x;
        while !self.contains(multiple) {
            for h in self.elements.iter() {
                out.insert(g.add(h, multiple));
            }
            multiple = g.add(multiple, x);
        }
        Subgroup { elements: out }
    }

    pub fn group(&self) -> &GroupSpec {
        self.elements.group()
    }

    pub fn elements(&self) -> &GroupSet {
        &self.elements
    }

    pub fn into_set(self) -> GroupSet {
        self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group().order() / self.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(x)
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let g = self.group().clone();
        let mut span = Subgroup::trivial(&g);
        let mut gens = Vec::new();
        for x in self.elements.iter() {
            if !span.contains(x) {
                span = span.join_element(x);
                gens.push(x);
            }
        }
        gens
    }

    /// Canonical coset representatives (least index in each coset), in increasing order.
    pub fn coset_representatives(&self) -> Vec<usize> {
        let g = self.group().clone();
        let mut seen = GroupSet::empty(&g);
        let mut reps = Vec::new();
        for x in g.elements() {
            if !seen.contains(x) {
                reps.push(x);
                for h in self.elements.iter() {
                    seen.insert(g.add(x, h));
                }
            }
        }
        reps
    }

    pub fn coset(&self, x: usize) -> GroupSet {
        self.elements.translate(x)
    }
}

/// All subgroups of `g`, each once, sorted by size and then by element list.
pub fn enumerate_subgroups(g: &GroupSpec, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::Budget(format!("subgroup enumeration bound {bound} is below n = {}", g.order())));
    }
    g.ensure_add_table();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut frontier = vec![Subgroup::trivial(g)];
    seen.insert(frontier[0].elements.words().to_vec());
    let mut all = frontier.clone();
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let k = h.join_element(x);
            if seen.insert(k.elements.words().to_vec()) {
                all.push(k.clone());
                frontier.push(k);
            }
        }
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec())));
    Ok(all)
}

/// Size D of the largest proper subgroup and the density λ = D/n.
///
/// D = n/p for the least prime p dividing n (a subgroup of index p always exists);
/// the trivial group gets D = 1.
pub fn defect(g: &GroupSpec) -> (usize, Ratio<i64>) {
    let n = g.order();
    let d = match prime_factors(n as u64).first() {
        Some(&p) => n / p as usize,
        None => 1,
    };
    (d, Ratio::new(d as i64, n as i64))
}

/// The canonical projection `G -> G/H`, with `G/H` in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: GroupSpec,
    target: GroupSpec,
    kernel: Subgroup,
    // columns of the Smith transform that survive (invariant factor > 1)
    columns: Vec<Vec<i64>>,
    images: Vec<usize>,
}

impl Quotient {
    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn project(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn project_set(&self, a: &GroupSet) -> GroupSet {
        let mut out = GroupSet::empty(&self.target);
        for x in a.iter() {
            out.insert(self.project(x));
        }
        out
    }

    /// `π^{-1}(B)`.
    pub fn preimage(&self, b: &GroupSet) -> GroupSet {
        GroupSet::from_predicate(&self.source, |x| b.contains(self.project(x)))
    }

    fn compute_image(&self, x: usize) -> usize {
        let coords = self.source.coords(x);
        let img: Vec<u64> = self
            .columns
            .iter()
            .zip(self.target.factors())
            .map(|(col, &d)| {
                let v: i64 = coords.iter().zip(col).map(|(&c, &t)| c as i64 * t).sum();
                v.rem_euclid(d as i64) as u64
            })
            .collect();
        self.target.index_of(&img)
    }
}

/// Builds `G/H` via the Smith normal form of the relation lattice.
pub fn quotient(g: &GroupSpec, h: &Subgroup) -> Result<Quotient> {
    if h.group() != g {
        return Err(Error::GroupMismatch);
    }
    let h = Subgroup::from_set(h.elements.clone())?;
    let r = g.rank();
    let mut rows: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut row = vec![0i64; r];
            row[i] = g.factors()[i] as i64;
            row
        })
        .collect();
    for x in h.generators() {
        rows.push(g.coords(x).into_iter().map(|c| c as i64).collect());
    }
    let snf = smith_normal_form(&rows, r);
    let mut factors = Vec::new();
    let mut columns = Vec::new();
    for (j, &d) in snf.diagonal.iter().enumerate() {
        if d > 1 {
            factors.push(d as u64);
            columns.push((0..r).map(|i| snf.column_transform[i][j]).collect());
        }
    }
    let target = GroupSpec::new(&factors)?;
    let mut q = Quotient { source: g.clone(), target, kernel: h, columns, images: Vec::new() };
    q.images = g.elements().map(|x| q.compute_image(x)).collect();
    debug_assert!(g.elements().all(|x| (q.images[x] == 0) == q.kernel.contains(x)));
    Ok(q)
}

/// Every abelian group of order `n`, in invariant-factor form, each once.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    fn partitions(e: u32, max: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(max)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    for p in prime_factors(n) {
        let mut e = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        per_prime.push(partitions(e, e).into_iter().map(|part| part.into_iter().map(|k| p.pow(k)).collect()).collect());
    }
    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for choices in per_prime {
        let mut next = Vec::new();
        for acc in &groups {
            for choice in &choices {
                // combine largest-with-largest into invariant factors
                let len = acc.len().max(choice.len());
                let mut inv = vec![1u64; len];
                for (i, &v) in acc.iter().enumerate() {
                    inv[i] *= v;
                }
                for (i, &v) in choice.iter().enumerate() {
                    inv[i] *= v;
                }
                next.push(inv);
            }
        }
        groups = next;
    }
    let mut out: Vec<GroupSpec> = groups
        .into_iter()
        .map(|mut inv| {
            inv.sort_unstable();
            GroupSpec::new(&inv).unwrap()
        })
        .collect();
    out.sort_by(|a, b| a.factors().len().cmp(&b.factors().len()).then_with(|| a.factors().cmp(b.factors())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&g("7"), 100).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(&g("2x2"), 100).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&g("6"), 100).unwrap().len(), 4);
        assert_eq!(enumerate_subgroups(&g("2x2x2"), 100).unwrap().len(), 16);
        assert!(enumerate_subgroups(&g("64"), 32).is_err());
    }

    #[test]
    fn subgroups_sorted_and_closed() {
        let subs = enumerate_subgroups(&g("2x4"), 100).unwrap();
        for w in subs.windows(2) {
            assert!(w[0].order() <= w[1].order());
        }
        for h in &subs {
            assert!(Subgroup::from_set(h.elements().clone()).is_ok());
        }
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&g("7")), (1, Ratio::new(1, 7)));
        assert_eq!(defect(&g("6")), (3, Ratio::new(1, 2)));
        assert_eq!(defect(&g("2x2")), (2, Ratio::new(1, 2)));
        assert_eq!(defect(&GroupSpec::trivial()).0, 1);
    }

    #[test]
    fn defect_matches_subgroup_enumeration() {
        for n in 2..=24u64 {
            for grp in abelian_groups_of_order(n) {
                let subs = enumerate_subgroups(&grp, 100).unwrap();
                let d = subs.iter().filter(|h| h.order() < grp.order()).map(Subgroup::order).max().unwrap();
                assert_eq!(defect(&grp).0, d, "{grp}");
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let c6 = g("6");
        let h = Subgroup::from_set(GroupSet::from_indices(&c6, [0, 3]).unwrap()).unwrap();
        let q = quotient(&c6, &h).unwrap();
        assert!(q.target().is_isomorphic(&g("3")));

        let c7 = g("7");
        let q = quotient(&c7, &Subgroup::trivial(&c7)).unwrap();
        assert_eq!(q.target().order(), 7);
        assert!((0..7).all(|x| q.project(x) == x));

        let v = g("2x2");
        let h = Subgroup::generated_by(&v, &[1]);
        let q = quotient(&v, &h).unwrap();
        assert_eq!(q.target().factors(), &[2]);
    }

    #[test]
    fn quotient_is_a_surjective_hom_with_kernel_h() {
        for spec in ["4x6", "2x2x4", "3x9", "12"] {
            let grp = g(spec);
            for h in enumerate_subgroups(&grp, 100).unwrap() {
                let q = quotient(&grp, &h).unwrap();
                assert_eq!(q.target().order(), grp.order() / h.order());
                let mut hit = GroupSet::empty(q.target());
                for x in grp.elements() {
                    hit.insert(q.project(x));
                    assert_eq!(q.project(x) == 0, h.contains(x));
                    for y in grp.elements().step_by(5) {
                        assert_eq!(q.project(grp.add(x, y)), q.target().add(q.project(x), q.project(y)));
                    }
                }
                assert_eq!(hit.len(), q.target().order());
            }
        }
    }

    #[test]
    fn non_subgroup_rejected() {
        let c6 = g("6");
        let s = GroupSet::from_indices(&c6, [0, 1]).unwrap();
        assert!(Subgroup::from_set(s).is_err());
    }

    #[test]
    fn groups_of_small_orders() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        let g36: Vec<String> = abelian_groups_of_order(36).iter().map(|g| g.spec_string()).collect();
        assert_eq!(g36, vec!["36", "2x18", "3x12", "6x6"]);
    }
}
