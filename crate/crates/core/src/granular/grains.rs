use serde::Serialize;

use crate::group::{GroupSet, GroupSpec, Subgroup};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GrainKind {
    /// Grains are the cosets of a subgroup of this order.
    Coset { order: usize },
    Progression { d: usize, l: usize },
}

/// A partition of G into grains plus, for progressions, short leftover pieces.
#[derive(Clone, Debug)]
pub struct GrainStructure {
    pub kind: GrainKind,
    pub grains: Vec<GroupSet>,
    pub leftovers: Vec<GroupSet>,
}

impl GrainStructure {
    pub fn cosets(h: &Subgroup) -> Self {
        let grains = h.coset_representatives().into_iter().map(|x| h.coset(x)).collect();
        GrainStructure { kind: GrainKind::Coset { order: h.order() }, grains, leftovers: Vec::new() }
    }

    /// Splits every ⟨d⟩-coset, walked from its least element, into runs `x, x+d, …, x+(L−1)d`.
    pub fn progressions(g: &GroupSpec, d: usize, l: usize) -> Self {
        assert!(l >= 1, "grain length must be positive");
        let hd = Subgroup::generated_by(g, &[d]);
        let m = hd.order();
        let mut grains = Vec::new();
        let mut leftovers = Vec::new();
        for rep in hd.coset_representatives() {
            let walk: Vec<usize> = std::iter::successors(Some(rep), |&x| Some(g.add(x, d))).take(m).collect();
            let mut chunks = walk.chunks(l);
            for chunk in chunks.by_ref() {
                let piece = GroupSet::from_indices(g, chunk.iter().copied()).expect("elements of g");
                if chunk.len() == l {
                    grains.push(piece);
                } else {
                    leftovers.push(piece);
                }
            }
        }
        GrainStructure { kind: GrainKind::Progression { d, l }, grains, leftovers }
    }

    /// Whether grains and leftovers partition `g`.
    pub fn is_partition(&self, g: &GroupSpec) -> bool {
        let mut seen = vec![false; g.order()];
        for x in self.grains.iter().chain(&self.leftovers).flat_map(|s| s.iter()) {
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        seen.into_iter().all(|b| b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn progression_grains_of_c10() {
        let g = GroupSpec::cyclic(10);
        let s = GrainStructure::progressions(&g, 2, 2);
        assert_eq!(s.grains.len(), 4);
        assert_eq!(s.leftovers.len(), 2);
        assert_eq!(s.grains[0].to_vec(), vec![0, 2]);
        assert_eq!(s.leftovers[0].to_vec(), vec![8]);
        assert!(s.is_partition(&g));
    }

    #[test]
    fn coset_grains() {
        let g: GroupSpec = "2x6".parse().unwrap();
        let h = Subgroup::generated_by(&g, &[g.index_of(&[0, 3])]);
        let s = GrainStructure::cosets(&h);
        assert_eq!(s.grains.len(), 6);
        assert!(s.leftovers.is_empty());
        assert!(s.is_partition(&g));
    }
}
