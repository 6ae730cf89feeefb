use num_integer::Integer;

use super::{construct_extremal, nu};
use crate::error::{Error, Result};
use crate::group::{GroupSet, GroupSpec};

/// Lookup tables for groups of order at most 64, with sets as u64 masks.
pub(super) struct MaskTables {
    pub n: usize,
    add: Vec<u8>,
    sub: Vec<u8>,
    dbl: Vec<u8>,
    half: Vec<u64>,
}

impl MaskTables {
    pub fn new(g: &GroupSpec) -> Self {
        let n = g.order();
        assert!(n <= 64, "mask search needs n <= 64");
        let mut add = vec![0u8; n * n];
        let mut sub = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                add[x * n + y] = g.add(x, y) as u8;
                sub[x * n + y] = g.sub(x, y) as u8;
            }
        }
        let dbl: Vec<u8> = (0..n).map(|x| add[x * n + x]).collect();
        let mut half = vec![0u64; n];
        for y in 0..n {
            half[dbl[y] as usize] |= 1 << y;
        }
        MaskTables { n, add, sub, dbl, half }
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.sub[x * self.n + y] as usize
    }

    /// Elements y that can no longer join S once x joins (x itself included).
    #[inline]
    pub fn forbid(&self, x: usize, s: &[u8]) -> u64 {
        let mut f = self.half[x] | 1 << self.dbl[x] | 1 << x;
        for &s in s {
            let s = s as usize;
            f |= 1 << self.add(x, s) | 1 << self.sub(s, x) | 1 << self.sub(x, s);
        }
        f
    }

    /// Candidates in `c` that cannot both join S alongside y.
    #[inline]
    fn pair_conflicts(&self, y: usize, s: &[u8], c: u64) -> u64 {
        let mut f = self.half[y] | 1 << self.dbl[y];
        for &s in s {
            let s = s as usize;
            f |= 1 << self.sub(s, y) | 1 << self.sub(y, s) | 1 << self.add(y, s);
        }
        f & c & !(1 << y)
    }

    pub fn is_sum_free_mask(&self, m: u64) -> bool {
        let mut a = m;
        while a != 0 {
            let x = a.trailing_zeros() as usize;
            a &= a - 1;
            let mut b = m;
            while b != 0 {
                let y = b.trailing_zeros() as usize;
                b &= b - 1;
                if m >> self.add(x, y) & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Search knobs for [`mu_exact`].
#[derive(Clone, Debug)]
pub struct MuOptions {
    /// Largest group order accepted.
    pub bound: usize,
    /// Node budget; exceeding it returns a non-optimal result.
    pub node_limit: u64,
    /// Start from the extremal construction as incumbent.
    pub seed: bool,
    /// Fix the least orbit met by the set under multiplication by units.
    pub symmetry: bool,
}

impl Default for MuOptions {
    fn default() -> Self {
        MuOptions { bound: 48, node_limit: 2_000_000_000, seed: true, symmetry: true }
    }
}

#[derive(Clone, Debug)]
pub struct MuResult {
    pub size: usize,
    pub witness: GroupSet,
    /// False when the node budget ran out before the tree was exhausted.
    pub optimal: bool,
    pub nodes: u64,
}

struct Search<'a> {
    t: &'a MaskTables,
    order: Vec<usize>,
    best: usize,
    best_set: u64,
    cap: usize,
    nodes: u64,
    limit: u64,
    exhausted: bool,
    stack: Vec<u8>,
}

impl Search<'_> {
    fn clique_cover_bound(&self, c: u64) -> usize {
        let mut rest = c;
        let mut cliques = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut clique = 1u64 << v;
            let mut pool = self.t.pair_conflicts(v, &self.stack, rest);
            while pool != 0 {
                let u = pool.trailing_zeros() as usize;
                clique |= 1 << u;
                pool &= self.t.pair_conflicts(u, &self.stack, rest) & !(1 << u);
            }
            rest &= !clique;
            cliques += 1;
        }
        cliques
    }

    fn run(&mut self, s_mask: u64, c: u64) {
        if self.exhausted || self.best >= self.cap {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
            return;
        }
        let size = self.stack.len();
        if size > self.best {
            self.best = size;
            self.best_set = s_mask;
        }
        if c == 0 {
            return;
        }
        if size + c.count_ones() as usize <= self.best {
            return;
        }
        if size + self.clique_cover_bound(c) <= self.best {
            return;
        }
        let x = *self.order.iter().find(|&&x| c >> x & 1 == 1).expect("c nonempty");
        let f = self.t.forbid(x, &self.stack);
        self.stack.push(x as u8);
        self.run(s_mask | 1 << x, c & !f);
        self.stack.pop();
        self.run(s_mask, c & !(1 << x));
    }
}

/// Orbits of nonzero elements under `x ↦ u·x`, u a unit mod the exponent, ordered by least element.
fn unit_orbits(g: &GroupSpec) -> Vec<Vec<usize>> {
    let m = g.exponent() as i64;
    let units: Vec<i64> = (1..m.max(2)).filter(|u| u.gcd(&m) == 1).collect();
    let mut seen = vec![false; g.order()];
    let mut orbits = Vec::new();
    for x in 1..g.order() {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = units.iter().map(|&u| g.mul(u, x)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// Size of a largest sum-free subset, proved by exhausting a branch-and-bound tree.
///
/// The size is checked against ν(G)·n when the search completes.
pub fn mu_exact(g: &GroupSpec, opts: &MuOptions) -> Result<MuResult> {
    let n = g.order();
    if n > opts.bound.min(64) {
        return Err(Error::Budget(format!("mu search bound {} is below n = {n}", opts.bound.min(64))));
    }
    if n == 1 {
        return Ok(MuResult { size: 0, witness: GroupSet::empty(g), optimal: true, nodes: 0 });
    }
    let t = MaskTables::new(g);

    // static branching order: descending degree in the Schur hypergraph, ties by index
    let mut degree = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            let z = t.add(x, y);
            degree[x] += 1;
            degree[y] += 1;
            degree[z] += 1;
        }
    }
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));

    let (best, best_set) = if opts.seed {
        let seed = construct_extremal(g)?;
        (seed.len(), seed.mask())
    } else {
        (0, 0)
    };
    let mut search =
        Search { t: &t, order, best, best_set, cap: n / 2, nodes: 0, limit: opts.node_limit, exhausted: false, stack: Vec::new() };

    let all_nonzero: u64 = if n == 64 { !1u64 } else { ((1u64 << n) - 1) & !1 };
    if opts.symmetry {
        let mut excluded = 0u64;
        for orbit in unit_orbits(g) {
            let rep = orbit[0];
            let f = t.forbid(rep, &[]);
            search.stack.push(rep as u8);
            search.run(1 << rep, all_nonzero & !f & !excluded);
            search.stack.pop();
            for y in orbit {
                excluded |= 1 << y;
            }
        }
    } else {
        search.run(0, all_nonzero);
    }

    let witness = GroupSet::from_mask(g, search.best_set);
    debug_assert!(t.is_sum_free_mask(search.best_set));
    let optimal = !search.exhausted;
    if optimal {
        let target = nu(g)? * num_rational::Ratio::from_integer(n as i64);
        if num_rational::Ratio::from_integer(search.best as i64) != target {
            return Err(Error::TheoremViolation(format!("mu({g})·n = {} but nu·n = {target}", search.best)));
        }
    }
    Ok(MuResult { size: search.best, witness, optimal, nodes: search.nodes })
}
