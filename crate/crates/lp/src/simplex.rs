//! Dense tableau simplex with Bland's rule, generic over f64 and exact rationals.
//!
//! Solves `max c·x` subject to `A x ≤ b`, `x ≥ 0`, with b of any sign.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero_s(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    fn lt(&self, o: &Self) -> bool;
}

const F64_TOL: f64 = 1e-10;

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &BigRational) -> Self {
        num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        *self > F64_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -F64_TOL
    }
    fn lt(&self, o: &Self) -> bool {
        *self < *o - F64_TOL
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    PivotLimit,
}

#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub status: Status,
    pub x: Vec<T>,
    /// Row multipliers; `y ≥ 0` and `Aᵀy ≥ c` at optimality.
    pub y: Vec<T>,
    pub value: T,
    /// Basic column of each row (columns `n..n+m` are slacks).
    pub basis: Vec<usize>,
    pub pivots: usize,
}

/// Columns: `0..n` structural, `n..n+m` slacks, `n+m` the phase-one artificial (while present).
struct Tableau<T> {
    n: usize,
    m: usize,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
    pivot_limit: usize,
}

impl<T: Scalar> Tableau<T> {
    fn new(a: &[Vec<BigRational>], b: &[BigRational], with_artificial: bool, pivot_limit: usize) -> Self {
        let m = a.len();
        let n = a.first().map_or(0, |r| r.len());
        let width = n + m + usize::from(with_artificial);
        let mut rows = Vec::with_capacity(m);
        for (i, row) in a.iter().enumerate() {
            let mut r = vec![T::zero(); width];
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    r[j] = T::from_rational(v);
                }
            }
            r[n + i] = T::one();
            if with_artificial {
                r[n + m] = T::zero().sub(&T::one());
            }
            rows.push(r);
        }
        Tableau {
            n,
            m,
            rows,
            rhs: b.iter().map(T::from_rational).collect(),
            basis: (n..n + m).collect(),
            pivots: 0,
            pivot_limit,
        }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.rows[r][e].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero_s() {
                *v = v.div(&p);
            }
        }
        self.rhs[r] = self.rhs[r].div(&p);
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.m {
            if i == r || self.rows[i][e].is_zero_s() {
                continue;
            }
            let f = self.rows[i][e].clone();
            for (j, pv) in prow.iter().enumerate() {
                if !pv.is_zero_s() {
                    self.rows[i][j] = self.rows[i][j].sub(&f.mul(pv));
                }
            }
            self.rows[i][e] = T::zero();
            self.rhs[i] = self.rhs[i].sub(&f.mul(&prhs));
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    /// Reduced costs `c_j − c_Bᵀ B⁻¹ A_j` for the given column costs.
    fn reduced(&self, cost: &[T]) -> Vec<T> {
        let mut d: Vec<T> = cost.to_vec();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero_s() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero_s() {
                    d[j] = d[j].sub(&cb.mul(v));
                }
            }
        }
        d
    }

    /// Bland's rule iterations maximising `cost·x`; columns in `banned` never enter.
    fn optimize(&mut self, cost: &[T], banned: Option<usize>) -> Status {
        loop {
            if self.pivots >= self.pivot_limit {
                return Status::PivotLimit;
            }
            let d = self.reduced(cost);
            let Some(e) = (0..self.width()).find(|&j| Some(j) != banned && d[j].is_pos()) else {
                return Status::Optimal;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                let a = &self.rows[i][e];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rhs[i].div(a);
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio.lt(&lr) || (!lr.lt(&ratio) && self.basis[i] < self.basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Status::Unbounded,
            }
        }
    }

    /// Phase one on `max −x₀`; leaves a feasible basis without the artificial column.
    fn phase_one(&mut self) -> Status {
        let art = self.n + self.m;
        let worst = (0..self.m).filter(|&i| self.rhs[i].is_neg()).min_by(|&i, &j| {
            if self.rhs[i].lt(&self.rhs[j]) {
                std::cmp::Ordering::Less
            } else if self.rhs[j].lt(&self.rhs[i]) {
                std::cmp::Ordering::Greater
            } else {
                i.cmp(&j)
            }
        });
        if let Some(r) = worst {
            self.pivot(r, art);
            let mut cost = vec![T::zero(); self.width()];
            cost[art] = T::zero().sub(&T::one());
            match self.optimize(&cost, None) {
                Status::Optimal => {}
                s => return s,
            }
            if let Some(r) = self.basis.iter().position(|&b| b == art) {
                if !self.rhs[r].is_zero_s() {
                    return Status::Infeasible;
                }
                let e = (0..art).find(|&j| !self.rows[r][j].is_zero_s());
                match e {
                    Some(e) => self.pivot(r, e),
                    None => return Status::Infeasible,
                }
            }
        }
        for row in self.rows.iter_mut() {
            row.truncate(art);
        }
        Status::Optimal
    }

    fn solution(&self, status: Status, c: &[T]) -> Solution<T> {
        let mut x = vec![T::zero(); self.n];
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < self.n {
                x[bi] = self.rhs[i].clone();
            }
        }
        let cost = extend(c, self.width());
        let d = self.reduced(&cost);
        let y = (0..self.m).map(|i| T::zero().sub(&d[self.n + i])).collect();
        let value = x.iter().zip(c).fold(T::zero(), |acc, (xi, ci)| acc.add(&xi.mul(ci)));
        Solution { status, x, y, value, basis: self.basis.clone(), pivots: self.pivots }
    }
}

fn extend<T: Scalar>(c: &[T], width: usize) -> Vec<T> {
    let mut cost = c.to_vec();
    cost.resize(width, T::zero());
    cost
}

/// Two-phase simplex from the slack basis.
pub fn solve<T: Scalar>(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational], pivot_limit: usize) -> Solution<T> {
    let mut t: Tableau<T> = Tableau::new(a, b, true, pivot_limit);
    let cost: Vec<T> = c.iter().map(T::from_rational).collect();
    let s = t.phase_one();
    if s != Status::Optimal {
        return t.solution(s, &cost);
    }
    let full = extend(&cost, t.width());
    let s = t.optimize(&full, None);
    t.solution(s, &cost)
}

/// Exact simplex started from a proposed basis; falls back to a full two-phase solve
/// when the basis is singular or infeasible.
pub fn solve_from_basis(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
    basis: &[usize],
    pivot_limit: usize,
) -> Solution<BigRational> {
    let mut t: Tableau<BigRational> = Tableau::new(a, b, false, pivot_limit);
    let mut assigned = vec![false; t.m];
    let mut ok = basis.len() == t.m;
    if ok {
        // pivot each proposed column in, preferring the row it occupied in the float solve
        for (pref, &col) in basis.iter().enumerate() {
            let row = if !assigned[pref] && !t.rows[pref][col].is_zero() {
                Some(pref)
            } else {
                (0..t.m).find(|&i| !assigned[i] && !t.rows[i][col].is_zero())
            };
            match row {
                Some(r) => {
                    if t.basis[r] != col {
                        t.pivot(r, col);
                    }
                    assigned[r] = true;
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
    }
    if !ok || t.rhs.iter().any(|v| v.is_negative()) {
        return solve::<BigRational>(a, b, c, pivot_limit);
    }
    let cost: Vec<BigRational> = c.to_vec();
    let full = extend(&cost, t.width());
    let s = t.optimize(&full, None);
    t.solution(s, &cost)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect()
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 2y, x + y ≤ 4, x + 3y ≤ 6, x ≤ 3
        let a = mat(&[&[1, 1], &[1, 3], &[1, 0]]);
        let b = vec![r(4), r(6), r(3)];
        let c = vec![r(3), r(2)];
        let s = solve::<BigRational>(&a, &b, &c, 1000);
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.value, r(11));
        assert_eq!(s.x, vec![r(3), r(1)]);
        // strong duality
        let dual: BigRational = s.y.iter().zip(&b).map(|(y, b)| y * b).sum();
        assert_eq!(dual, r(11));
        let f = solve::<f64>(&a, &b, &c, 1000);
        assert!((f.value - 11.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // max −x − y, x + y ≥ 2, x ≤ 3
        let a = mat(&[&[-1, -1], &[1, 0]]);
        let b = vec![r(-2), r(3)];
        let c = vec![r(-1), r(-1)];
        let s = solve::<BigRational>(&a, &b, &c, 1000);
        assert_eq!(s.status, Status::Optimal);
        assert_eq!(s.value, r(-2));
        let warm = solve_from_basis(&a, &b, &c, &s.basis, 1000);
        assert_eq!(warm.value, r(-2));
        assert_eq!(warm.y, s.y);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let a = mat(&[&[1], &[-1]]);
        let s = solve::<BigRational>(&a, &[r(1), r(-2)], &[r(1)], 100);
        assert_eq!(s.status, Status::Infeasible);
        let a = mat(&[&[-1]]);
        let s = solve::<f64>(&a, &[r(1)], &[r(1)], 100);
        assert_eq!(s.status, Status::Unbounded);
    }
}
