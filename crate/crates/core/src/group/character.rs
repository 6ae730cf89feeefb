use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use rustfft::FftPlanner;

use super::{is_prime, GroupSet, GroupSpec};
use crate::error::{Error, Result};

/// The character `χ_a(x) = exp(2πi Σ a_j x_j / d_j)`, indexed like elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub index: usize,
}

impl Character {
    pub fn new(index: usize) -> Self {
        Character { index }
    }

    pub fn trivial() -> Self {
        Character { index: 0 }
    }

    pub fn coords(&self, g: &GroupSpec) -> Vec<u64> {
        g.coords(self.index)
    }

    /// Integer phase t with `χ(x) = exp(2πi t / m)`.
    pub fn phase(&self, g: &GroupSpec, x: usize) -> u64 {
        phase(g, self.index, x)
    }

    pub fn eval(&self, g: &GroupSpec, x: usize) -> Complex64 {
        let t = self.phase(g, x) as f64 / g.exponent() as f64;
        Complex64::from_polar(1.0, TAU * t)
    }

    /// Order of the character in the dual group.
    pub fn order(&self, g: &GroupSpec) -> u64 {
        g.element_order(self.index)
    }

    /// `arg χ(x)` in `[-π, π)`.
    pub fn arg(&self, g: &GroupSpec, x: usize) -> f64 {
        let m = g.exponent();
        let t = self.phase(g, x);
        // phases past m/2 wrap to the negative side; t = m/2 maps to -π
        let signed = if 2 * t >= m { t as i64 - m as i64 } else { t as i64 };
        TAU * signed as f64 / m as f64
    }

    pub fn kernel(&self, g: &GroupSpec) -> GroupSet {
        GroupSet::from_predicate(g, |x| self.phase(g, x) == 0)
    }
}

pub(crate) fn phase(g: &GroupSpec, a: usize, x: usize) -> u64 {
    let m = g.exponent();
    let ac = g.coords(a);
    let xc = g.coords(x);
    let mut t: u64 = 0;
    for ((&ai, &xi), &w) in ac.iter().zip(&xc).zip(g.phase_mult()) {
        t = (t + (ai * xi % m) * w % m) % m;
    }
    t
}

fn transform(g: &GroupSpec, f: &[Complex64], inverse_sign: bool) -> Vec<Complex64> {
    assert_eq!(f.len(), g.order());
    let mut data = f.to_vec();
    let mut planner = FftPlanner::<f64>::new();
    let n = g.order();
    let mut stride = n;
    for &d in g.factors() {
        let d = d as usize;
        stride /= d;
        // rustfft's inverse uses exp(+2πi jk/d), which is the pairing convention here
        let plan = if inverse_sign { planner.plan_fft_forward(d) } else { planner.plan_fft_inverse(d) };
        let mut line = vec![Complex64::new(0.0, 0.0); d];
        for block in (0..n).step_by(stride * d) {
            for offset in 0..stride {
                let base = block + offset;
                for (k, v) in line.iter_mut().enumerate() {
                    *v = data[base + k * stride];
                }
                plan.process(&mut line);
                for (k, v) in line.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
    }
    data
}

/// `f̂(γ) = Σ_x f(x) γ(x)` for every character, indexed by character index.
pub fn dft(g: &GroupSpec, f: &[Complex64]) -> Vec<Complex64> {
    transform(g, f, false)
}

/// Inverse of [`dft`]: `f(x) = n^{-1} Σ_γ f̂(γ) conj(γ(x))`.
pub fn idft(g: &GroupSpec, fhat: &[Complex64]) -> Vec<Complex64> {
    let n = g.order() as f64;
    transform(g, fhat, true).into_iter().map(|z| z / n).collect()
}

impl GroupSet {
    pub fn indicator(&self) -> Vec<Complex64> {
        self.group()
            .elements()
            .map(|x| Complex64::new(if self.contains(x) { 1.0 } else { 0.0 }, 0.0))
            .collect()
    }

    pub fn fourier(&self) -> Vec<Complex64> {
        dft(self.group(), &self.indicator())
    }
}

/// A homomorphism `ψ(x) = Σ c_i x_i mod q` onto (or into) `Z/q`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomToCyclic {
    pub modulus: u64,
    pub coeffs: Vec<u64>,
}

impl HomToCyclic {
    pub fn apply(&self, g: &GroupSpec, x: usize) -> u64 {
        g.coords(x)
            .iter()
            .zip(&self.coeffs)
            .fold(0u64, |acc, (&c, &w)| (acc + c * w % self.modulus) % self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// A surjection `G -> Z/q`, available whenever q divides the exponent.
    pub fn surjective(g: &GroupSpec, q: u64) -> Result<Self> {
        if q == 0 || g.exponent() % q != 0 {
            return Err(Error::InvalidArgument(format!("{q} does not divide the exponent of {g}")));
        }
        let coeffs = g.factors().iter().map(|&d| (q / q.gcd(&d)) % q).collect();
        Ok(HomToCyclic { modulus: q, coeffs })
    }

    pub fn preimage(&self, g: &GroupSpec, targets: &[u64]) -> GroupSet {
        GroupSet::from_predicate(g, |x| targets.contains(&self.apply(g, x)))
    }
}

/// Every homomorphism `G -> Z/p` in lexicographic coefficient order, the zero map first.
pub fn homs_to_zp(g: &GroupSpec, p: u64) -> Result<Vec<HomToCyclic>> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    // a generator of C_d must go to an element of order dividing d
    let ranges: Vec<Vec<u64>> = g.factors().iter().map(|&d| if d % p == 0 { (0..p).collect() } else { vec![0] }).collect();
    let mut homs = vec![HomToCyclic { modulus: p, coeffs: vec![] }];
    for r in &ranges {
        homs = homs
            .into_iter()
            .flat_map(|h| {
                r.iter().map(move |&c| {
                    let mut coeffs = h.coeffs.clone();
                    coeffs.push(c);
                    HomToCyclic { modulus: p, coeffs }
                })
            })
            .collect();
    }
    let nonzero = homs.len() - 1;
    let order_p = g.elements().filter(|&x| g.element_order(x) == p).count();
    if nonzero != order_p {
        return Err(Error::TheoremViolation(format!(
            "{nonzero} nonzero homs to Z/{p} but {order_p} elements of order {p}"
        )));
    }
    Ok(homs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn dft_examples() {
        let g = GroupSpec::cyclic(6);
        let full = GroupSet::full(&g).fourier();
        assert!(close(full[0], Complex64::new(6.0, 0.0)));
        assert!(full[1..].iter().all(|z| z.norm() < 1e-9));

        let zero = GroupSet::from_indices(&g, [0]).unwrap().fourier();
        assert!(zero.iter().all(|&z| close(z, Complex64::new(1.0, 0.0))));

        let odds = GroupSet::from_indices(&g, [1, 3, 5]).unwrap().fourier();
        assert!(close(odds[0], Complex64::new(3.0, 0.0)));
        assert!(close(odds[3], Complex64::new(-3.0, 0.0)));
        for a in [1, 2, 4, 5] {
            assert!(odds[a].norm() < 1e-9);
        }
    }

    #[test]
    fn dft_matches_direct_sum_on_products() {
        let g: GroupSpec = "2x3x4".parse().unwrap();
        let a = GroupSet::from_indices(&g, [1, 5, 6, 11, 17, 20]).unwrap();
        let fast = a.fourier();
        for c in g.elements() {
            let chi = Character::new(c);
            let direct: Complex64 = a.iter().map(|x| chi.eval(&g, x)).sum();
            assert!(close(direct, fast[c]), "character {c}");
        }
        let back = idft(&g, &fast);
        for x in g.elements() {
            assert!((back[x].re - if a.contains(x) { 1.0 } else { 0.0 }).abs() < 1e-9);
        }
    }

    #[test]
    fn character_order_and_arg() {
        let g = GroupSpec::cyclic(12);
        let chi = Character::new(3);
        assert_eq!(chi.order(&g), 4);
        assert!((chi.arg(&g, 1) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((chi.arg(&g, 2) + std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(chi.kernel(&g).to_vec(), vec![0, 4, 8]);
    }

    #[test]
    fn hom_examples() {
        let v: GroupSpec = "2x2".parse().unwrap();
        assert_eq!(homs_to_zp(&v, 2).unwrap().iter().filter(|h| !h.is_zero()).count(), 3);
        assert_eq!(homs_to_zp(&GroupSpec::cyclic(7), 2).unwrap().len(), 1);
        let c9 = GroupSpec::cyclic(9);
        assert_eq!(homs_to_zp(&c9, 3).unwrap().len() - 1, 2);
        assert!(homs_to_zp(&c9, 9).is_err());
    }

    #[test]
    fn homs_are_homomorphisms() {
        let g: GroupSpec = "3x6".parse().unwrap();
        for h in homs_to_zp(&g, 3).unwrap() {
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(h.apply(&g, g.add(x, y)), (h.apply(&g, x) + h.apply(&g, y)) % 3);
                }
            }
        }
    }

    #[test]
    fn surjections_exist_for_divisors_of_exponent() {
        let g: GroupSpec = "7x13".parse().unwrap();
        let h = HomToCyclic::surjective(&g, 91).unwrap();
        let image: std::collections::BTreeSet<u64> = g.elements().map(|x| h.apply(&g, x)).collect();
        assert_eq!(image.len(), 91);
        assert!(HomToCyclic::surjective(&g, 49).is_err());
    }
}
