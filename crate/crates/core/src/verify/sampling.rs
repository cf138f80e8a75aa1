//! Element samplers.
//!
//! Dense random elements essentially never land on a zero-divisor once the
//! level is 4 or more, so the annihilator suites mix three sources: dense
//! integer vectors, sparse combinations of a few basis vectors, and
//! constructed zero-divisors rescaled by random complex scalars.

use num_traits::Zero;

use crate::constructions::{ann_dim_bound, build_element_with_ann_dim, sign_sequences};
use crate::element::{i_element_unchecked, ComplexScalar, Element};
use crate::rational::{int, ratio, Rational};

use super::rng::TrialRng;

/// Sampling parameters shared by one suite run.
#[derive(Clone, Debug)]
pub struct Sampler {
    pub bound: i64,
    /// Probability `(num, den)` that a dense coefficient is drawn at all.
    pub density: Option<(u64, u64)>,
}

impl Sampler {
    pub fn new(bound: i64) -> Self {
        Sampler {
            bound: bound.max(1),
            density: None,
        }
    }

    fn coeff(&self, rng: &mut TrialRng) -> i64 {
        match self.density {
            Some((num, den)) if !rng.chance(num, den) => 0,
            _ => rng.int_in(self.bound),
        }
    }

    /// Integer coefficients uniform in `[-bound, bound]`.
    pub fn dense(&self, rng: &mut TrialRng, level: u32) -> Element {
        let n = 1usize << level;
        let coeffs = (0..n).map(|_| int(self.coeff(rng))).collect();
        Element::from_vec_unchecked(level, coeffs)
    }

    pub fn nonzero(&self, rng: &mut TrialRng, level: u32) -> Element {
        loop {
            let x = self.dense(rng, level);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Nonzero with `e_0 = 0`.
    pub fn imaginary(&self, rng: &mut TrialRng, level: u32) -> Element {
        loop {
            let mut c = self.dense(rng, level).coeffs().to_vec();
            c[0] = Rational::zero();
            let x = Element::from_vec_unchecked(level, c);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Nonzero and orthogonal to `C_n = span{1, i_n}`; level at least 2.
    pub fn complex_perp(&self, rng: &mut TrialRng, level: u32) -> Element {
        loop {
            let mut c = self.dense(rng, level).coeffs().to_vec();
            c[0] = Rational::zero();
            c[1 << (level - 1)] = Rational::zero();
            let x = Element::from_vec_unchecked(level, c);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// A nonzero complex scalar `p + q i` with small integer parts.
    pub fn complex(&self, rng: &mut TrialRng) -> ComplexScalar {
        loop {
            let s = ComplexScalar::new(int(rng.int_in(self.bound)), int(rng.int_in(self.bound)));
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// One to three basis vectors with coefficients in `[-2, 2] \ {0}`.
    pub fn sparse(&self, rng: &mut TrialRng, level: u32, imaginary: bool) -> Element {
        let n = 1usize << level;
        let terms = rng.range(1, 3) as usize;
        let mut c = vec![Rational::zero(); n];
        for _ in 0..terms {
            let lo = if imaginary && n > 1 { 1 } else { 0 };
            let p = lo + rng.index(n - lo);
            c[p] += int(rng.nonzero_int(2));
        }
        let x = Element::from_vec_unchecked(level, c);
        if x.is_zero() {
            Element::basis(level, n - 1).expect("level already checked")
        } else {
            x
        }
    }

    /// A constructed zero-divisor (level 4 or more): an element with a random
    /// admissible annihilator dimension, or an iterated twisted doubling of a
    /// random `A_4` zero-divisor, multiplied by a random nonzero complex scalar.
    pub fn zero_divisor(&self, rng: &mut TrialRng, level: u32) -> Element {
        assert!(level >= 4, "zero-divisors need level >= 4");
        let base = if rng.coin() {
            let top = ann_dim_bound(level) / 4;
            let d = 4 * rng.range(1, top as i64) as usize;
            build_element_with_ann_dim(level, d)
                .expect("admissible dimension")
                .0
        } else {
            let (a1, a2) = self.a4_pair(rng);
            let mut x = Element::pair(&a1, &a2).expect("level 3 halves");
            let signs = sign_sequences((level - 4) as usize);
            for &s in rng.pick(&signs) {
                let i = i_element_unchecked(x.level());
                let ix = (&i * &x).scale(&int(s.into()));
                x = Element::pair(&x, &ix).expect("same level");
            }
            x
        };
        self.complex(rng).act(&base).expect("same level")
    }

    /// A dense, sparse or constructed element, each a third of the time.
    pub fn mixed(&self, rng: &mut TrialRng, level: u32) -> Element {
        match rng.below(3) {
            0 => self.nonzero(rng, level),
            1 => self.sparse(rng, level, false),
            _ if level >= 4 => self.zero_divisor(rng, level),
            _ => self.sparse(rng, level, true),
        }
    }

    /// Like [`Sampler::mixed`] but always in `C_n^⊥`.
    pub fn mixed_complex_perp(&self, rng: &mut TrialRng, level: u32) -> Element {
        match rng.below(3) {
            0 => self.complex_perp(rng, level),
            1 => {
                let half = 1usize << (level - 1);
                loop {
                    let x = self.sparse(rng, level, true);
                    if x.coeff(half).is_zero() {
                        return x;
                    }
                }
            }
            _ if level >= 4 => self.zero_divisor(rng, level),
            _ => self.complex_perp(rng, level),
        }
    }

    /// Orthogonal imaginary octonions of equal norm `λ`: two distinct
    /// imaginary basis vectors pushed through one or two random reflections
    /// of the imaginary subspace, then scaled by a random nonzero integer.
    pub fn a4_pair(&self, rng: &mut TrialRng) -> (Element, Element) {
        let (mut a, mut b) = self.orthonormal_imaginary_pair(rng, 3);
        let lambda = int(rng.nonzero_int(self.bound));
        a = a.scale(&lambda);
        b = b.scale(&lambda);
        (a, b)
    }

    /// Orthonormal imaginary pair with rational coordinates at `level`.
    pub fn orthonormal_imaginary_pair(&self, rng: &mut TrialRng, level: u32) -> (Element, Element) {
        let n = 1usize << level;
        let p = 1 + rng.index(n - 1);
        let mut q = 1 + rng.index(n - 2);
        if q >= p {
            q += 1;
        }
        let mut a = Element::basis(level, p).expect("valid level");
        let mut b = Element::basis(level, q).expect("valid level");
        for _ in 0..rng.range(1, 2) {
            let v = self.imaginary(rng, level);
            a = reflect(&a, &v);
            b = reflect(&b, &v);
        }
        (a, b)
    }

    /// Rational unit imaginary quaternion via inverse stereographic projection.
    pub fn unit_imaginary_quaternion(&self, rng: &mut TrialRng) -> Element {
        let s = ratio(rng.int_in(self.bound), rng.nonzero_int(self.bound));
        let t = ratio(rng.int_in(self.bound), rng.nonzero_int(self.bound));
        let r2 = &s * &s + &t * &t;
        let den = &r2 + int(1);
        let coeffs = vec![
            Rational::zero(),
            int(2) * &s / &den,
            int(2) * &t / &den,
            (&r2 - int(1)) / &den,
        ];
        let mut x = Element::from_vec_unchecked(2, coeffs);
        // move the pole so the unit vector is not biased toward k
        let shift = rng.below(3) as usize;
        let c = x.coeffs().to_vec();
        let rotated: Vec<Rational> = (0..4)
            .map(|p| if p == 0 { c[0].clone() } else { c[1 + (p - 1 + shift) % 3].clone() })
            .collect();
        x = Element::from_vec_unchecked(2, rotated);
        x
    }

    /// A primitive Pythagorean pair `(c, s)` with `c² + s² = 1`, both nonzero.
    pub fn pythagorean(&self, rng: &mut TrialRng) -> (Rational, Rational) {
        let m = rng.range(2, 6);
        let k = rng.range(1, m - 1);
        let h = m * m + k * k;
        (ratio(m * m - k * k, h), ratio(2 * m * k, h))
    }
}

/// Householder reflection of `u` in the hyperplane orthogonal to `v`.
pub fn reflect(u: &Element, v: &Element) -> Element {
    let vv = v.norm_sq();
    let uv = crate::element::dot(u, v);
    u - &v.scale(&(int(2) * uv / vv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::dot;
    use crate::operators::ann_dim;

    #[test]
    fn orthonormal_pairs_are_orthonormal() {
        let s = Sampler::new(9);
        for t in 0..50 {
            let mut rng = TrialRng::new(1, t);
            let (a, b) = s.orthonormal_imaginary_pair(&mut rng, 3);
            assert_eq!(a.norm_sq(), int(1));
            assert_eq!(b.norm_sq(), int(1));
            assert!(dot(&a, &b).is_zero());
            assert!(a.is_imaginary() && b.is_imaginary());
        }
    }

    #[test]
    fn unit_quaternions_are_unit() {
        let s = Sampler::new(5);
        for t in 0..50 {
            let q = s.unit_imaginary_quaternion(&mut TrialRng::new(2, t));
            assert_eq!(q.norm_sq(), int(1));
            assert!(q.is_imaginary());
        }
    }

    #[test]
    fn constructed_zero_divisors_are_zero_divisors() {
        let s = Sampler::new(9);
        for t in 0..20 {
            let x = s.zero_divisor(&mut TrialRng::new(3, t), 5);
            assert!(ann_dim(&x) > 0, "{x}");
            assert!(x.is_complex_orthogonal());
        }
    }

    #[test]
    fn density_thins_coefficients() {
        let mut s = Sampler::new(9);
        s.density = Some((1, 8));
        let x = s.dense(&mut TrialRng::new(4, 0), 6);
        assert!(x.support().count() < 32);
    }
}
