//! Elements of the Cayley-Dickson algebras `A_n` and their primitive operations.
//!
//! An element of `A_n` is a dense vector of `2^n` rational coefficients over
//! the standard basis. Index `p` splits as `p = p_lo + 2^(n-1) * p_hi`; the pair
//! `(a, b)` stores `a` in the lower half and `b` in the upper half, so `e_0 = 1`
//! and `e_{2^(n-1)} = i_n`. In `A_2` the indices 1, 2, 3 are `i`, `j`, `k`.
//!
//! Two product routes exist. [`multiply`] evaluates the doubling formula
//! `(a,b)(c,d) = (ac - d*b, da + bc*)` recursively and is the reference.
//! The `*` operator expands both factors over the basis and uses the sign table
//! from [`basis_product`]; it is much cheaper for sparse operands and is what
//! the operator builders use. The two are checked against each other in tests.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub const DEFAULT_MAX_LEVEL: u32 = 10;

static MAX_LEVEL: AtomicU32 = AtomicU32::new(DEFAULT_MAX_LEVEL);

/// Largest level accepted by constructors.
pub fn max_level() -> u32 {
    MAX_LEVEL.load(Ordering::Relaxed)
}

/// Changes the process-wide level cap. Exact elimination at level 10 already
/// works on 1024 x 1024 matrices, so raising this is rarely useful.
pub fn set_max_level(cap: u32) {
    // dimensions are stored as usize indices; 2^40 is far beyond any machine anyway
    MAX_LEVEL.store(cap.min(40), Ordering::Relaxed);
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    let cap = max_level();
    if level > cap {
        Err(Error::LevelTooLarge { level, cap })
    } else {
        Ok(())
    }
}

fn check_same(x: &Element, y: &Element) -> Result<()> {
    if x.level != y.level {
        Err(Error::LevelMismatch {
            left: x.level,
            right: y.level,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    level: u32,
    coeffs: Vec<Rational>,
}

impl Element {
    pub fn zero(level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(Self::zero_unchecked(level))
    }

    pub(crate) fn zero_unchecked(level: u32) -> Self {
        Element {
            level,
            coeffs: vec![Rational::zero(); 1usize << level],
        }
    }

    /// The standard basis vector `e_index`.
    pub fn basis(level: u32, index: usize) -> Result<Self> {
        check_level(level)?;
        if index >= 1usize << level {
            return Err(Error::IndexOutOfRange { index, level });
        }
        let mut e = Self::zero_unchecked(level);
        e.coeffs[index] = Rational::one();
        Ok(e)
    }

    pub fn one(level: u32) -> Result<Self> {
        Self::basis(level, 0)
    }

    pub fn from_coeffs(level: u32, coeffs: Vec<Rational>) -> Result<Self> {
        check_level(level)?;
        if coeffs.len() != 1usize << level {
            return Err(Error::input(format!(
                "level {level} needs {} coefficients, got {}",
                1usize << level,
                coeffs.len()
            )));
        }
        Ok(Element { level, coeffs })
    }

    pub(crate) fn from_vec_unchecked(level: u32, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), 1usize << level);
        Element { level, coeffs }
    }

    /// Integer-coefficient convenience constructor, mostly for tests.
    pub fn from_ints(level: u32, terms: &[(usize, i64)]) -> Result<Self> {
        make_element(
            level,
            terms
                .iter()
                .map(|&(p, v)| (p, Rational::from_integer(v.into()))),
        )
    }

    /// The pair `(a, b)` as an element one level up.
    pub fn pair(a: &Element, b: &Element) -> Result<Self> {
        check_same(a, b)?;
        check_level(a.level + 1)?;
        let mut coeffs = a.coeffs.clone();
        coeffs.extend(b.coeffs.iter().cloned());
        Ok(Element {
            level: a.level + 1,
            coeffs,
        })
    }

    /// Inverse of [`Element::pair`]. Fails at level 0.
    pub fn halves(&self) -> Result<(Element, Element)> {
        if self.level == 0 {
            return Err(Error::input("level-0 elements cannot be split"));
        }
        let h = self.dim() / 2;
        Ok((
            Element::from_vec_unchecked(self.level - 1, self.coeffs[..h].to_vec()),
            Element::from_vec_unchecked(self.level - 1, self.coeffs[h..].to_vec()),
        ))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &Rational {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Nonzero `(index, coefficient)` pairs in index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Element {
        Element::from_vec_unchecked(self.level, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Squared norm; the standard basis is orthonormal.
    pub fn norm_sq(&self) -> Rational {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// True when orthogonal to `C_n = span{1, i_n}`. Level 0 has no `i_n`, so
    /// only the zero element qualifies there.
    pub fn is_complex_orthogonal(&self) -> bool {
        if self.level == 0 {
            return self.is_zero();
        }
        self.coeffs[0].is_zero() && self.coeffs[self.dim() / 2].is_zero()
    }

    /// Left multiplication by `i_n`. Panics at level 0.
    pub fn i_times(&self) -> Element {
        assert!(self.level >= 1, "i_n does not exist at level 0");
        let i = i_element_unchecked(self.level);
        &i * self
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}[{}]", self.level, self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, c) in self.support() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}*", format_rational(&a))?;
            }
            write!(f, "e{p}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Builds a dense element from sparse `(index, value)` entries. Repeated
/// indices accumulate.
pub fn make_element<I>(level: u32, sparse: I) -> Result<Element>
where
    I: IntoIterator<Item = (usize, Rational)>,
{
    let mut e = Element::zero(level)?;
    for (index, value) in sparse {
        if index >= e.dim() {
            return Err(Error::IndexOutOfRange { index, level });
        }
        e.coeffs[index] += value;
    }
    Ok(e)
}

impl From<&Element> for BTreeMap<usize, Rational> {
    fn from(e: &Element) -> Self {
        e.support().map(|(p, c)| (p, c.clone())).collect()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in addition");
        Element::from_vec_unchecked(
            self.level,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        )
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in subtraction");
        Element::from_vec_unchecked(
            self.level,
            self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        )
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::from_vec_unchecked(self.level, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Product through the basis sign table. Panics on level mismatch; use
/// [`multiply`] for a checked call.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        assert_eq!(self.level, rhs.level, "level mismatch in product");
        let mut out = vec![Rational::zero(); self.dim()];
        let rhs_support: Vec<(usize, &Rational)> = rhs.support().collect();
        for (p, x) in self.support() {
            for &(q, y) in &rhs_support {
                let term = x * y;
                if basis_sign(self.level, p, q) > 0 {
                    out[p ^ q] += term;
                } else {
                    out[p ^ q] -= term;
                }
            }
        }
        Element::from_vec_unchecked(self.level, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Element {
            type Output = Element;
            fn $m(self, rhs: Element) -> Element {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

fn conj_slice(v: &[Rational]) -> Vec<Rational> {
    v.iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { c.clone() } else { -c })
        .collect()
}

fn mul_rec(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = mul_rec(a, c);
    let dstar_b = mul_rec(&conj_slice(d), b);
    let da = mul_rec(d, a);
    let b_cstar = mul_rec(b, &conj_slice(c));
    let mut out = Vec::with_capacity(x.len());
    out.extend(ac.into_iter().zip(dstar_b).map(|(p, q)| p - q));
    out.extend(da.into_iter().zip(b_cstar).map(|(p, q)| p + q));
    out
}

/// The Cayley-Dickson product via the recursive doubling formula.
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    check_same(x, y)?;
    Ok(Element::from_vec_unchecked(
        x.level,
        mul_rec(&x.coeffs, &y.coeffs),
    ))
}

/// The involution `(a,b)* = (a*, -b)`: fixes `e_0`, negates everything else.
pub fn conjugate(x: &Element) -> Element {
    Element::from_vec_unchecked(x.level, conj_slice(&x.coeffs))
}

/// `(Re x, Im x)` with `Im x = x - Re(x) e_0`.
pub fn real_imag_split(x: &Element) -> (Rational, Element) {
    let re = x.coeffs[0].clone();
    let mut im = x.clone();
    im.coeffs[0] = Rational::zero();
    (re, im)
}

/// `<x, y> = Re(x y*)`, which is the coordinate dot product.
pub fn inner_product_real(x: &Element, y: &Element) -> Result<Rational> {
    check_same(x, y)?;
    Ok(dot(x, y))
}

pub(crate) fn dot(x: &Element, y: &Element) -> Rational {
    x.coeffs
        .iter()
        .zip(&y.coeffs)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| a * b)
        .sum()
}

/// `[x, y, z] = (xy)z - x(yz)`.
pub fn associator_of_triple(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    check_same(x, y)?;
    check_same(y, z)?;
    Ok(&(&(x * y) * z) - &(x * &(y * z)))
}

/// `i_n = (0, 1) = e_{2^(n-1)}`.
pub fn i_element(level: u32) -> Result<Element> {
    if level == 0 {
        return Err(Error::input("i_n is defined only for level >= 1"));
    }
    Element::basis(level, 1usize << (level - 1))
}

pub(crate) fn i_element_unchecked(level: u32) -> Element {
    let mut e = Element::zero_unchecked(level);
    e.coeffs[1usize << (level - 1)] = Rational::one();
    e
}

/// Sign `s` with `e_p e_q = s e_{p ^ q}` at the given level. Indices must be
/// in range; callers outside the crate go through [`basis_product`].
pub(crate) fn basis_sign(level: u32, p: usize, q: usize) -> i8 {
    // Unwind the doubling formula one level at a time. For basis vectors
    // (a,0)(c,0) = (ac,0), (a,0)(0,d) = (0,da), (0,b)(c,0) = (0,bc*),
    // (0,b)(0,d) = (-d*b,0), and c* = c for c = e_0, -c otherwise.
    let (mut p, mut q) = (p, q);
    let mut sign = 1i8;
    let mut n = level;
    while n > 0 {
        let half = 1usize << (n - 1);
        let (ph, qh) = (p & half != 0, q & half != 0);
        let conj_q = if q & (half - 1) == 0 { 1 } else { -1 };
        match (ph, qh) {
            (false, false) => {}
            (false, true) => std::mem::swap(&mut p, &mut q),
            (true, false) => sign *= conj_q,
            (true, true) => {
                sign *= -conj_q;
                std::mem::swap(&mut p, &mut q);
            }
        }
        p &= half - 1;
        q &= half - 1;
        n -= 1;
    }
    sign
}

/// `e_p e_q = sign * e_r`; returns `(sign, r)` with `r = p ^ q`.
pub fn basis_product(level: u32, p: usize, q: usize) -> Result<(i8, usize)> {
    check_level(level)?;
    for index in [p, q] {
        if index >= 1usize << level {
            return Err(Error::IndexOutOfRange { index, level });
        }
    }
    Ok((basis_sign(level, p, q), p ^ q))
}

/// An element `re + im * i_n` of `C_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexScalar {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexScalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        ComplexScalar::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -&self.im)
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexScalar::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// The element `re e_0 + im i_n` of `A_level`, level >= 1.
    pub fn to_element(&self, level: u32) -> Result<Element> {
        if level == 0 {
            return Err(Error::input("C_n needs level >= 1"));
        }
        let mut e = Element::zero(level)?;
        e.coeffs[0] = self.re.clone();
        e.coeffs[1usize << (level - 1)] = self.im.clone();
        Ok(e)
    }

    /// Left action `alpha * x` on `A_n`.
    pub fn act(&self, x: &Element) -> Result<Element> {
        Ok(&self.to_element(x.level())? * x)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {} i",
            format_rational(&self.re),
            format_rational(&self.im)
        )
    }
}

/// `<x, y>_H = <x, y> - i_n <i_n x, y>`, the projection of `x y*` onto `C_n`.
pub fn hermitian_inner_product(x: &Element, y: &Element) -> Result<ComplexScalar> {
    check_same(x, y)?;
    if x.level == 0 {
        return Err(Error::input("the Hermitian form needs level >= 1"));
    }
    let re = dot(x, y);
    let im = -dot(&x.i_times(), y);
    Ok(ComplexScalar::new(re, im))
}
