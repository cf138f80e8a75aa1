//! Elements with known annihilator dimensions, each packaged as a
//! self-checking [`Certificate`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::element::{dot, i_element, ComplexScalar, Element};
use crate::error::{Error, Result};
use crate::linalg::{OperatorMatrix, Subspace};
use crate::operators::{ann_dim, annihilator, quaternion_span};
use crate::rational::{format_rational, Rational};

/// How a certified element was built: recipe name, parameters, and the
/// certificates it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub recipe: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inner: Vec<Provenance>,
}

impl Provenance {
    fn new(recipe: &str) -> Self {
        Provenance {
            recipe: recipe.to_string(),
            params: BTreeMap::new(),
            inner: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn wrapping(mut self, inner: Provenance) -> Self {
        self.inner.push(inner);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub element: Element,
    pub claimed_ann_dim: usize,
    pub provenance: Provenance,
    pub witness: Option<Subspace>,
}

impl Certificate {
    /// Recomputes the annihilator dimension by exact elimination and checks
    /// that every witness vector is killed from both sides.
    pub fn verify(&self) -> Result<()> {
        let actual = ann_dim(&self.element);
        if actual != self.claimed_ann_dim {
            return Err(Error::CertificateMismatch(format!(
                "{}: claimed dim Ann = {}, computed {}",
                self.provenance.recipe, self.claimed_ann_dim, actual
            )));
        }
        if let Some(w) = &self.witness {
            if w.dim() != self.claimed_ann_dim {
                return Err(Error::CertificateMismatch(format!(
                    "{}: witness has dimension {}, claimed {}",
                    self.provenance.recipe,
                    w.dim(),
                    self.claimed_ann_dim
                )));
            }
            for (k, v) in w.basis().iter().enumerate() {
                if !(&self.element * v).is_zero() || !(v * &self.element).is_zero() {
                    return Err(Error::CertificateMismatch(format!(
                        "{}: witness vector {k} is not annihilated",
                        self.provenance.recipe
                    )));
                }
            }
        }
        Ok(())
    }
}

fn in_complex_perp(a: &Element) -> bool {
    a.level() >= 1 && a.is_complex_orthogonal()
}

/// Largest annihilator dimension at `level`: `max(0, 2^n - 4n + 4)`.
pub fn ann_dim_bound(level: u32) -> usize {
    let top = (1i64 << level) - 4 * i64::from(level) + 4;
    top.max(0) as usize
}

/// Imaginary standard basis vectors `(a, b)` at `level` with
/// `dim Ass[a, b] = d` (or `dim Ass'[a, b] = d` when `anti`).
///
/// Any `d ≡ 4 (mod 8)` with `4 ≤ d ≤ 2^n - 4` is reachable. The pair is
/// built top-down: `d mod 16` decides whether the pair has the shape
/// `((a,0),(b,0))` or `((a,0),(0,b))` and which associator dimension the
/// level below must supply.
pub fn assoc_pair_with_dim(level: u32, d: usize, anti: bool) -> Result<(Element, Element)> {
    if level < 3 {
        return Err(Error::input(format!(
            "associator pairs need level >= 3, got {level}"
        )));
    }
    crate::element::check_level(level)?;
    let max = (1usize << level) - 4;
    if d % 8 != 4 || d < 4 || d > max {
        return Err(Error::input(format!(
            "associator dimension must be 4 mod 8 with 4 <= d <= {max} at level {level}, got {d}"
        )));
    }
    let (p, q) = assoc_pair_indices(level, d, anti);
    Ok((Element::basis(level, p)?, Element::basis(level, q)?))
}

fn assoc_pair_indices(level: u32, d: usize, anti: bool) -> (usize, usize) {
    if level == 3 {
        debug_assert_eq!(d, 4);
        return (1, 2);
    }
    let half = 1usize << (level - 1);
    // Ass[(a,0),(b,0)]   = 2 dim Ass[a,b]  - 4
    // Ass[(a,0),(0,b)]   = 2 dim Ass'[a,b] + 4
    // Ass'[(a,0),(b,0)]  = 2 dim Ass'[a,b] + 4
    // Ass'[(a,0),(0,b)]  = 2 dim Ass[a,b]  - 4
    if d % 16 == 4 {
        let (p, q) = assoc_pair_indices(level - 1, (d + 4) / 2, false);
        if anti {
            (p, q + half)
        } else {
            (p, q)
        }
    } else {
        let (p, q) = assoc_pair_indices(level - 1, (d - 4) / 2, true);
        if anti {
            (p, q)
        } else {
            (p, q + half)
        }
    }
}

/// An element of `A_n` whose annihilator has dimension exactly `d`, for any
/// `d ≡ 0 (mod 4)` with `0 ≤ d ≤ 2^n - 4n + 4`.
pub fn element_with_ann_dim(level: u32, d: usize) -> Result<Certificate> {
    crate::element::check_level(level)?;
    if level == 0 {
        return Err(Error::input("level must be at least 1"));
    }
    let bound = ann_dim_bound(level);
    if d % 4 != 0 || d > bound {
        return Err(Error::input(format!(
            "annihilator dimension at level {level} must be a multiple of 4 between 0 and \
             2^n - 4n + 4 = {bound}, got {d}"
        )));
    }
    let (element, provenance) = build_element_with_ann_dim(level, d)?;
    let witness = annihilator(&element);
    if witness.dim() != d {
        return Err(Error::CertificateMismatch(format!(
            "level {level}: built element has dim Ann {} instead of {d}",
            witness.dim()
        )));
    }
    Ok(Certificate {
        element,
        claimed_ann_dim: d,
        provenance,
        witness: Some(witness),
    })
}

/// The recursion behind [`element_with_ann_dim`] without the final kernel
/// computation. Arguments must already be valid.
pub fn build_element_with_ann_dim(level: u32, d: usize) -> Result<(Element, Provenance)> {
    if d == 0 {
        let prov = Provenance::new("basis_vector").param("index", 1);
        return Ok((Element::basis(level, 1)?, prov));
    }
    let half = 1usize << (level - 1);
    if d < half {
        if d % 8 == 0 {
            let (y, inner) = build_element_with_ann_dim(level - 1, d / 2)?;
            let zero = Element::zero(level - 1)?;
            let prov = Provenance::new("first_slot_doubling")
                .param("ann_dim", d)
                .wrapping(inner);
            return Ok((Element::pair(&y, &zero)?, prov));
        }
        let (a, b) = assoc_pair_with_dim(level - 1, d, true)?;
        let prov = Provenance::new("anti_associator_pair")
            .param("ann_dim", d)
            .param("a", &a)
            .param("b", &b);
        return Ok((Element::pair(&a, &b)?, prov));
    }
    let (a, inner) = build_element_with_ann_dim(level - 1, d + 4 - half)?;
    let ia = &i_element(level - 1)? * &a;
    let prov = Provenance::new("twisted_doubling")
        .param("ann_dim", d)
        .param("sign", "+1")
        .wrapping(inner);
    Ok((Element::pair(&a, &ia)?, prov))
}

/// `(a, sign · i_n a)` for nonzero `a ⊥ C_n`, with annihilator
/// `{(x, s i_n x) : x ∈ Ann a} ⊕ {(y, -s i_n y) : y ∈ H<a, i_n>^⊥}` of
/// dimension `2^n - 4 + dim Ann(a)`.
pub fn double_zero_divisor(a: &Element, sign: i8) -> Result<Certificate> {
    double_with_provenance(a, sign, None)
}

fn double_with_provenance(a: &Element, sign: i8, inner: Option<Provenance>) -> Result<Certificate> {
    if sign != 1 && sign != -1 {
        return Err(Error::input(format!("sign must be +1 or -1, got {sign}")));
    }
    if a.is_zero() {
        return Err(Error::input("cannot double the zero vector"));
    }
    if !in_complex_perp(a) {
        return Err(Error::input(format!(
            "{a} is not orthogonal to C_{} (needs zero e_0 and e_{} coefficients)",
            a.level(),
            a.dim() / 2
        )));
    }
    let level = a.level();
    let i = i_element(level)?;
    let s = Rational::from_integer(sign.into());
    let twist = |x: &Element, s: &Rational| Element::pair(x, &(&i * x).scale(s));

    let ann = annihilator(a);
    let h_perp = quaternion_span(a, &i)?.orthogonal_complement();
    let mut vectors = Vec::with_capacity(ann.dim() + h_perp.dim());
    for x in ann.basis() {
        vectors.push(twist(x, &s)?);
    }
    let minus_s = -&s;
    for y in h_perp.basis() {
        vectors.push(twist(y, &minus_s)?);
    }
    let witness = Subspace::span(level + 1, &vectors)?;
    let claimed = (1usize << level) - 4 + ann.dim();
    let mut prov = Provenance::new("twisted_doubling")
        .param("sign", if sign > 0 { "+1" } else { "-1" })
        .param("a", a);
    if let Some(inner) = inner {
        prov = prov.wrapping(inner);
    }
    Ok(Certificate {
        element: twist(a, &s)?,
        claimed_ann_dim: claimed,
        provenance: prov,
        witness: Some(witness),
    })
}

/// `(α a, β a)` for nonzero `a ⊥ C_n` and `α² + β² ≠ 0`; its annihilator is
/// `Ann(a) × Ann(a)`.
pub fn scale_pair(a: &Element, alpha: &ComplexScalar, beta: &ComplexScalar) -> Result<Certificate> {
    if a.is_zero() || !in_complex_perp(a) {
        return Err(Error::input(format!(
            "{a} must be a nonzero vector orthogonal to C_{}",
            a.level()
        )));
    }
    let s = alpha.mul(alpha).add(&beta.mul(beta));
    if s.is_zero() {
        return Err(Error::input(
            "alpha^2 + beta^2 = 0; use the twisted doubling (a, ±i_n a) for this case",
        ));
    }
    let level = a.level();
    let zero = Element::zero(level)?;
    let ann = annihilator(a);
    let mut vectors = Vec::with_capacity(2 * ann.dim());
    for x in ann.basis() {
        vectors.push(Element::pair(x, &zero)?);
        vectors.push(Element::pair(&zero, x)?);
    }
    let element = Element::pair(&alpha.act(a)?, &beta.act(a)?)?;
    Ok(Certificate {
        element,
        claimed_ann_dim: 2 * ann.dim(),
        provenance: Provenance::new("scaled_pair")
            .param("alpha", alpha)
            .param("beta", beta)
            .param("a", a),
        witness: Some(Subspace::span(level + 1, &vectors)?),
    })
}

/// The `A_4` zero-divisor `(a1, a2)` for orthogonal imaginary octonions of
/// equal norm, with annihilator `{(x, -(a1 a2) x / |a1|²) : x ⊥ H<a1, a2>}`.
pub fn a4_zero_divisor(a1: &Element, a2: &Element) -> Result<Certificate> {
    if a1.level() != 3 || a2.level() != 3 {
        return Err(Error::input(format!(
            "A_4 zero-divisors are built from two octonions (level 3), got levels {} and {}",
            a1.level(),
            a2.level()
        )));
    }
    let rule = "(a1, a2) is a zero-divisor iff a1, a2 are orthogonal imaginary vectors of equal norm";
    let violated = if !a1.is_imaginary() || !a2.is_imaginary() {
        Some("both halves must be imaginary")
    } else if !dot(a1, a2).is_zero() {
        Some("the halves must be orthogonal")
    } else if a1.norm_sq() != a2.norm_sq() {
        Some("the halves must have equal norms")
    } else if a1.is_zero() {
        Some("the halves must be nonzero")
    } else {
        None
    };
    if let Some(why) = violated {
        return Err(Error::input(format!("{why}; {rule}")));
    }
    // |a1 a2| = |a1| |a2| = |a1|², which is rational.
    let n = a1.norm_sq();
    let prod = a1 * a2;
    let factor = -(Rational::one() / &n);
    let h_perp = quaternion_span(a1, a2)?.orthogonal_complement();
    let vectors = h_perp
        .basis()
        .iter()
        .map(|x| Element::pair(x, &(&prod * x).scale(&factor)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        element: Element::pair(a1, a2)?,
        claimed_ann_dim: 4,
        provenance: Provenance::new("a4_pair").param("a1", a1).param("a2", a2),
        witness: Some(Subspace::span(4, &vectors)?),
    })
}

/// Iterated twisted doubling of an `A_4` zero-divisor: one doubling per
/// sign, reaching `dim Ann = 2^n - 4n + 4` at level `4 + signs.len()`.
pub fn top_zero_divisor(level: u32, signs: &[i8], seed: (&Element, &Element)) -> Result<Certificate> {
    if level < 4 {
        return Err(Error::input(format!(
            "top-dimensional families start at level 4, got {level}"
        )));
    }
    crate::element::check_level(level)?;
    if signs.len() != (level - 4) as usize {
        return Err(Error::input(format!(
            "level {level} needs {} signs, got {}",
            level - 4,
            signs.len()
        )));
    }
    let mut cert = a4_zero_divisor(seed.0, seed.1)?;
    for &s in signs {
        cert = double_with_provenance(&cert.element, s, Some(cert.provenance))?;
    }
    let signs_text: Vec<&str> = signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
    cert.provenance = Provenance::new("top_family")
        .param("level", level)
        .param("signs", format!("[{}]", signs_text.join(",")))
        .wrapping(cert.provenance);
    debug_assert_eq!(cert.claimed_ann_dim, ann_dim_bound(level));
    Ok(cert)
}

/// All `2^(n-4)` sign sequences for [`top_zero_divisor`], in lexicographic
/// order with `+1` first.
pub fn sign_sequences(len: usize) -> Vec<Vec<i8>> {
    (0..1usize << len)
        .map(|mask| {
            (0..len)
                .map(|k| if mask >> (len - 1 - k) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// The dimension `a5_family(alpha)` is expected to have.
pub fn a5_expected_dim(alpha: &Element) -> usize {
    let k = Element::basis(2, 3).expect("level 2");
    if *alpha == k || *alpha == -&k {
        16
    } else if alpha.is_imaginary() && alpha.norm_sq().is_one() {
        12
    } else {
        8
    }
}

/// `((t, kt), (αt, (αk)t))` in `A_5`, where `t = e_4` and `k = e_3` in `A_3`
/// and the quaternion `α` sits in the first half of `A_3`. Both halves are
/// `A_4` zero-divisors with intersecting annihilators, so the annihilator
/// has dimension 16, 12 or 8.
pub fn a5_family(alpha: &Element) -> Result<Certificate> {
    if alpha.level() != 2 {
        return Err(Error::input(format!(
            "alpha must be a quaternion (level 2), got level {}",
            alpha.level()
        )));
    }
    if alpha.is_zero() {
        return Err(Error::input("alpha must be nonzero"));
    }
    let t = Element::basis(3, 4)?;
    let k = Element::basis(3, 3)?;
    let alpha3 = Element::pair(alpha, &Element::zero(2)?)?;
    let a = Element::pair(&t, &(&k * &t))?;
    let b = Element::pair(&(&alpha3 * &t), &(&(&alpha3 * &k) * &t))?;
    let element = Element::pair(&a, &b)?;
    let witness = annihilator(&element);
    Ok(Certificate {
        element,
        claimed_ann_dim: a5_expected_dim(alpha),
        provenance: Provenance::new("a5_family").param("alpha", alpha),
        witness: Some(witness),
    })
}

/// The automorphism of `A_3` sending `i ↦ x`, `j ↦ y`, `t ↦ z`, extended over
/// the basis words `1, i, j, ij, t, it, jt, (ij)t` (which are `e_0..e_7` in
/// order). The result is checked on all 64 basis products.
pub fn build_octonion_automorphism(x: &Element, y: &Element, z: &Element) -> Result<OperatorMatrix> {
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        if v.level() != 3 {
            return Err(Error::input(format!("{name} must be an octonion (level 3)")));
        }
        if !v.is_imaginary() {
            return Err(Error::input(format!("{name} must be imaginary")));
        }
        if !v.norm_sq().is_one() {
            return Err(Error::input(format!(
                "{name} must have unit norm (|{name}|^2 = {})",
                format_rational(&v.norm_sq())
            )));
        }
    }
    for (name, u, v) in [("x, y", x, y), ("x, z", x, z), ("y, z", y, z)] {
        if !dot(u, v).is_zero() {
            return Err(Error::input(format!("{name} must be orthogonal")));
        }
    }
    let xy = x * y;
    if !dot(z, &xy).is_zero() {
        return Err(Error::input("z must be orthogonal to xy"));
    }
    let images = vec![
        Element::one(3)?,
        x.clone(),
        y.clone(),
        xy.clone(),
        z.clone(),
        x * z,
        y * z,
        &xy * z,
    ];
    let m = OperatorMatrix::from_columns(3, &images)?;
    for p in 0..8 {
        for q in 0..8 {
            let lhs = m.apply(&(&Element::basis(3, p)? * &Element::basis(3, q)?))?;
            let rhs = &images[p] * &images[q];
            if lhs != rhs {
                return Err(Error::CertificateMismatch(format!(
                    "automorphism fails on e_{p} e_{q}"
                )));
            }
        }
    }
    Ok(m)
}
