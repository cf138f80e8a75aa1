//! Named checks. Each is a pure function of its input elements, so a failure
//! record (check name plus serialized inputs) is enough to replay it.
//!
//! Scalar parameters travel as elements too: complex scalars as `A_1`
//! elements `p + q e_1`, integers and signs as `A_0` elements.

use std::fmt::Display;

use num_traits::{One, Zero};

use crate::constructions::{a5_expected_dim, a5_family, ann_dim_bound};
use crate::element::{
    associator_of_triple, basis_product, conjugate, dot, hermitian_inner_product, i_element,
    multiply, real_imag_split, ComplexScalar, Element,
};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_map, Subspace};
use crate::operators::{
    alternator_space, ann_dim, annihilator, associator_space, is_alternative, is_quaternionic_pair,
    is_scaled_quaternionic_pair, left_mul_matrix, quaternion_span,
    right_annihilator, right_mul_matrix,
};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

impl CheckOutcome {
    fn compare<T: PartialEq + Display>(expected: T, actual: T) -> Self {
        CheckOutcome {
            passed: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn holds(claim: &str, failure: Option<String>) -> Self {
        CheckOutcome {
            passed: failure.is_none(),
            expected: claim.to_string(),
            actual: failure.unwrap_or_else(|| claim.to_string()),
        }
    }
}

pub type CheckFn = fn(&[Element]) -> Result<CheckOutcome>;

/// Every check by name.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("product_routes_agree", product_routes_agree),
    ("basis_product_agrees", basis_product_agrees),
    ("bilinear", bilinear),
    ("conj_reverses_products", conj_reverses_products),
    ("re_commutes", re_commutes),
    ("re_associates", re_associates),
    ("flexible", flexible),
    ("norm_identity", norm_identity),
    ("inner_product_standard", inner_product_standard),
    ("adjoint", adjoint),
    ("anti_commute_iff_orthogonal", anti_commute_iff_orthogonal),
    ("i_alternative", i_alternative),
    ("complex_action_associative", complex_action_associative),
    ("twist_complex_linear", twist_complex_linear),
    ("i_comm", i_comm),
    ("i_comm2", i_comm2),
    ("normed_octonions", normed_octonions),
    ("herm_projection", herm_projection),
    ("herm_sesquilinear", herm_sesquilinear),
    ("herm_conjugate_symmetric", herm_conjugate_symmetric),
    ("herm_positive", herm_positive),
    ("conjugate_linear", conjugate_linear),
    ("anti_hermitian", anti_hermitian),
    ("even_complex_codim", even_complex_codim),
    ("ann_mod4", ann_mod4),
    ("ann_bound", ann_bound),
    ("ann_split_bound", ann_split_bound),
    ("left_equals_right", left_equals_right),
    ("ann_in_complex_perp", ann_in_complex_perp),
    ("ann_complex_stable", ann_complex_stable),
    ("equal_ann", equal_ann),
    ("ann_conj", ann_conj),
    ("adjoint_matrix", adjoint_matrix),
    ("zd_equiv", zd_equiv),
    ("c_ann_scaled", c_ann_scaled),
    ("c_ann_twisted", c_ann_twisted),
    ("c_multiple_pair", c_multiple_pair),
    ("a4_zero_divisor_iff", a4_zero_divisor_iff),
    ("a5_family_dim", a5_family_dim),
    ("a5_trichotomy", a5_trichotomy),
    ("ass_first_first", ass_first_first),
    ("ass_first_second", ass_first_second),
    ("anti_first_first", anti_first_first),
    ("anti_first_second", anti_first_second),
    ("assoc_pair_dimension", assoc_pair_dimension),
    ("ass_prime_ann", ass_prime_ann),
    ("top_dimension", top_dimension),
    ("top_halves", top_halves),
    ("top_ann_equal", top_ann_equal),
    ("top_ann_distinct", top_ann_distinct),
    ("twisted_families_disjoint", twisted_families_disjoint),
    ("not_top_bound", not_top_bound),
    ("ann_intersect", ann_intersect),
    ("alt_mod4", alt_mod4),
    ("alt_full", alt_full),
    ("subalgebra_splitting", subalgebra_splitting),
    ("injected_false_claim", injected_false_claim),
];

pub fn lookup(name: &str) -> Result<CheckFn> {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

pub fn run_check(name: &str, inputs: &[Element]) -> Result<CheckOutcome> {
    lookup(name)?(inputs)
}

fn args<const N: usize>(inputs: &[Element]) -> Result<[&Element; N]> {
    if inputs.len() != N {
        return Err(Error::input(format!(
            "expected {N} input elements, got {}",
            inputs.len()
        )));
    }
    Ok(std::array::from_fn(|k| &inputs[k]))
}

fn same_levels(xs: &[&Element]) -> Result<u32> {
    let level = xs[0].level();
    for x in xs {
        if x.level() != level {
            return Err(Error::LevelMismatch {
                left: level,
                right: x.level(),
            });
        }
    }
    Ok(level)
}

fn need_level(x: &Element, min: u32) -> Result<()> {
    if x.level() < min {
        Err(Error::input(format!("needs level >= {min}, got {}", x.level())))
    } else {
        Ok(())
    }
}

fn scalar(x: &Element) -> Result<ComplexScalar> {
    if x.level() != 1 {
        return Err(Error::input("complex scalars are passed as level-1 elements"));
    }
    Ok(ComplexScalar::new(x.coeff(0).clone(), x.coeff(1).clone()))
}

fn integer(x: &Element) -> Result<i64> {
    if x.level() != 0 || !x.coeff(0).is_integer() {
        return Err(Error::input("integer parameters are passed as level-0 elements"));
    }
    x.coeff(0)
        .to_integer()
        .try_into()
        .map_err(|_| Error::input("integer parameter out of range"))
}

fn sign(x: &Element) -> Result<i64> {
    match integer(x)? {
        s @ (1 | -1) => Ok(s),
        s => Err(Error::input(format!("sign parameter must be +1 or -1, got {s}"))),
    }
}

fn first_violation(cases: &[(&str, bool)]) -> Option<String> {
    cases
        .iter()
        .find(|(_, ok)| !ok)
        .map(|(what, _)| format!("violated: {what}"))
}

fn twist(a: &Element, s: i64) -> Result<Element> {
    let ia = (&i_element(a.level())? * a).scale(&int(s));
    Element::pair(a, &ia)
}

fn pair_space(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    let level = u.level();
    let zero = Element::zero(level)?;
    let mut vectors = Vec::new();
    for x in u.basis() {
        vectors.push(Element::pair(x, &zero)?);
    }
    for y in v.basis() {
        vectors.push(Element::pair(&zero, y)?);
    }
    Subspace::span(level + 1, &vectors)
}

fn graph_space<F: Fn(&Element) -> Element>(u: &Subspace, f: F) -> Result<Subspace> {
    let vectors = u
        .basis()
        .iter()
        .map(|x| Element::pair(x, &f(x)))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(u.level() + 1, &vectors)
}

fn real_unit(level: u32, c: &Rational) -> Result<Element> {
    Ok(Element::one(level)?.scale(c))
}

// ---- algebra identities ----

fn product_routes_agree(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    let reference = multiply(x, y)?;
    Ok(CheckOutcome::compare(reference, x * y))
}

fn basis_product_agrees(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    let level = same_levels(&[x, y])?;
    let index = |e: &Element| {
        let support: Vec<_> = e.support().collect();
        match support.as_slice() {
            [(p, c)] if c.is_one() => Ok(*p),
            _ => Err(Error::input("basis_product_agrees takes two basis vectors")),
        }
    };
    let (p, q) = (index(x)?, index(y)?);
    let (s, r) = basis_product(level, p, q)?;
    let table = Element::basis(level, r)?.scale(&int(s.into()));
    Ok(CheckOutcome::compare(multiply(x, y)?, table))
}

fn bilinear(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, z] = args(inputs)?;
    same_levels(&[x, y, z])?;
    let left = multiply(&(x + y), z)? == &multiply(x, z)? + &multiply(y, z)?;
    let right = multiply(x, &(y + z))? == &multiply(x, y)? + &multiply(x, z)?;
    Ok(CheckOutcome::holds(
        "(x+y)z = xz+yz and x(y+z) = xy+xz",
        first_violation(&[("(x+y)z = xz+yz", left), ("x(y+z) = xy+xz", right)]),
    ))
}

fn conj_reverses_products(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    let rev = conjugate(&multiply(x, y)?) == multiply(&conjugate(y), &conjugate(x))?;
    let inv = conjugate(&conjugate(x)) == *x;
    let (re, _) = real_imag_split(x);
    let sum = x + &conjugate(x) == real_unit(x.level(), &(int(2) * re))?;
    Ok(CheckOutcome::holds(
        "(xy)* = y*x*, x** = x, x + x* = 2Re(x)",
        first_violation(&[("(xy)* = y*x*", rev), ("x** = x", inv), ("x + x* = 2Re(x)", sum)]),
    ))
}

fn re_commutes(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    Ok(CheckOutcome::compare(
        format_rational(multiply(x, y)?.coeff(0)),
        format_rational(multiply(y, x)?.coeff(0)),
    ))
}

fn re_associates(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, z] = args(inputs)?;
    same_levels(&[x, y, z])?;
    let l = multiply(&multiply(x, y)?, z)?;
    let r = multiply(x, &multiply(y, z)?)?;
    Ok(CheckOutcome::compare(
        format_rational(l.coeff(0)),
        format_rational(r.coeff(0)),
    ))
}

fn flexible(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    let a = associator_of_triple(x, y, x)?;
    Ok(CheckOutcome::compare(Element::zero(x.level())?, a))
}

fn norm_identity(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    let n = real_unit(x.level(), &x.norm_sq())?;
    let xc = conjugate(x);
    let ok1 = multiply(x, &xc)? == n;
    let ok2 = multiply(&xc, x)? == n;
    Ok(CheckOutcome::holds(
        "x x* = x* x = |x|^2",
        first_violation(&[("x x* = |x|^2", ok1), ("x* x = |x|^2", ok2)]),
    ))
}

fn inner_product_standard(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    let re = multiply(x, &conjugate(y))?.coeff(0).clone();
    let re_swapped = multiply(y, &conjugate(x))?.coeff(0).clone();
    let d = dot(x, y);
    Ok(CheckOutcome::holds(
        "Re(x y*) = Re(y x*) = coordinate dot product",
        first_violation(&[("Re(x y*) = x.y", re == d), ("symmetry", re_swapped == d)]),
    ))
}

fn adjoint(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, z] = args(inputs)?;
    same_levels(&[x, y, z])?;
    let xc = conjugate(x);
    let left = dot(&multiply(x, y)?, z) == dot(y, &multiply(&xc, z)?);
    let right = dot(&multiply(y, x)?, z) == dot(y, &multiply(z, &xc)?);
    Ok(CheckOutcome::holds(
        "<xy,z> = <y,x*z> and <yx,z> = <y,zx*>",
        first_violation(&[("L_x adjoint to L_x*", left), ("R_x adjoint to R_x*", right)]),
    ))
}

fn anti_commute_iff_orthogonal(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    if !x.is_imaginary() || !y.is_imaginary() {
        return Err(Error::input("anti_commute_iff_orthogonal takes imaginary vectors"));
    }
    let anti = multiply(x, y)? == -multiply(y, x)?;
    let orth = dot(x, y).is_zero();
    Ok(CheckOutcome::compare(
        format!("anti-commute = {orth}"),
        format!("anti-commute = {anti}"),
    ))
}

fn i_alternative(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 1)?;
    let i = i_element(x.level())?;
    let a = associator_of_triple(&i, &i, x)?.is_zero();
    let b = associator_of_triple(x, x, &i)?.is_zero();
    let c = associator_of_triple(&i, x, x)?.is_zero();
    Ok(CheckOutcome::holds(
        "[i,i,x] = [x,x,i] = [i,x,x] = 0",
        first_violation(&[("[i,i,x] = 0", a), ("[x,x,i] = 0", b), ("[i,x,x] = 0", c)]),
    ))
}

fn complex_action_associative(inputs: &[Element]) -> Result<CheckOutcome> {
    let [alpha, beta, x] = args(inputs)?;
    need_level(x, 1)?;
    let (a, b) = (scalar(alpha)?, scalar(beta)?);
    let lhs = a.act(&b.act(x)?)?;
    let rhs = a.mul(&b).act(x)?;
    Ok(CheckOutcome::compare(lhs, rhs))
}

fn twist_complex_linear(inputs: &[Element]) -> Result<CheckOutcome> {
    let [alpha, a] = args(inputs)?;
    need_level(a, 1)?;
    if !a.is_complex_orthogonal() {
        return Err(Error::input("twist_complex_linear takes a in C_n-perp"));
    }
    let al = scalar(alpha)?;
    let plus_lhs = twist(&al.act(a)?, 1)?;
    let plus_rhs = al.act(&twist(a, 1)?)?;
    // a -> (a, -i a) is conjugate-linear rather than complex-linear
    let minus_lhs = twist(&al.conj().act(a)?, -1)?;
    let minus_rhs = al.act(&twist(a, -1)?)?;
    Ok(CheckOutcome::holds(
        "(alpha a, i alpha a) = alpha (a, i a) and (alpha* a, -i alpha* a) = alpha (a, -i a)",
        first_violation(&[
            ("a -> (a, i a) complex-linear", plus_lhs == plus_rhs),
            ("a -> (a, -i a) conjugate-linear", minus_lhs == minus_rhs),
        ]),
    ))
}

fn i_comm(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, alpha, y] = args(inputs)?;
    same_levels(&[x, y])?;
    need_level(x, 1)?;
    if !x.is_complex_orthogonal() {
        return Err(Error::input("i_comm takes x in C_n-perp"));
    }
    let al = scalar(alpha)?;
    let a = al.to_element(x.level())?;
    let ac = al.conj().to_element(x.level())?;
    let first = multiply(&multiply(y, x)?, &a)? == multiply(&multiply(y, &ac)?, x)?;
    let second = multiply(&a, &multiply(x, y)?)? == multiply(x, &multiply(&ac, y)?)?;
    Ok(CheckOutcome::holds(
        "(yx)alpha = (y alpha*)x and alpha(xy) = x(alpha* y)",
        first_violation(&[("(yx)alpha = (y alpha*)x", first), ("alpha(xy) = x(alpha* y)", second)]),
    ))
}

fn i_comm2(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, alpha] = args(inputs)?;
    same_levels(&[x, y])?;
    need_level(x, 1)?;
    if multiply(x, y)? != -multiply(y, x)? {
        return Err(Error::input("i_comm2 takes anti-commuting x, y"));
    }
    let a = scalar(alpha)?.to_element(x.level())?;
    let first = multiply(&multiply(&a, x)?, y)? == -multiply(&multiply(&a, y)?, x)?;
    let second = multiply(y, &multiply(x, &a)?)? == -multiply(x, &multiply(y, &a)?)?;
    Ok(CheckOutcome::holds(
        "(alpha x)y = -(alpha y)x and y(x alpha) = -x(y alpha)",
        first_violation(&[("(alpha x)y = -(alpha y)x", first), ("y(x alpha) = -x(y alpha)", second)]),
    ))
}

fn normed_octonions(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, x, y] = args(inputs)?;
    let level = same_levels(&[a, x, y])?;
    if level > 3 {
        return Err(Error::input("normed_octonions applies at level <= 3"));
    }
    let ax = multiply(a, x)?;
    let ay = multiply(a, y)?;
    let n = a.norm_sq();
    let inner = dot(&ax, &ay) == &n * dot(x, y);
    let norm = ax.norm_sq() == &n * x.norm_sq();
    Ok(CheckOutcome::holds(
        "<ax,ay> = |a|^2 <x,y> and |ax|^2 = |a|^2 |x|^2",
        first_violation(&[("<ax,ay> = |a|^2<x,y>", inner), ("|ax|^2 = |a|^2|x|^2", norm)]),
    ))
}

// ---- Hermitian form ----

fn herm_projection(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    need_level(x, 1)?;
    let w = multiply(x, &conjugate(y))?;
    let projection = ComplexScalar::new(w.coeff(0).clone(), w.coeff(w.dim() / 2).clone());
    Ok(CheckOutcome::compare(projection, hermitian_inner_product(x, y)?))
}

fn herm_sesquilinear(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, z, alpha] = args(inputs)?;
    same_levels(&[x, y, z])?;
    need_level(x, 1)?;
    let a = scalar(alpha)?;
    let h = hermitian_inner_product;
    let add_left = h(&(x + z), y)? == h(x, y)?.add(&h(z, y)?);
    let add_right = h(x, &(y + z))? == h(x, y)?.add(&h(x, z)?);
    let lin = h(&a.act(x)?, y)? == a.mul(&h(x, y)?);
    let anti = h(x, &a.act(y)?)? == a.conj().mul(&h(x, y)?);
    Ok(CheckOutcome::holds(
        "additive in both slots, <ax,y> = a<x,y>, <x,ay> = a*<x,y>",
        first_violation(&[
            ("additive left", add_left),
            ("additive right", add_right),
            ("<ax,y> = a<x,y>", lin),
            ("<x,ay> = a*<x,y>", anti),
        ]),
    ))
}

fn herm_conjugate_symmetric(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y] = args(inputs)?;
    same_levels(&[x, y])?;
    need_level(x, 1)?;
    Ok(CheckOutcome::compare(
        hermitian_inner_product(y, x)?.conj(),
        hermitian_inner_product(x, y)?,
    ))
}

fn herm_positive(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 1)?;
    Ok(CheckOutcome::compare(
        ComplexScalar::real(x.norm_sq()),
        hermitian_inner_product(x, x)?,
    ))
}

fn conjugate_linear(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, alpha] = args(inputs)?;
    same_levels(&[x, y])?;
    need_level(x, 1)?;
    if !x.is_complex_orthogonal() {
        return Err(Error::input("conjugate_linear takes x in C_n-perp"));
    }
    let a = scalar(alpha)?;
    Ok(CheckOutcome::compare(
        a.conj().act(&multiply(x, y)?)?,
        multiply(x, &a.act(y)?)?,
    ))
}

fn anti_hermitian(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, y, z] = args(inputs)?;
    same_levels(&[x, y, z])?;
    need_level(x, 1)?;
    if !x.is_complex_orthogonal() {
        return Err(Error::input("anti_hermitian takes x in C_n-perp"));
    }
    let lhs = hermitian_inner_product(&multiply(x, y)?, z)?;
    let inner = hermitian_inner_product(y, &multiply(x, z)?)?.conj();
    let rhs = ComplexScalar::new(-&inner.re, -&inner.im);
    Ok(CheckOutcome::compare(rhs, lhs))
}

fn even_complex_codim(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 1)?;
    if !x.is_complex_orthogonal() {
        return Err(Error::input("even_complex_codim takes x in C_n-perp"));
    }
    let real_codim = x.dim() - ann_dim(x);
    Ok(CheckOutcome::compare(
        "even complex codimension".to_string(),
        if real_codim % 4 == 0 {
            "even complex codimension".to_string()
        } else {
            format!("real codimension {real_codim}")
        },
    ))
}

// ---- annihilators ----

fn ann_mod4(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 2)?;
    let d = ann_dim(x);
    Ok(CheckOutcome::compare(
        "dim Ann = 0 mod 4".to_string(),
        if d % 4 == 0 {
            "dim Ann = 0 mod 4".to_string()
        } else {
            format!("dim Ann = {d}")
        },
    ))
}

fn ann_bound(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 2)?;
    if x.is_zero() {
        return Err(Error::input("ann_bound takes a nonzero element"));
    }
    let bound = ann_dim_bound(x.level());
    let d = ann_dim(x);
    Ok(CheckOutcome {
        passed: d <= bound,
        expected: format!("dim Ann <= {bound}"),
        actual: format!("dim Ann = {d}"),
    })
}

fn ann_split_bound(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 2)?;
    if x.is_zero() {
        return Err(Error::input("ann_split_bound takes a nonzero element"));
    }
    let (a, b) = x.halves()?;
    let meet = annihilator(&a).intersect(&annihilator(&b))?.dim();
    let bound = x.dim() / 2 - 2 + meet;
    let d = ann_dim(x);
    Ok(CheckOutcome {
        passed: d <= bound,
        expected: format!("dim Ann <= {bound}"),
        actual: format!("dim Ann = {d}"),
    })
}

fn left_equals_right(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    let l = annihilator(x);
    let r = right_annihilator(x);
    Ok(CheckOutcome {
        passed: l == r,
        expected: format!("ker R_x = ker L_x (dim {})", l.dim()),
        actual: if l == r {
            format!("ker R_x = ker L_x (dim {})", l.dim())
        } else {
            format!("ker R_x differs (dim {})", r.dim())
        },
    })
}

fn ann_in_complex_perp(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 1)?;
    if x.is_zero() {
        return Err(Error::input("ann_in_complex_perp takes a nonzero element"));
    }
    let ann = annihilator(x);
    let inside = ann.basis().iter().all(Element::is_complex_orthogonal);
    let imaginary = ann.basis().iter().all(Element::is_imaginary);
    let zd_ok = ann.is_zero() || x.is_complex_orthogonal();
    Ok(CheckOutcome::holds(
        "Ann(x) is imaginary and orthogonal to C_n; zero-divisors lie in C_n-perp",
        first_violation(&[
            ("Ann(x) imaginary", imaginary),
            ("Ann(x) orthogonal to C_n", inside),
            ("zero-divisor orthogonal to C_n", zd_ok),
        ]),
    ))
}

fn ann_complex_stable(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 1)?;
    let ann = annihilator(x);
    let mut bad = None;
    for (k, v) in ann.basis().iter().enumerate() {
        if !ann.contains(&v.i_times())? {
            bad = Some(format!("i_n times basis vector {k} leaves Ann(x)"));
            break;
        }
    }
    Ok(CheckOutcome::holds("i_n Ann(x) = Ann(x)", bad))
}

fn equal_ann(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x, alpha] = args(inputs)?;
    need_level(x, 1)?;
    let a = scalar(alpha)?;
    if a.is_zero() || x.is_zero() {
        return Err(Error::input("equal_ann takes nonzero x and alpha"));
    }
    let u = annihilator(x);
    let v = annihilator(&a.act(x)?);
    Ok(CheckOutcome::compare(
        format!("Ann(alpha x) = Ann(x), dim {}", u.dim()),
        if u == v {
            format!("Ann(alpha x) = Ann(x), dim {}", u.dim())
        } else {
            format!("Ann(alpha x) has dim {} and differs", v.dim())
        },
    ))
}

fn ann_conj(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    let u = annihilator(x);
    let same = annihilator(&conjugate(x)) == u;
    let mut closed = true;
    for v in u.basis() {
        closed &= u.contains(&conjugate(v))?;
    }
    Ok(CheckOutcome::holds(
        "Ann(x*) = Ann(x) and Ann(x)* = Ann(x)",
        first_violation(&[("Ann(x*) = Ann(x)", same), ("Ann(x) closed under *", closed)]),
    ))
}

fn adjoint_matrix(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    let xc = conjugate(x);
    let l = left_mul_matrix(x).transpose() == left_mul_matrix(&xc);
    let r = right_mul_matrix(x).transpose() == right_mul_matrix(&xc);
    Ok(CheckOutcome::holds(
        "L_x^T = L_x* and R_x^T = R_x*",
        first_violation(&[("L_x^T = L_x*", l), ("R_x^T = R_x*", r)]),
    ))
}

fn zd_equiv(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    let level = same_levels(&[a, b])?;
    if !a.is_imaginary() || !b.is_imaginary() {
        return Err(Error::input("zd_equiv takes imaginary a, b"));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::input("zd_equiv needs (a, b) != 0"));
    }
    let ann = annihilator(&Element::pair(a, b)?);
    let system = |third: bool| {
        kernel_of_map(level + 1, |v| {
            let (x, y) = v.halves().expect("level >= 1");
            let first = &(a * &x) + &(&y * b);
            let second = if third {
                &(&x * b) - &(a * &y)
            } else {
                &(b * &x) - &(&y * a)
            };
            let mut out = first.coeffs().to_vec();
            out.extend_from_slice(second.coeffs());
            out.push(x.coeff(0).clone());
            out.push(y.coeff(0).clone());
            out
        })
    };
    let s2 = system(false)?;
    let s3 = system(true)?;
    Ok(CheckOutcome::holds(
        "Ann(a,b) = {(x,y) imaginary: ax = -yb, bx = ya} = {...: ax = -yb, xb = ay}",
        first_violation(&[("set (ii) equals Ann(a,b)", s2 == ann), ("set (iii) equals Ann(a,b)", s3 == ann)]),
    ))
}

// ---- constructions ----

fn c_ann_scaled(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, alpha, beta] = args(inputs)?;
    need_level(a, 2)?;
    if a.is_zero() || !a.is_complex_orthogonal() {
        return Err(Error::input("c_ann_scaled takes nonzero a in C_n-perp"));
    }
    let (al, be) = (scalar(alpha)?, scalar(beta)?);
    if al.mul(&al).add(&be.mul(&be)).is_zero() {
        return Err(Error::input("c_ann_scaled needs alpha^2 + beta^2 != 0"));
    }
    let ann_a = annihilator(a);
    let expected = pair_space(&ann_a, &ann_a)?;
    let actual = annihilator(&Element::pair(&al.act(a)?, &be.act(a)?)?);
    Ok(CheckOutcome::compare(
        format!("Ann(a) x Ann(a), dim {}", expected.dim()),
        if actual == expected {
            format!("Ann(a) x Ann(a), dim {}", expected.dim())
        } else {
            format!("different subspace, dim {}", actual.dim())
        },
    ))
}

fn c_ann_twisted(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, s] = args(inputs)?;
    need_level(a, 2)?;
    if a.is_zero() || !a.is_complex_orthogonal() {
        return Err(Error::input("c_ann_twisted takes nonzero a in C_n-perp"));
    }
    let s = sign(s)?;
    let i = i_element(a.level())?;
    let ann_a = annihilator(a);
    let h_perp = quaternion_span(a, &i)?.orthogonal_complement();
    let first = graph_space(&ann_a, |x| (&i * x).scale(&int(s)))?;
    let second = graph_space(&h_perp, |y| (&i * y).scale(&int(-s)))?;
    let orthogonal = first.basis().iter().all(|u| second.is_orthogonal_to(u));
    let expected = first.sum(&second)?;
    let actual = annihilator(&twist(a, s)?);
    let dim = a.dim() - 4 + ann_a.dim();
    Ok(CheckOutcome::holds(
        "Ann(a, s i a) = {(x, s i x): x in Ann a} + {(y, -s i y): y in H<a,i>-perp}, orthogonal summands",
        first_violation(&[
            ("summands orthogonal", orthogonal),
            ("dimension 2^n - 4 + dim Ann(a)", actual.dim() == dim && expected.dim() == dim),
            ("subspaces equal", actual == expected),
        ]),
    ))
}

fn c_multiple_pair(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, alpha] = args(inputs)?;
    need_level(a, 2)?;
    if a.is_zero() || !a.is_complex_orthogonal() {
        return Err(Error::input("c_multiple_pair takes nonzero a in C_n-perp"));
    }
    let al = scalar(alpha)?;
    let d = ann_dim(a);
    let plus_minus_i = al.re.is_zero() && (al.im.is_one() || (-&al.im).is_one());
    let expected = if plus_minus_i { a.dim() - 4 + d } else { 2 * d };
    let actual = ann_dim(&Element::pair(a, &al.act(a)?)?);
    Ok(CheckOutcome::compare(expected, actual))
}

fn a4_zero_divisor_iff(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a1, a2] = args(inputs)?;
    if same_levels(&[a1, a2])? != 3 {
        return Err(Error::input("a4_zero_divisor_iff takes two octonions"));
    }
    let predicted = a1.is_imaginary()
        && a2.is_imaginary()
        && dot(a1, a2).is_zero()
        && a1.norm_sq() == a2.norm_sq()
        && !a1.is_zero();
    let expected = if predicted { 4 } else { 0 };
    Ok(CheckOutcome::compare(expected, ann_dim(&Element::pair(a1, a2)?)))
}

fn a5_family_dim(inputs: &[Element]) -> Result<CheckOutcome> {
    let [alpha] = args(inputs)?;
    let c = a5_family(alpha)?;
    Ok(CheckOutcome::compare(a5_expected_dim(alpha), ann_dim(&c.element)))
}

fn a5_trichotomy(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    if same_levels(&[a, b])? != 4 {
        return Err(Error::input("a5_trichotomy takes two elements of A_4"));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::input("a5_trichotomy needs (a, b) != 0"));
    }
    if annihilator(a).intersect(&annihilator(b))?.is_zero() {
        return Err(Error::input("a5_trichotomy needs Ann(a) and Ann(b) to intersect"));
    }
    let ia = a.i_times();
    let expected = if *b == ia || *b == -&ia {
        16
    } else if dot(a, b).is_zero() && a.norm_sq() == b.norm_sq() {
        12
    } else {
        8
    };
    Ok(CheckOutcome::compare(expected, ann_dim(&Element::pair(a, b)?)))
}

fn recursion_inputs(inputs: &[Element]) -> Result<(Element, Element, Element, Element)> {
    let [a, b] = args(inputs)?;
    let level = same_levels(&[a, b])?;
    need_level(a, 3)?;
    if !is_quaternionic_pair(a, b)? {
        return Err(Error::input("recursions take a quaternionic pair"));
    }
    let zero = Element::zero(level)?;
    Ok((
        Element::pair(a, &zero)?,
        Element::pair(b, &zero)?,
        Element::pair(&zero, b)?,
        zero,
    ))
}

fn recursion_outcome(
    formula: &str,
    lower: usize,
    expected: usize,
    actual: usize,
) -> CheckOutcome {
    CheckOutcome {
        passed: expected == actual,
        expected: format!("{formula} = {expected} (lower dim {lower})"),
        actual: format!("{actual}"),
    }
}

fn ass_first_first(inputs: &[Element]) -> Result<CheckOutcome> {
    let (a0, b0, _, _) = recursion_inputs(inputs)?;
    let lower = associator_space(&inputs[0], &inputs[1], false)?.dim();
    let actual = associator_space(&a0, &b0, false)?.dim();
    Ok(recursion_outcome("2 dim Ass[a,b] - 4", lower, (2 * lower).saturating_sub(4), actual))
}

fn ass_first_second(inputs: &[Element]) -> Result<CheckOutcome> {
    let (a0, _, zb, _) = recursion_inputs(inputs)?;
    let lower = associator_space(&inputs[0], &inputs[1], true)?.dim();
    let actual = associator_space(&a0, &zb, false)?.dim();
    Ok(recursion_outcome("2 dim Ass'[a,b] + 4", lower, 2 * lower + 4, actual))
}

fn anti_first_first(inputs: &[Element]) -> Result<CheckOutcome> {
    let (a0, b0, _, _) = recursion_inputs(inputs)?;
    let lower = associator_space(&inputs[0], &inputs[1], true)?.dim();
    let actual = associator_space(&a0, &b0, true)?.dim();
    Ok(recursion_outcome("2 dim Ass'[a,b] + 4", lower, 2 * lower + 4, actual))
}

fn anti_first_second(inputs: &[Element]) -> Result<CheckOutcome> {
    let (a0, _, zb, _) = recursion_inputs(inputs)?;
    let lower = associator_space(&inputs[0], &inputs[1], false)?.dim();
    let actual = associator_space(&a0, &zb, true)?.dim();
    Ok(recursion_outcome("2 dim Ass[a,b] - 4", lower, (2 * lower).saturating_sub(4), actual))
}

fn assoc_pair_dimension(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b, d, anti] = args(inputs)?;
    same_levels(&[a, b])?;
    let d = integer(d)?;
    let anti = match integer(anti)? {
        0 => false,
        1 => true,
        other => return Err(Error::input(format!("anti flag must be 0 or 1, got {other}"))),
    };
    let actual = associator_space(a, b, anti)?.dim() as i64;
    Ok(CheckOutcome::compare(d, actual))
}

fn ass_prime_ann(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    same_levels(&[a, b])?;
    if !is_alternative(a) || !is_alternative(b) || !is_scaled_quaternionic_pair(a, b)? {
        return Err(Error::input("ass_prime_ann takes a quaternionic pair of alternative elements"));
    }
    let anti = associator_space(a, b, true)?;
    let expected = graph_space(&anti, |x| &(a * x) * b)?;
    let actual = annihilator(&Element::pair(a, b)?);
    Ok(CheckOutcome::holds(
        "Ann(a,b) = {(x, (ax)b) : x in Ass'[a,b]}",
        first_violation(&[
            ("dim Ann(a,b) = dim Ass'[a,b]", actual.dim() == anti.dim()),
            ("subspaces equal", actual == expected),
        ]),
    ))
}

fn top_dimension(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 2)?;
    Ok(CheckOutcome::compare(ann_dim_bound(x.level()), ann_dim(x)))
}

fn top_halves(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 5)?;
    let n = x.level();
    if ann_dim(x) != ann_dim_bound(n) {
        return Err(Error::input("top_halves takes a top-dimensional zero-divisor"));
    }
    let (a, b) = x.halves()?;
    let (ua, ub) = (annihilator(&a), annihilator(&b));
    let lower_top = ann_dim_bound(n - 1);
    let meet = ua.intersect(&ub)?.dim() as i64;
    let meet_bound = (1i64 << (n - 1)) - 4 * i64::from(n) + 6;
    Ok(CheckOutcome::holds(
        "both halves top-dimensional and dim(Ann a meet Ann b) >= 2^(n-1) - 4n + 6",
        first_violation(&[
            ("first half top-dimensional", ua.dim() == lower_top),
            ("second half top-dimensional", ub.dim() == lower_top),
            ("intersection bound", meet >= meet_bound),
        ]),
    ))
}

fn top_ann_equal(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, alpha] = args(inputs)?;
    need_level(a, 1)?;
    let al = scalar(alpha)?;
    if a.is_zero() || !a.is_complex_orthogonal() || al.is_zero() {
        return Err(Error::input("top_ann_equal takes nonzero a in C_n-perp and nonzero alpha"));
    }
    let b = al.act(a)?;
    let plus = annihilator(&twist(a, 1)?) == annihilator(&twist(&b, 1)?);
    let minus = annihilator(&twist(a, -1)?) == annihilator(&twist(&b, -1)?);
    Ok(CheckOutcome::holds(
        "Ann(a, +-i a) = Ann(alpha a, +-i alpha a)",
        first_violation(&[("plus family", plus), ("minus family", minus)]),
    ))
}

fn top_ann_distinct(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    let level = same_levels(&[a, b])?;
    need_level(a, 1)?;
    if a.is_zero() || b.is_zero() || !a.is_complex_orthogonal() || !b.is_complex_orthogonal() {
        return Err(Error::input("top_ann_distinct takes nonzero a, b in C_n-perp"));
    }
    if Subspace::span(level, [a, &a.i_times()])?.contains(b)? {
        return Err(Error::input("top_ann_distinct needs b outside C_n a"));
    }
    let plus = annihilator(&twist(a, 1)?) != annihilator(&twist(b, 1)?);
    let minus = annihilator(&twist(a, -1)?) != annihilator(&twist(b, -1)?);
    Ok(CheckOutcome::holds(
        "Ann(a, +-i a) != Ann(b, +-i b) when b is not a C_n-multiple of a",
        first_violation(&[("plus family differs", plus), ("minus family differs", minus)]),
    ))
}

fn twisted_families_disjoint(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    same_levels(&[a, b])?;
    need_level(a, 1)?;
    let equal = twist(a, 1)? == twist(b, -1)?;
    let ok = !equal || (a.is_zero() && b.is_zero());
    Ok(CheckOutcome::holds(
        "(a, i a) = (b, -i b) only for a = b = 0",
        if ok { None } else { Some("nonzero common element".to_string()) },
    ))
}

fn not_top_bound(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    let level = same_levels(&[a, b])?;
    need_level(a, 1)?;
    if a.is_zero() || b.is_zero() || !a.is_complex_orthogonal() || !b.is_complex_orthogonal() {
        return Err(Error::input("not_top_bound takes nonzero a, b in C_n-perp"));
    }
    let n = i64::from(level) + 2;
    let bound = ((1i64 << n) - 8 * n + 20).max(0) as usize;
    let d1 = ann_dim(&Element::pair(&twist(a, 1)?, &twist(b, -1)?)?);
    let d2 = ann_dim(&Element::pair(&twist(a, -1)?, &twist(b, 1)?)?);
    Ok(CheckOutcome {
        passed: d1 <= bound && d2 <= bound,
        expected: format!("both dims <= {bound}"),
        actual: format!("dims {d1} and {d2}"),
    })
}

fn ann_intersect(inputs: &[Element]) -> Result<CheckOutcome> {
    let [a, b] = args(inputs)?;
    if same_levels(&[a, b])? != 4 {
        return Err(Error::input("ann_intersect takes two elements of A_4"));
    }
    let (a1, a2) = a.halves()?;
    let (b1, b2) = b.halves()?;
    let is_zd = |x1: &Element, x2: &Element| {
        x1.is_imaginary() && x2.is_imaginary() && dot(x1, x2).is_zero() && x1.norm_sq() == x2.norm_sq() && !x1.is_zero()
    };
    if !is_zd(&a1, &a2) || !is_zd(&b1, &b2) {
        return Err(Error::input("ann_intersect takes two A_4 zero-divisors"));
    }
    // |x1 x2| = |x1|^2 for an A_4 zero-divisor, so no square roots appear.
    let ua = (&a1 * &a2).scale(&(Rational::one() / a1.norm_sq()));
    let ub = (&b1 * &b2).scale(&(Rational::one() / b1.norm_sq()));
    let predicted = ua == ub;
    let meets = !annihilator(a).intersect(&annihilator(b))?.is_zero();
    Ok(CheckOutcome::compare(
        format!("intersect nontrivially = {predicted}"),
        format!("intersect nontrivially = {meets}"),
    ))
}

fn alt_mod4(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    need_level(x, 2)?;
    let d = alternator_space(x).dim();
    Ok(CheckOutcome::compare(
        "dim Alt = 0 mod 4".to_string(),
        if d % 4 == 0 {
            "dim Alt = 0 mod 4".to_string()
        } else {
            format!("dim Alt = {d}")
        },
    ))
}

fn alt_full(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    let eligible = x.level() <= 3 || x.support().count() <= 1;
    if !eligible {
        return Err(Error::input("alt_full takes an octonion or a multiple of a basis vector"));
    }
    Ok(CheckOutcome::compare(x.dim(), alternator_space(x).dim()))
}

/// Smallest subalgebra containing `1` and the generators.
pub fn generated_subalgebra(level: u32, generators: &[&Element]) -> Result<Subspace> {
    let one = Element::one(level)?;
    let mut space = Subspace::span(level, std::iter::once(&one).chain(generators.iter().copied()))?;
    loop {
        let basis = space.basis().to_vec();
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for u in &basis {
            for v in &basis {
                let w = u * v;
                if !space.contains(&w)? {
                    products.push(w);
                }
            }
        }
        if products.is_empty() {
            return Ok(space);
        }
        products.extend(basis);
        space = Subspace::span(level, &products)?;
    }
}

fn subalgebra_splitting(inputs: &[Element]) -> Result<CheckOutcome> {
    let Some((x, gens)) = inputs.split_first() else {
        return Err(Error::input("subalgebra_splitting takes x followed by generators"));
    };
    let gens: Vec<&Element> = gens.iter().collect();
    let mut all = vec![x];
    all.extend(gens.iter().copied());
    let level = same_levels(&all)?;
    let b = generated_subalgebra(level, &gens)?;
    if !b.contains(x)? {
        return Err(Error::input("x must lie in the generated subalgebra"));
    }
    let ann = annihilator(x);
    let inside = ann.intersect(&b)?.dim();
    let outside = ann.intersect(&b.orthogonal_complement())?.dim();
    Ok(CheckOutcome::compare(
        format!("dim Ann = {}", inside + outside),
        format!("dim Ann = {}", ann.dim()),
    ))
}

/// Deliberately false: claims every element annihilates the whole algebra.
/// Used to exercise the failure and replay paths.
fn injected_false_claim(inputs: &[Element]) -> Result<CheckOutcome> {
    let [x] = args(inputs)?;
    Ok(CheckOutcome::compare(x.dim(), ann_dim(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert!(matches!(lookup("nope"), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn wrong_arity_is_an_input_error() {
        let x = Element::basis(2, 1).unwrap();
        assert!(run_check("flexible", &[x]).is_err());
    }

    #[test]
    fn injected_claim_fails_on_nonzero_input() {
        let x = Element::basis(4, 1).unwrap();
        let out = run_check("injected_false_claim", &[x]).unwrap();
        assert!(!out.passed);
        assert_eq!(out.expected, "16");
        assert_eq!(out.actual, "0");
    }

    #[test]
    fn generated_subalgebra_of_basis_vectors() {
        let e = |p| Element::basis(5, p).unwrap();
        assert_eq!(generated_subalgebra(5, &[&e(1), &e(2)]).unwrap().dim(), 4);
        assert_eq!(generated_subalgebra(5, &[&e(1), &e(2), &e(4), &e(8)]).unwrap().dim(), 16);
    }
}
