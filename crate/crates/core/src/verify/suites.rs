//! Suite definitions: which checks a suite runs and how each trial draws its
//! inputs. Trial `t` of a run with seed `s` draws everything from
//! `TrialRng::new(s, t)`, so trials are independent of scheduling.

use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::constructions::{
    a5_family, assoc_pair_with_dim, build_octonion_automorphism, sign_sequences, top_zero_divisor,
};
use crate::element::{dot, ComplexScalar, Element};
use crate::linalg::{OperatorMatrix, Subspace};
use crate::rational::{int, ratio, Rational};

use super::checks::generated_subalgebra;
use super::rng::TrialRng;
use super::sampling::Sampler;

/// One check applied to one input tuple.
#[derive(Clone, Debug)]
pub struct Case {
    pub check: &'static str,
    pub inputs: Vec<Element>,
}

fn case(check: &'static str, inputs: Vec<Element>) -> Case {
    Case { check, inputs }
}

type Generator = fn(&Sampler, &mut TrialRng, u32) -> Vec<Case>;

pub struct SuiteDef {
    pub name: &'static str,
    pub levels: RangeInclusive<u32>,
    /// Whether `all` includes the suite.
    pub in_all: bool,
    pub about: &'static str,
    generator: Generator,
}

impl SuiteDef {
    pub fn cases(&self, sampler: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
        (self.generator)(sampler, rng, level)
    }
}

pub const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "core_identities",
        levels: 0..=7,
        in_all: true,
        about: "product routes, bilinearity, conjugation, Re identities, flexibility, norm, adjoint, anti-commutation, i_n alternative",
        generator: core_identities,
    },
    SuiteDef {
        name: "normed_low",
        levels: 0..=3,
        in_all: true,
        about: "<ax,ay> = |a|^2 <x,y> up to the octonions",
        generator: normed_low,
    },
    SuiteDef {
        name: "hermitian",
        levels: 1..=7,
        in_all: true,
        about: "Hermitian form axioms",
        generator: hermitian,
    },
    SuiteDef {
        name: "antilinear",
        levels: 2..=6,
        in_all: true,
        about: "L_x conjugate-linear and anti-Hermitian with even complex kernel codimension",
        generator: antilinear,
    },
    SuiteDef {
        name: "i_comm",
        levels: 2..=7,
        in_all: true,
        about: "commuting complex scalars past products",
        generator: i_comm,
    },
    SuiteDef {
        name: "ann_mod4",
        levels: 2..=7,
        in_all: true,
        about: "dim Ann(x) is a multiple of 4",
        generator: ann_mod4,
    },
    SuiteDef {
        name: "ann_bound",
        levels: 2..=7,
        in_all: true,
        about: "dim Ann(x) <= 2^n - 4n + 4 and the split bound",
        generator: ann_bound,
    },
    SuiteDef {
        name: "ann_structure",
        levels: 2..=6,
        in_all: true,
        about: "left = right annihilators, imaginary, C_n-orthogonal, C_n-stable, invariance, L_x transpose",
        generator: ann_structure,
    },
    SuiteDef {
        name: "zd_equiv",
        levels: 1..=6,
        in_all: true,
        about: "Ann(a,b) as solutions of ax = -yb, bx = ya (a, b at the suite level)",
        generator: zd_equiv,
    },
    SuiteDef {
        name: "c_ann",
        levels: 2..=6,
        in_all: true,
        about: "Ann(alpha a, beta a) and Ann(a, +-i a) (a at the suite level)",
        generator: c_ann,
    },
    SuiteDef {
        name: "a4_characterization",
        levels: 4..=4,
        in_all: true,
        about: "(a,b) in A_4 is a zero-divisor iff a, b orthogonal imaginary of equal norm",
        generator: a4_characterization,
    },
    SuiteDef {
        name: "main_a5",
        levels: 5..=5,
        in_all: true,
        about: "the 16 / 12 / 8 trichotomy for Ann(a,b) in A_5",
        generator: main_a5,
    },
    SuiteDef {
        name: "assoc_recursions",
        levels: 4..=7,
        in_all: true,
        about: "associator dimension recursions for doubled basis pairs",
        generator: assoc_recursions,
    },
    SuiteDef {
        name: "ass_prime_ann",
        levels: 4..=7,
        in_all: true,
        about: "Ann(a,b) = {(x,(ax)b) : x in Ass'[a,b]} for quaternionic pairs",
        generator: ass_prime_ann,
    },
    SuiteDef {
        name: "top_family",
        levels: 4..=7,
        in_all: true,
        about: "top-dimensional zero-divisors and their twisted families",
        generator: top_family,
    },
    SuiteDef {
        name: "not_top",
        levels: 5..=7,
        in_all: true,
        about: "mixed-sign doublings stay below 2^n - 8n + 20",
        generator: not_top,
    },
    SuiteDef {
        name: "ann_intersect",
        levels: 4..=4,
        in_all: true,
        about: "Ann a meets Ann b iff a1 a2/|a1|^2 = b1 b2/|b1|^2",
        generator: ann_intersect,
    },
    SuiteDef {
        name: "alt_dims",
        levels: 2..=6,
        in_all: true,
        about: "dim Alt(x) is a multiple of 4; basis vectors and octonions are alternative",
        generator: alt_dims,
    },
    SuiteDef {
        name: "splitting",
        levels: 2..=6,
        in_all: true,
        about: "Ann(x) splits along a subalgebra containing x and its complement",
        generator: splitting,
    },
    SuiteDef {
        name: "injected_failure",
        levels: 1..=6,
        in_all: false,
        about: "a deliberately false claim, for exercising failure records and replay",
        generator: injected_failure,
    },
];

pub fn find_suite(name: &str) -> Option<&'static SuiteDef> {
    SUITES.iter().find(|s| s.name == name)
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

// ---- parameter encodings ----

fn scalar_element(s: &ComplexScalar) -> Element {
    Element::from_vec_unchecked(1, vec![s.re.clone(), s.im.clone()])
}

fn int_element(v: i64) -> Element {
    Element::from_vec_unchecked(0, vec![int(v)])
}

fn project_out(v: &Element, u: &Element) -> Element {
    if u.is_zero() {
        return v.clone();
    }
    v - &u.scale(&(dot(u, v) / u.norm_sq()))
}

/// A nonzero imaginary element orthogonal to the imaginary `u` (level >= 2).
fn orthogonal_imaginary(s: &Sampler, rng: &mut TrialRng, u: &Element) -> Element {
    for _ in 0..8 {
        let v = project_out(&s.imaginary(rng, u.level()), u);
        if !v.is_zero() {
            return v;
        }
    }
    let mut c = vec![int(0); u.dim()];
    let p = if u.coeff(1).is_zero() { 1 } else { 2 % u.dim().max(2) };
    c[p] = int(1);
    project_out(&Element::from_vec_unchecked(u.level(), c), u)
}

fn pad(x: &Element, level: u32) -> Element {
    let mut c = x.coeffs().to_vec();
    c.resize(1usize << level, int(0));
    Element::from_vec_unchecked(level, c)
}

fn random_basis(rng: &mut TrialRng, level: u32) -> Element {
    Element::basis(level, rng.index(1usize << level)).expect("valid level")
}

// ---- generators ----

fn core_identities(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed(rng, level);
    let y = s.mixed(rng, level);
    let z = s.mixed(rng, level);
    let (p, q) = (random_basis(rng, level), random_basis(rng, level));
    let mut cases = vec![
        case("product_routes_agree", vec![x.clone(), y.clone()]),
        case("basis_product_agrees", vec![p, q]),
        case("bilinear", vec![x.clone(), y.clone(), z.clone()]),
        case("conj_reverses_products", vec![x.clone(), y.clone()]),
        case("re_commutes", vec![x.clone(), y.clone()]),
        case("re_associates", vec![x.clone(), y.clone(), z.clone()]),
        case("flexible", vec![x.clone(), y.clone()]),
        case("norm_identity", vec![x.clone()]),
        case("inner_product_standard", vec![x.clone(), y.clone()]),
        case("adjoint", vec![x.clone(), y.clone(), z]),
    ];
    if level >= 1 {
        let u = s.imaginary(rng, level);
        let v = if rng.coin() && level >= 2 {
            orthogonal_imaginary(s, rng, &u)
        } else {
            s.imaginary(rng, level)
        };
        let (alpha, beta) = (s.complex(rng), s.complex(rng));
        cases.push(case("anti_commute_iff_orthogonal", vec![u, v]));
        cases.push(case("i_alternative", vec![x.clone()]));
        cases.push(case(
            "complex_action_associative",
            vec![scalar_element(&alpha), scalar_element(&beta), x],
        ));
    }
    if level >= 2 {
        let a = s.mixed_complex_perp(rng, level);
        let alpha = s.complex(rng);
        cases.push(case("twist_complex_linear", vec![scalar_element(&alpha), a]));
    }
    cases
}

fn normed_low(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let a = s.nonzero(rng, level);
    let x = s.dense(rng, level);
    let y = s.dense(rng, level);
    vec![case("normed_octonions", vec![a, x, y])]
}

fn hermitian(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed(rng, level);
    let y = s.mixed(rng, level);
    let z = s.dense(rng, level);
    let alpha = scalar_element(&s.complex(rng));
    vec![
        case("herm_projection", vec![x.clone(), y.clone()]),
        case("herm_sesquilinear", vec![x.clone(), y.clone(), z, alpha]),
        case("herm_conjugate_symmetric", vec![x.clone(), y]),
        case("herm_positive", vec![x]),
    ]
}

fn antilinear(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed_complex_perp(rng, level);
    let y = s.mixed(rng, level);
    let z = s.mixed(rng, level);
    let alpha = scalar_element(&s.complex(rng));
    vec![
        case("conjugate_linear", vec![x.clone(), y.clone(), alpha]),
        case("anti_hermitian", vec![x.clone(), y, z]),
        case("even_complex_codim", vec![x]),
    ]
}

fn i_comm(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed_complex_perp(rng, level);
    let y = s.mixed(rng, level);
    let alpha = scalar_element(&s.complex(rng));
    let u = s.imaginary(rng, level);
    let v = orthogonal_imaginary(s, rng, &u);
    let beta = scalar_element(&s.complex(rng));
    vec![
        case("i_comm", vec![x, alpha, y]),
        case("i_comm2", vec![u, v, beta]),
    ]
}

fn ann_mod4(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    vec![case("ann_mod4", vec![s.mixed(rng, level)])]
}

fn ann_bound(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed(rng, level);
    vec![
        case("ann_bound", vec![x.clone()]),
        case("ann_split_bound", vec![x]),
    ]
}

fn ann_structure(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = if rng.coin() {
        s.mixed_complex_perp(rng, level)
    } else {
        s.mixed(rng, level)
    };
    let alpha = scalar_element(&s.complex(rng));
    vec![
        case("left_equals_right", vec![x.clone()]),
        case("ann_in_complex_perp", vec![x.clone()]),
        case("ann_complex_stable", vec![x.clone()]),
        case("equal_ann", vec![x.clone(), alpha]),
        case("ann_conj", vec![x.clone()]),
        case("adjoint_matrix", vec![x]),
    ]
}

fn zd_equiv(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let (a, b) = if level + 1 >= 4 && rng.coin() {
        s.zero_divisor(rng, level + 1).halves().expect("level >= 4")
    } else {
        (s.imaginary(rng, level), s.imaginary(rng, level))
    };
    vec![case("zd_equiv", vec![a, b])]
}

fn c_ann(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let a = s.mixed_complex_perp(rng, level);
    let (alpha, beta) = loop {
        let (alpha, beta) = (s.complex(rng), s.complex(rng));
        if !alpha.mul(&alpha).add(&beta.mul(&beta)).is_zero() {
            break (alpha, beta);
        }
    };
    let sign = if rng.coin() { 1 } else { -1 };
    let gamma = match rng.below(3) {
        0 => ComplexScalar::new(int(0), int(sign)),
        _ => s.complex(rng),
    };
    vec![
        case(
            "c_ann_scaled",
            vec![a.clone(), scalar_element(&alpha), scalar_element(&beta)],
        ),
        case("c_ann_twisted", vec![a.clone(), int_element(sign)]),
        case("c_multiple_pair", vec![a, scalar_element(&gamma)]),
    ]
}

/// A pair violating exactly one of: `a1` imaginary, `a1 ⊥ a2`, equal norms.
pub fn a4_non_example(s: &Sampler, rng: &mut TrialRng) -> (Element, Element) {
    let (a1, a2) = s.a4_pair(rng);
    let (c, sn) = s.pythagorean(rng);
    match rng.below(3) {
        // rotate a1 toward the real axis: same norm, still orthogonal to a2
        0 => {
            let norm = Element::one(3).expect("level 3").scale(&square_root(&a1.norm_sq()));
            (&a1.scale(&c) + &norm.scale(&sn), a2)
        }
        1 => (a1.clone(), &a2.scale(&c) + &a1.scale(&sn)),
        _ => {
            let m = *rng.pick(&[0, 2, -2, 3, -3]);
            (a1, a2.scale(&int(m)))
        }
    }
}

/// Square root of a rational square; [`Sampler::a4_pair`] norms are integer squares.
fn square_root(q: &Rational) -> Rational {
    let root = Rational::new(q.numer().sqrt(), q.denom().sqrt());
    debug_assert_eq!(&(&root * &root), q);
    root
}

fn a4_characterization(s: &Sampler, rng: &mut TrialRng, _level: u32) -> Vec<Case> {
    let (a1, a2) = s.a4_pair(rng);
    let (b1, b2) = a4_non_example(s, rng);
    vec![
        case("a4_zero_divisor_iff", vec![a1, a2]),
        case("a4_zero_divisor_iff", vec![b1, b2]),
    ]
}

/// The parameters the `A_5` family is swept over before random draws.
pub fn a5_alpha_list() -> Vec<Element> {
    let q = |terms: &[(usize, i64)]| Element::from_ints(2, terms).expect("level 2");
    vec![
        q(&[(3, 1)]),
        q(&[(3, -1)]),
        q(&[(1, 1)]),
        q(&[(1, -1)]),
        q(&[(2, 1)]),
        q(&[(2, -1)]),
        q(&[(1, 1), (2, 1)]),
        q(&[(1, 3), (2, 4)]).scale(&ratio(1, 5)),
        q(&[(0, 1)]),
        q(&[(0, -1)]),
        q(&[(0, 2)]),
        q(&[(0, 1), (3, 1)]),
        q(&[(3, 2)]),
    ]
}

/// A random automorphism of `A_3` composed from rotations in the planes
/// `(i, j)` and `(j, t)`.
fn random_automorphism(s: &Sampler, rng: &mut TrialRng) -> OperatorMatrix {
    let e = |p| Element::basis(3, p).expect("level 3");
    let mut m = OperatorMatrix::identity(3).expect("level 3");
    for _ in 0..3 {
        let (c, sn) = s.pythagorean(rng);
        let (x, y, z) = if rng.coin() {
            (
                &e(1).scale(&c) + &e(2).scale(&sn),
                &e(2).scale(&c) - &e(1).scale(&sn),
                e(4),
            )
        } else {
            (
                e(1),
                &e(2).scale(&c) + &e(4).scale(&sn),
                &e(4).scale(&c) - &e(2).scale(&sn),
            )
        };
        let step = build_octonion_automorphism(&x, &y, &z).expect("rotation automorphism");
        m = step.compose(&m).expect("same level");
    }
    m
}

fn apply_halves(m: &OperatorMatrix, x: &Element) -> Element {
    let (a, b) = x.halves().expect("level 4");
    Element::pair(&m.apply(&a).expect("level 3"), &m.apply(&b).expect("level 3")).expect("same level")
}

fn random_alpha(s: &Sampler, rng: &mut TrialRng) -> Element {
    if rng.coin() {
        s.unit_imaginary_quaternion(rng)
    } else {
        s.nonzero(rng, 2)
    }
}

/// Halves `(a, b)` of an `A_5` family member moved by a random automorphism,
/// so `Ann a ∩ Ann b ≠ 0`.
fn intersecting_pair(s: &Sampler, rng: &mut TrialRng) -> (Element, Element) {
    let alpha = random_alpha(s, rng);
    let x = a5_family(&alpha).expect("nonzero quaternion").element;
    let (a, b) = x.halves().expect("level 5");
    let m = random_automorphism(s, rng);
    (apply_halves(&m, &a), apply_halves(&m, &b))
}

fn main_a5(s: &Sampler, rng: &mut TrialRng, _level: u32) -> Vec<Case> {
    let alpha = random_alpha(s, rng);
    let (a, b) = intersecting_pair(s, rng);
    let mut cases = vec![
        case("a5_family_dim", vec![alpha]),
        case("a5_trichotomy", vec![a.clone(), b.clone()]),
    ];
    let variant = match rng.below(3) {
        0 => {
            let sign = if rng.coin() { 1 } else { -1 };
            (a.clone(), a.i_times().scale(&int(sign)))
        }
        1 => (Element::zero(4).expect("level 4"), b),
        _ => (a.clone(), a.scale(&int(rng.nonzero_int(s.bound)))),
    };
    cases.push(case("a5_trichotomy", vec![variant.0, variant.1]));
    cases
}

/// Distinct imaginary basis vectors with random signs; always a quaternionic
/// pair.
fn basis_pair(rng: &mut TrialRng, level: u32) -> (Element, Element) {
    let n = 1usize << level;
    let p = 1 + rng.index(n - 1);
    let mut q = 1 + rng.index(n - 2);
    if q >= p {
        q += 1;
    }
    let sign = |rng: &mut TrialRng| int(if rng.coin() { 1 } else { -1 });
    let a = Element::basis(level, p).expect("valid level").scale(&sign(rng));
    let b = Element::basis(level, q).expect("valid level").scale(&sign(rng));
    (a, b)
}

fn assoc_recursions(_s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let (a, b) = basis_pair(rng, level - 1);
    let anti = rng.coin();
    let top = (1usize << level) - 4;
    let d = 4 + 8 * rng.index((top - 4) / 8 + 1);
    let (p, q) = assoc_pair_with_dim(level, d, anti).expect("admissible dimension");
    vec![
        case("ass_first_first", vec![a.clone(), b.clone()]),
        case("ass_first_second", vec![a.clone(), b.clone()]),
        case("anti_first_first", vec![a.clone(), b.clone()]),
        case("anti_first_second", vec![a, b]),
        case(
            "assoc_pair_dimension",
            vec![p, q, int_element(d as i64), int_element(anti as i64)],
        ),
    ]
}

fn ass_prime_ann(_s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let (a, b) = if rng.coin() {
        basis_pair(rng, level - 1)
    } else {
        let top = (1usize << (level - 1)) - 4;
        let d = 4 + 8 * rng.index((top - 4) / 8 + 1);
        assoc_pair_with_dim(level - 1, d, rng.coin()).expect("admissible dimension")
    };
    vec![case("ass_prime_ann", vec![a, b])]
}

fn random_top(s: &Sampler, rng: &mut TrialRng, level: u32) -> Element {
    let signs = sign_sequences((level - 4) as usize);
    let signs = rng.pick(&signs).clone();
    let (a1, a2) = s.a4_pair(rng);
    top_zero_divisor(level, &signs, (&a1, &a2)).expect("valid seed").element
}

fn top_family(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.complex(rng).act(&random_top(s, rng, level)).expect("same level");
    let lower = level - 1;
    let a = s.mixed_complex_perp(rng, lower);
    let alpha = scalar_element(&s.complex(rng));
    let b = loop {
        let b = s.mixed_complex_perp(rng, lower);
        let line = Subspace::span(lower, [&a, &a.i_times()]).expect("same level");
        if !line.contains(&b).expect("same level") {
            break b;
        }
    };
    let c = match rng.below(3) {
        0 => a.clone(),
        1 => -&a,
        _ => b.clone(),
    };
    let mut cases = vec![case("top_dimension", vec![x.clone()])];
    if level >= 5 {
        cases.push(case("top_halves", vec![x]));
    }
    cases.push(case("top_ann_equal", vec![a.clone(), alpha]));
    cases.push(case("top_ann_distinct", vec![a.clone(), b]));
    cases.push(case("twisted_families_disjoint", vec![a, c]));
    cases
}

fn not_top(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let lower = level - 2;
    let a = s.mixed_complex_perp(rng, lower);
    let b = match rng.below(3) {
        0 => s.complex(rng).act(&a).expect("same level"),
        _ => s.mixed_complex_perp(rng, lower),
    };
    vec![case("not_top_bound", vec![a, b])]
}

fn random_a4_zero_divisor(s: &Sampler, rng: &mut TrialRng) -> Element {
    let (a1, a2) = s.a4_pair(rng);
    Element::pair(&a1, &a2).expect("level 3")
}

fn ann_intersect(s: &Sampler, rng: &mut TrialRng, _level: u32) -> Vec<Case> {
    let (a, b) = if rng.coin() {
        intersecting_pair(s, rng)
    } else {
        (random_a4_zero_divisor(s, rng), random_a4_zero_divisor(s, rng))
    };
    let mut cases = vec![case("ann_intersect", vec![a.clone(), b])];
    cases.push(case(
        "ann_intersect",
        vec![a.clone(), a.scale(&int(rng.nonzero_int(s.bound)))],
    ));
    cases
}

fn alt_dims(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let x = s.mixed(rng, level);
    let basis_multiple = random_basis(rng, level).scale(&int(rng.nonzero_int(s.bound)));
    let mut cases = vec![
        case("alt_mod4", vec![x]),
        case("alt_full", vec![basis_multiple]),
    ];
    if level <= 3 {
        cases.push(case("alt_full", vec![s.dense(rng, level)]));
    }
    cases
}

fn splitting(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    let (x, gens) = if rng.coin() {
        // B = A_k x 0 x ... x 0, generated by e_1, e_2, e_4, ...
        let k = rng.range(1, i64::from(level)) as u32;
        let gens: Vec<Element> = (0..k)
            .map(|j| Element::basis(level, 1 << j).expect("valid level"))
            .collect();
        (pad(&s.mixed(rng, k), level), gens)
    } else {
        let (a, b) = basis_pair(rng, level);
        let refs = [&a, &b];
        let algebra = generated_subalgebra(level, &refs).expect("same level");
        let mut x = Element::zero(level).expect("valid level");
        for v in algebra.basis() {
            x = &x + &v.scale(&int(rng.int_in(s.bound)));
        }
        (x, vec![a, b])
    };
    let mut inputs = vec![x];
    inputs.extend(gens);
    vec![case("subalgebra_splitting", inputs)]
}

fn injected_failure(s: &Sampler, rng: &mut TrialRng, level: u32) -> Vec<Case> {
    vec![case("injected_false_claim", vec![s.nonzero(rng, level)])]
}
