use cdlab::element::{conjugate, multiply, Element};
use cdlab::linalg::{kernel, OperatorMatrix, Subspace};
use cdlab::operators::{annihilator, ann_dim, left_mul_matrix, right_mul_matrix};
use cdlab::rational::{int, Rational};
use proptest::prelude::*;

fn element(level: u32, bound: i64) -> impl Strategy<Value = Element> {
    prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -bound..=bound], 1usize << level)
        .prop_map(move |c| {
            let terms: Vec<(usize, i64)> = c.into_iter().enumerate().collect();
            Element::from_ints(level, &terms).unwrap()
        })
}

fn leveled(levels: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (u32, Vec<Element>)> {
    levels.prop_flat_map(|n| (Just(n), prop::collection::vec(element(n, 3), 0..6)))
}

/// Plain Gauss-Jordan elimination over the columns in reverse order,
/// independent of the library's routines.
fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let zero = int(0);
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let (h, w) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in (0..w).rev() {
        let Some(p) = (rank..h).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..h {
            if r != rank && m[r][col] != zero {
                let f = &m[r][col] / &pivot;
                for c in 0..w {
                    let delta = &f * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn span(level: u32, vs: &[Element]) -> Subspace {
    Subspace::span(level, vs.iter()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_oracle_and_kernel(x in (1u32..=4).prop_flat_map(|n| element(n, 4))) {
        let m = left_mul_matrix(&x);
        let n = m.side();
        prop_assert_eq!(m.rank(), oracle_rank(m.rows()));
        prop_assert_eq!(m.rank() + kernel(&m).dim(), n);
        prop_assert_eq!(ann_dim(&x), annihilator(&x).dim());
    }

    #[test]
    fn annihilator_vectors_are_annihilated(x in (1u32..=5).prop_flat_map(|n| element(n, 3))) {
        for y in annihilator(&x).basis() {
            prop_assert!(multiply(&x, y).unwrap().is_zero());
        }
    }

    #[test]
    fn left_transpose_is_left_of_conjugate(x in (0u32..=5).prop_flat_map(|n| element(n, 5))) {
        prop_assert!(left_mul_matrix(&x).transpose() == left_mul_matrix(&conjugate(&x)));
        prop_assert!(right_mul_matrix(&x).transpose() == right_mul_matrix(&conjugate(&x)));
    }

    #[test]
    fn span_is_canonical((level, vs) in leveled(1..=4), scale in 1i64..7) {
        let u = span(level, &vs);
        let mut shuffled: Vec<Element> = vs.iter().rev().map(|v| v.scale(&int(-scale))).collect();
        shuffled.extend(vs.iter().take(2).cloned());
        prop_assert!(u == span(level, &shuffled));
        prop_assert_eq!(u.dim(), oracle_rank(&vs.iter().map(|v| v.coeffs().to_vec()).collect::<Vec<_>>()));
    }

    #[test]
    fn complement_dimensions((level, vs) in leveled(1..=4)) {
        let u = span(level, &vs);
        let perp = u.orthogonal_complement();
        prop_assert_eq!(u.dim() + perp.dim(), 1usize << level);
        prop_assert!(u.intersect(&perp).unwrap().is_zero());
        prop_assert!(perp.orthogonal_complement() == u);
        for v in perp.basis() {
            prop_assert!(u.is_orthogonal_to(v));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(
        (level, vs) in leveled(2..=4),
        picks in prop::collection::vec(any::<bool>(), 6),
    ) {
        let (a, b): (Vec<_>, Vec<_>) = vs.iter().cloned().zip(&picks).partition(|(_, p)| **p);
        let u = span(level, &a.into_iter().map(|(v, _)| v).collect::<Vec<_>>());
        let w = span(level, &b.into_iter().map(|(v, _)| v).collect::<Vec<_>>());
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&w).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn matrix_apply_agrees_with_product(
        (x, y) in (0u32..=5).prop_flat_map(|n| (element(n, 6), element(n, 6))),
    ) {
        let m: OperatorMatrix = left_mul_matrix(&x);
        prop_assert!(m.apply(&y).unwrap() == multiply(&x, &y).unwrap());
        prop_assert!(right_mul_matrix(&y).apply(&x).unwrap() == multiply(&x, &y).unwrap());
    }
}
