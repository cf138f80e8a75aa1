//! Exact dense linear algebra over the rationals.
//!
//! Everything funnels through [`rref`]: rows are scaled to integers, reduced
//! to echelon form with Bareiss fraction-free elimination (first nonzero pivot,
//! no other pivoting), cleared above the pivots with content-reduced integer row
//! operations, and only then divided through by the pivots. The result is the
//! reduced row echelon form, which is unique, so two [`Subspace`] values are
//! equal exactly when they span the same space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::element::{check_level, dot, Element};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A linear endomorphism of `A_n` in the standard basis. Row index is the
/// output coordinate, column index the input coordinate.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    level: u32,
    rows: Vec<Vec<Rational>>,
}

impl OperatorMatrix {
    pub fn zero(level: u32) -> Result<Self> {
        check_level(level)?;
        let n = 1usize << level;
        Ok(OperatorMatrix {
            level,
            rows: vec![vec![Rational::zero(); n]; n],
        })
    }

    pub fn identity(level: u32) -> Result<Self> {
        let mut m = Self::zero(level)?;
        for (i, row) in m.rows.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        Ok(m)
    }

    /// Column `q` is `columns[q]`.
    pub fn from_columns(level: u32, columns: &[Element]) -> Result<Self> {
        let mut m = Self::zero(level)?;
        if columns.len() != m.side() {
            return Err(Error::input(format!(
                "expected {} columns, got {}",
                m.side(),
                columns.len()
            )));
        }
        for (q, col) in columns.iter().enumerate() {
            if col.level() != level {
                return Err(Error::LevelMismatch {
                    left: level,
                    right: col.level(),
                });
            }
            for (p, c) in col.support() {
                m.rows[p][q] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(level: u32, rows: Vec<Vec<Rational>>) -> Result<Self> {
        check_level(level)?;
        let n = 1usize << level;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!("operator at level {level} must be {n} x {n}")));
        }
        Ok(OperatorMatrix { level, rows })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn column(&self, q: usize) -> Element {
        Element::from_vec_unchecked(self.level, self.rows.iter().map(|r| r[q].clone()).collect())
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: x.level(),
            });
        }
        let support: Vec<(usize, &Rational)> = x.support().collect();
        let out = self
            .rows
            .iter()
            .map(|row| {
                support
                    .iter()
                    .filter(|(q, _)| !row[*q].is_zero())
                    .map(|(q, c)| &row[*q] * *c)
                    .sum()
            })
            .collect();
        Ok(Element::from_vec_unchecked(self.level, out))
    }

    pub fn transpose(&self) -> Self {
        let n = self.side();
        let rows = (0..n)
            .map(|c| (0..n).map(|r| self.rows[r][c].clone()).collect())
            .collect();
        OperatorMatrix {
            level: self.level,
            rows,
        }
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.same_level(rhs)?;
        let n = self.side();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, out) in rows.iter_mut().enumerate() {
            for (k, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.rows[k].iter().enumerate() {
                    if !b.is_zero() {
                        out[j] += a * b;
                    }
                }
            }
        }
        Ok(OperatorMatrix {
            level: self.level,
            rows,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.rows.clone(), self.side())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        self.same_level(rhs)?;
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(OperatorMatrix {
            level: self.level,
            rows,
        })
    }

    fn same_level(&self, rhs: &Self) -> Result<()> {
        if self.level != rhs.level {
            Err(Error::LevelMismatch {
                left: self.level,
                right: rhs.level,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperatorMatrix(level {})", self.level)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `A_n` held as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    level: u32,
    basis: Vec<Element>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(Subspace {
            level,
            basis: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn full(level: u32) -> Result<Self> {
        check_level(level)?;
        let n = 1usize << level;
        Ok(Subspace {
            level,
            basis: (0..n).map(|p| Element::basis(level, p)).collect::<Result<_>>()?,
            pivots: (0..n).collect(),
        })
    }

    /// Span of arbitrary vectors, in canonical form.
    pub fn span<'a, I>(level: u32, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        check_level(level)?;
        let mut rows = Vec::new();
        for v in vectors {
            if v.level() != level {
                return Err(Error::LevelMismatch {
                    left: level,
                    right: v.level(),
                });
            }
            rows.push(v.coeffs().to_vec());
        }
        Ok(Self::from_rows_unchecked(level, rows))
    }

    fn from_rows_unchecked(level: u32, rows: Vec<Vec<Rational>>) -> Self {
        let (reduced, pivots) = rref(rows, 1usize << level);
        Subspace {
            level,
            basis: reduced
                .into_iter()
                .map(|r| Element::from_vec_unchecked(level, r))
                .collect(),
            pivots,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: x.level(),
            });
        }
        let mut r: Vec<Rational> = x.coeffs().to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (dst, c) in r.iter_mut().zip(row.coeffs()) {
                if !c.is_zero() {
                    *dst -= &f * c;
                }
            }
        }
        Ok(r.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orthogonal complement for the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = 1usize << self.level;
        let rows: Vec<Vec<Rational>> = self.basis.iter().map(|e| e.coeffs().to_vec()).collect();
        let null = nullspace_from_rref(&rows, &self.pivots, n);
        Self::from_rows_unchecked(self.level, null)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::span(self.level, self.basis.iter().chain(other.basis.iter()))
    }

    /// `U ∩ V`, as the vectors orthogonal to both complements.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        let a = self.orthogonal_complement();
        let b = other.orthogonal_complement();
        let rows: Vec<Vec<Rational>> = a
            .basis
            .iter()
            .chain(b.basis.iter())
            .map(|e| e.coeffs().to_vec())
            .collect();
        Ok(kernel_of_rows(self.level, rows))
    }

    /// True when every basis vector is orthogonal to `x`.
    pub fn is_orthogonal_to(&self, x: &Element) -> bool {
        self.basis.iter().all(|b| dot(b, x).is_zero())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(level {}, dim {}) {:?}", self.level, self.dim(), self.basis)
    }
}

/// `{v : M v = 0}` in canonical form.
pub fn kernel(m: &OperatorMatrix) -> Subspace {
    kernel_of_rows(m.level, m.rows.clone())
}

/// Joint kernel of a list of linear forms (each row has `2^level` entries).
pub fn kernel_of_rows(level: u32, rows: Vec<Vec<Rational>>) -> Subspace {
    let n = 1usize << level;
    let (reduced, pivots) = rref(rows, n);
    let null = nullspace_from_rref(&reduced, &pivots, n);
    Subspace::from_rows_unchecked(level, null)
}

/// Kernel of an arbitrary linear map given by its values on the basis of
/// `A_level`, each value a vector of linear-form outputs of equal length.
pub fn kernel_of_map<F>(level: u32, f: F) -> Result<Subspace>
where
    F: Fn(&Element) -> Vec<Rational>,
{
    check_level(level)?;
    let n = 1usize << level;
    let columns: Vec<Vec<Rational>> = (0..n)
        .map(|q| f(&Element::basis(level, q).expect("level checked")))
        .collect();
    let m = columns.first().map_or(0, Vec::len);
    if columns.iter().any(|c| c.len() != m) {
        return Err(Error::input("linear map outputs have inconsistent lengths"));
    }
    let rows = (0..m)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(kernel_of_rows(level, rows))
}

/// Kernel of several operators at once, e.g. `Ann(a) ∩ Ann(b)`.
pub fn joint_kernel(ops: &[&OperatorMatrix]) -> Result<Subspace> {
    let Some(first) = ops.first() else {
        return Err(Error::input("joint kernel of an empty operator list"));
    };
    let mut rows = Vec::new();
    for m in ops {
        first.same_level(m)?;
        rows.extend(m.rows.iter().cloned());
    }
    Ok(kernel_of_rows(first.level, rows))
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    u.intersect(v)
}

pub fn orthogonal_complement(u: &Subspace) -> Subspace {
    u.orthogonal_complement()
}

pub fn contains(u: &Subspace, x: &Element) -> Result<bool> {
    u.contains(x)
}

fn nullspace_from_rref(rows: &[Vec<Rational>], pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}

fn to_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (&lcm / c.denom())
            }
        })
        .collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in row.iter_mut() {
            if !c.is_zero() {
                *c /= &g;
            }
        }
    }
}

/// Bareiss fraction-free forward elimination. Rows are permuted in place;
/// returns the pivot columns, one per leading row.
fn bareiss_echelon(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(found) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, found);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = head[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form: nonzero rows only, leading entries 1, pivot
/// columns strictly increasing.
pub(crate) fn rref(rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| to_integer_row(r))
        .collect();
    let pivots = bareiss_echelon(&mut m, ncols);
    m.truncate(pivots.len());
    for row in m.iter_mut() {
        reduce_content(row);
    }
    for j in (0..pivots.len()).rev() {
        let pj = pivots[j];
        let (upper, lower) = m.split_at_mut(j);
        let row_j = &lower[0];
        for row_i in upper.iter_mut() {
            if row_i[pj].is_zero() {
                continue;
            }
            let g = row_j[pj].gcd(&row_i[pj]);
            let a = &row_j[pj] / &g;
            let b = &row_i[pj] / &g;
            for (dst, src) in row_i.iter_mut().zip(row_j.iter()) {
                let mut v = &a * &*dst;
                if !src.is_zero() {
                    v -= &b * src;
                }
                *dst = v;
            }
            reduce_content(row_i);
        }
    }
    let reduced = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|c| Rational::new(c, lead.clone()))
                .collect()
        })
        .collect();
    (reduced, pivots)
}

pub(crate) fn rank_of_rows(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| to_integer_row(r))
        .collect();
    bareiss_echelon(&mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn e(level: u32, p: usize) -> Element {
        Element::basis(level, p).unwrap()
    }

    #[test]
    fn identity_and_zero_kernels() {
        assert_eq!(kernel(&OperatorMatrix::identity(3).unwrap()).dim(), 0);
        let k = kernel(&OperatorMatrix::zero(2).unwrap());
        assert_eq!(k.dim(), 4);
        assert_eq!(k, Subspace::full(2).unwrap());
    }

    #[test]
    fn rref_is_canonical() {
        let a = Element::from_ints(2, &[(0, 2), (1, 4)]).unwrap();
        let b = Element::from_ints(2, &[(1, 1), (3, -3)]).unwrap();
        let u = Subspace::span(2, [&a, &b]).unwrap();
        let sum = &a + &b;
        let diff = &a - &b.scale(&int(5));
        let v = Subspace::span(2, [&sum, &diff, &a]).unwrap();
        assert_eq!(u, v);
        assert_eq!(u.pivots(), &[0, 1]);
        assert_eq!(u.basis()[0].coeff(0), &int(1));
        assert_eq!(u.basis()[0].coeff(1), &int(0));
        assert_eq!(u.basis()[0].coeff(3), &int(6));
    }

    #[test]
    fn rational_entries_survive_integer_scaling() {
        let a = make(&[ratio(1, 3), ratio(-1, 2), int(0), int(0)]);
        let b = make(&[int(0), ratio(2, 7), ratio(5, 3), int(1)]);
        let u = Subspace::span(2, [&a, &b]).unwrap();
        assert!(u.contains(&a).unwrap());
        assert!(u.contains(&b).unwrap());
        assert!(u.contains(&(&a.scale(&ratio(9, 4)) - &b)).unwrap());
        assert!(!u.contains(&e(2, 3)).unwrap());
    }

    fn make(c: &[Rational]) -> Element {
        Element::from_coeffs(2, c.to_vec()).unwrap()
    }

    #[test]
    fn complement_examples() {
        let c4 = Subspace::span(4, [&e(4, 0), &e(4, 8)]).unwrap();
        assert_eq!(c4.orthogonal_complement().dim(), 14);
        assert_eq!(Subspace::zero(3).unwrap().orthogonal_complement(), Subspace::full(3).unwrap());
        let h = Subspace::span(3, [&e(3, 0), &e(3, 1), &e(3, 2), &e(3, 3)]).unwrap();
        let th = Subspace::span(3, [&e(3, 4), &e(3, 5), &e(3, 6), &e(3, 7)]).unwrap();
        assert_eq!(h.orthogonal_complement(), th);
    }

    #[test]
    fn contains_examples() {
        let u = Subspace::span(3, [&e(3, 1)]).unwrap();
        assert!(u.contains(&Element::zero(3).unwrap()).unwrap());
        assert!(!u.contains(&e(3, 2)).unwrap());
        assert!(u.contains(&e(3, 4)).is_ok());
        assert!(u.contains(&e(2, 1)).is_err());
    }

    #[test]
    fn intersection_basics() {
        let u = Subspace::span(3, [&e(3, 1), &(&e(3, 2) + &e(3, 5))]).unwrap();
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(u.intersect(&Subspace::zero(3).unwrap()).unwrap().is_zero());
        let v = Subspace::span(3, [&e(3, 2), &e(3, 5), &e(3, 7)]).unwrap();
        let w = u.intersect(&v).unwrap();
        assert_eq!(w, Subspace::span(3, [&(&e(3, 2) + &e(3, 5))]).unwrap());
        assert!(u.intersect(&Subspace::zero(2).unwrap()).is_err());
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        // column 0 all zero, column 2 = 2 * column 1
        let rows = vec![
            vec![int(0), int(1), int(2), int(3)],
            vec![int(0), int(2), int(4), int(7)],
            vec![int(0), int(-1), int(-2), int(5)],
            vec![int(0), int(0), int(0), int(0)],
        ];
        let m = OperatorMatrix::from_rows(2, rows).unwrap();
        assert_eq!(m.rank(), 2);
        let k = kernel(&m);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(m.apply(v).unwrap().is_zero());
        }
    }

    #[test]
    fn compose_and_transpose() {
        let rows = |v: [[i64; 2]; 2]| {
            v.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect::<Vec<Vec<Rational>>>()
        };
        let a = OperatorMatrix::from_rows(1, rows([[1, 2], [3, 4]])).unwrap();
        let b = OperatorMatrix::from_rows(1, rows([[0, 1], [1, 0]])).unwrap();
        assert_eq!(a.compose(&b).unwrap(), OperatorMatrix::from_rows(1, rows([[2, 1], [4, 3]])).unwrap());
        assert_eq!(a.transpose(), OperatorMatrix::from_rows(1, rows([[1, 3], [2, 4]])).unwrap());
        let x = Element::from_ints(1, &[(0, 1), (1, -1)]).unwrap();
        assert_eq!(a.apply(&x).unwrap(), Element::from_ints(1, &[(0, -1), (1, -1)]).unwrap());
    }
}
