//! Exact rational matrices: rank, nullity and kernel bases.
//!
//! Rank is computed by fraction-free (Bareiss) elimination after clearing
//! row denominators, so every intermediate value is an integer minor of the
//! input. Pivots are taken as the first nonzero entry in column order, which
//! keeps certificates reproducible.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

use crate::Rational;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

/// Rows scaled to primitive-free integer rows (each row times the lcm of its
/// denominators).
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free row echelon form. Returns the pivot columns in order.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn matrix_rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut a = integer_rows(m);
    bareiss_echelon(&mut a, m.cols()).len()
}

pub fn nullity(m: &Matrix) -> usize {
    m.cols() - matrix_rank(m)
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(m: &Matrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..m.cols() {
                    if !a[r][j].is_zero() {
                        let v = &a[i][j] - &f * &a[r][j];
                        a[i][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of `{v : m v = 0}`. Vectors are scaled to primitive integer vectors.
pub fn solve_homogeneous(m: &Matrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(primitive(v));
    }
    basis
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction. The zero vector is returned unchanged.
pub fn primitive(v: Vec<Rational>) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve_square(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), m.cols());
    assert_eq!(m.rows(), b.len());
    let n = m.rows();
    let mut aug = Matrix::zeros(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.iter().map(|row| row[n].clone()).collect())
}

/// Bareiss determinant over any integer type; `None` on overflow.
pub fn det_checked<T>(rows: &[Vec<T>]) -> Option<T>
where
    T: Clone + Zero + One + Neg<Output = T> + CheckedMul + CheckedSub + CheckedDiv,
{
    let n = rows.len();
    if n == 0 {
        return Some(T::one());
    }
    let mut a = rows.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Some(T::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].checked_mul(&a[i][j])?.checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                a[i][j] = v.checked_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Some(if negate { -d } else { d })
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det_int(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn det(m: &Matrix) -> Rational {
    assert_eq!(m.rows(), m.cols());
    let mut scale = Rational::one();
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale = &scale * Rational::from_integer(l.clone());
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    Rational::from_integer(det_int(&rows)) / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn r(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    // Independent oracle: largest k such that some k x k minor is nonzero,
    // with determinants by cofactor expansion.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return r(1);
        }
        let mut acc = r(0);
        for c in 0..n {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn brute_rank(m: &Matrix) -> usize {
        let maxk = m.rows().min(m.cols());
        for k in (1..=maxk).rev() {
            for rs in (0..m.rows()).combinations(k) {
                for cs in (0..m.cols()).combinations(k) {
                    let sub: Vec<Vec<Rational>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                    if !cofactor_det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rank_examples() {
        assert_eq!(matrix_rank(&Matrix::identity(3)), 3);
        assert_eq!(matrix_rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(matrix_rank(&Matrix::from_i64(2, &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(&Matrix::identity(3)), 0);
        assert_eq!(nullity(&Matrix::from_i64(3, &[vec![1, 1, 1]])), 2);
        assert_eq!(nullity(&Matrix::zeros(0, 4)), 4);
    }

    #[test]
    fn kernel_examples() {
        assert!(solve_homogeneous(&Matrix::identity(2)).is_empty());
        assert_eq!(solve_homogeneous(&Matrix::from_i64(2, &[vec![1, -1]])), vec![vec![r(1), r(1)]]);
        let m = Matrix::from_i64(3, &[vec![1, 1, 1]]);
        let k = solve_homogeneous(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().fold(r(0), |a, x| a + x), r(0));
        }
        assert_eq!(matrix_rank(&Matrix::from_rows(3, k)), 2);
    }

    #[test]
    fn determinant_and_solve() {
        let m = Matrix::from_i64(3, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        assert_eq!(det(&m), cofactor_det(&(0..3).map(|i| m.row(i).to_vec()).collect::<Vec<_>>()));
        let x = solve_square(&m, &[r(1), r(2), r(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![r(1), r(2), r(3)]);
        let sing = Matrix::from_i64(2, &[vec![1, 2], vec![2, 4]]);
        assert!(solve_square(&sing, &[r(1), r(1)]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(rows, cols)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
                .prop_map(move |rs| Matrix::from_i64(cols, &rs))
        })
    }

    proptest! {
        #[test]
        fn rank_matches_minor_oracle(m in small_matrix()) {
            prop_assert_eq!(matrix_rank(&m), brute_rank(&m));
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(matrix_rank(&m), matrix_rank(&m.transpose()));
        }

        #[test]
        fn rank_invariant_under_row_operations(m in small_matrix(), s in 1i64..5, swap in any::<bool>()) {
            let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            if swap && rows.len() > 1 {
                rows.swap(0, 1);
            }
            rows[0] = rows[0].iter().map(|x| x * Rational::new(s.into(), 7.into())).collect();
            if rows.len() > 1 {
                let add: Vec<Rational> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
                rows[1] = add;
            }
            prop_assert_eq!(matrix_rank(&Matrix::from_rows(m.cols(), rows)), matrix_rank(&m));
        }

        #[test]
        fn kernel_basis_is_exact(m in small_matrix()) {
            let k = solve_homogeneous(&m);
            prop_assert_eq!(k.len(), nullity(&m));
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            if !k.is_empty() {
                prop_assert_eq!(matrix_rank(&Matrix::from_rows(m.cols(), k.clone())), k.len());
            }
        }
    }
}
