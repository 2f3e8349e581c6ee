//! Exact integer and rational matrix kernel.
//!
//! Everything here works over `BigInt` / `BigRational`; no floating point is
//! used. Matrices are dense and row-major. Lattice bases are stored as rows.

mod cholesky;
mod hnf;
mod lll;

pub use cholesky::{cholesky, is_positive_definite, Cholesky};
pub use hnf::{hnf, hnf_modular, hnf_span, hnf_square};
pub use lll::{is_lll_reduced, lll_reduce, LLL_DELTA};

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl<T: Clone + Zero + One + PartialEq> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Mul for &Matrix<T>
where
    T: Clone + Zero + for<'a> Mul<&'a T, Output = T>,
{
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data: vec![T::zero(); self.rows * rhs.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a.clone() * &rhs[(k, j)];
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = std::mem::replace(slot, T::zero()) + t;
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl RatMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_i64(rows).to_rational()
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Returns the integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    /// Splits into `(numerator, d)` with `self = numerator / d` and `d` minimal.
    pub fn clear_denominators(&self) -> (IntMatrix, BigInt) {
        let d = self.denominator_lcm();
        let num = self.map(|x| (x * BigRational::from_integer(d.clone())).to_integer());
        (num, d)
    }
}

/// Exact determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Determinant of a rational matrix (denominators cleared row by row).
pub fn det_rational(m: &RatMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::Shape("determinant of non-square matrix".into()));
    }
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let d = m.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            m.row(i)
                .iter()
                .map(|x| (x * BigRational::from_integer(d.clone())).to_integer())
                .collect(),
        );
        scale *= d;
    }
    let num = det(&Matrix::from_rows(rows)?)?;
    Ok(BigRational::new(num, scale))
}

/// `(N, d)` with `M⁻¹ = N / d`, by fraction-free Gauss-Jordan elimination.
pub fn invert_integer(m: &IntMatrix) -> Result<(IntMatrix, BigInt)> {
    if !m.is_square() {
        return Err(Error::Shape("inverse of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(pivot, k);
        let pk = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = &row[j] * &pk[k] - &f * &pk[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = pk[k].clone();
    }
    // Every diagonal entry now equals the last pivot.
    let inv = Matrix::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect())?;
    Ok((inv, prev))
}

/// Exact inverse of a rational matrix.
pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::Shape("inverse of non-square matrix".into()));
    }
    let (num, den) = m.clear_denominators();
    let (inv, d) = invert_integer(&num)?;
    Ok(inv.map(|x| BigRational::new(x * &den, d.clone())))
}

/// Solves `x · A = b` for a row vector `x`; `None` when inconsistent.
///
/// `A` may be non-square. When the solution is not unique an arbitrary one is
/// returned (free variables set to zero).
pub fn solve_left(a: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if b.len() != a.cols() {
        return Err(Error::Shape("right-hand side length".into()));
    }
    // Work on the transpose: Aᵀ xᵀ = bᵀ.
    let m = a.cols();
    let n = a.rows();
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| a[(j, i)].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for v in aug[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=n {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Ok(Some(x))
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols() {
        let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        for i in r + 1..a.rows() {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &a[(r, c)];
            for j in c..a.cols() {
                let t = &f * &a[(r, j)];
                a[(i, j)] -= t;
            }
        }
        r += 1;
    }
    r
}

/// `Tᵀ · G · T` for an integer transform `T`.
pub fn congruence(g: &RatMatrix, t: &IntMatrix) -> RatMatrix {
    let tr = t.to_rational();
    &(&tr.transpose() * g) * &tr
}

#[cfg(test)]
pub(crate) fn is_unimodular(u: &IntMatrix) -> bool {
    u.is_square() && det(u).map(|d| d.magnitude().is_one()).unwrap_or(false)
}
