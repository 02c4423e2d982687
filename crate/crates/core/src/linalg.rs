//! Dense exact matrices over [`Rational`] and exact linear solving.

use crate::scalar::{rat, Rational, RationalModule};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if rows have differing lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    /// `u vᵀ`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Matrix::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, k| acc + &self[(i, k)] * &other[(k, j)])
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rational::zero(), |acc, k| acc + &self[(i, k)] * &v[k]))
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * r)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// `uᵀ A v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        u.iter()
            .zip(self.mul_vec(v))
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &m[(r, col)] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &m[(col, c)] * &f;
                    m[(r, c)] -= v;
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !m[(r, col)].is_zero())?;
            m.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pivot = m[(col, col)].clone();
            for c in 0..n {
                m[(col, c)] /= &pivot;
                inv[(col, c)] /= &pivot;
            }
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in 0..n {
                    let a = &m[(col, c)] * &f;
                    m[(r, c)] -= a;
                    let b = &inv[(col, c)] * &f;
                    inv[(r, c)] -= b;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Leading principal minors all positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            Matrix::from_fn(k, k, |i, j| self[(i, j)].clone())
                .determinant()
                .is_positive()
        })
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix by exact
    /// congruence diagonalization.
    pub fn signature(&self) -> Signature {
        assert!(self.is_symmetric(), "signature of a non-symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sig = Signature::default();
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    // Zero diagonal: x_i += x_j creates a diagonal entry 2a_ij.
                    let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                        .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                    match pair {
                        Some((i, j)) => {
                            for k in 0..n {
                                let v = a[(j, k)].clone();
                                a[(i, k)] += v;
                            }
                            for k in 0..n {
                                let v = a[(k, j)].clone();
                                a[(k, i)] += v;
                            }
                            i
                        }
                        None => {
                            sig.zero += active.len();
                            break;
                        }
                    }
                }
            };
            let d = a[(p, p)].clone();
            if d.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for &r in &active {
                if r == p || a[(r, p)].is_zero() {
                    continue;
                }
                let f = &a[(r, p)] / &d;
                for k in 0..n {
                    let v = &a[(p, k)] * &f;
                    a[(r, k)] -= v;
                }
                for k in 0..n {
                    let v = &a[(k, p)] * &f;
                    a[(k, r)] -= v;
                }
            }
            active.retain(|&i| i != p);
        }
        sig
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("coefficient matrix has rank {rank} < {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("system has no exact solution")]
    Inconsistent,
}

/// Solves `A x = b` exactly by Gaussian elimination on the rational
/// coefficient matrix. Right-hand sides only need to form a rational vector
/// space, so ring-valued systems with constant coefficients are supported.
pub fn solve_exact<T: RationalModule>(a: &Matrix, b: &[T]) -> Result<Vec<T>, SolveError> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        rhs.swap(p, row);
        let pivot = m[(row, col)].clone();
        let inv = Rational::one() / &pivot;
        for c in 0..cols {
            m[(row, c)] *= &inv;
        }
        rhs[row] = rhs[row].scaled_by(&inv);
        for r in 0..rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone();
            for c in 0..cols {
                let v = &m[(row, c)] * &f;
                m[(r, c)] -= v;
            }
            rhs[r] = rhs[r].minus(&rhs[row].scaled_by(&f));
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivots.len() < cols {
        return Err(SolveError::RankDeficient {
            rank: pivots.len(),
            unknowns: cols,
        });
    }
    if rhs[row..].iter().any(|r| !r.vanishes()) {
        return Err(SolveError::Inconsistent);
    }
    Ok(rhs.into_iter().take(cols).collect())
}

/// Rank of a rational matrix.
pub fn rank(a: &Matrix) -> usize {
    let zeros = vec![Rational::zero(); a.rows()];
    match solve_exact(a, &zeros) {
        Ok(_) => a.cols(),
        Err(SolveError::RankDeficient { rank, .. }) => rank,
        Err(SolveError::Inconsistent) => unreachable!("homogeneous system"),
    }
}
