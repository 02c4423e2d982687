//! Frame-constant tensors of arbitrary valence.

use crate::linalg::Matrix;
use crate::scalar::Rational;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    /// Contravariant.
    Up,
    /// Covariant.
    Down,
}

/// Components in the frame, row-major over the slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    slots: Vec<Slot>,
    data: Vec<Rational>,
}

impl Tensor {
    pub fn zeros(dim: usize, slots: &[Slot]) -> Self {
        Tensor {
            dim,
            slots: slots.to_vec(),
            data: vec![Rational::zero(); dim.pow(slots.len() as u32)],
        }
    }

    pub fn from_fn(dim: usize, slots: &[Slot], mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let data = multi_indices(dim, slots.len()).map(|idx| f(&idx)).collect();
        Tensor {
            dim,
            slots: slots.to_vec(),
            data,
        }
    }

    pub fn vector(v: &[Rational]) -> Self {
        Tensor::from_fn(v.len(), &[Slot::Up], |i| v[i[0]].clone())
    }

    pub fn covector(v: &[Rational]) -> Self {
        Tensor::from_fn(v.len(), &[Slot::Down], |i| v[i[0]].clone())
    }

    /// Rank-2 tensor from a matrix; `m[(a, b)]` is the component at `(a, b)`.
    pub fn from_matrix(m: &Matrix, slots: [Slot; 2]) -> Self {
        Tensor::from_fn(m.rows(), &slots, |i| m[(i[0], i[1])].clone())
    }

    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.rank(), 2, "to_matrix needs a rank-2 tensor");
        Matrix::from_fn(self.dim, self.dim, |a, b| self.get(&[a, b]).clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn negate(&self) -> Self {
        Tensor {
            dim: self.dim,
            slots: self.slots.clone(),
            data: self.data.iter().map(|v| -v.clone()).collect(),
        }
    }

    /// Nonzero components with 0-based indices, in index order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, Rational)> {
        multi_indices(self.dim, self.rank())
            .zip(&self.data)
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect()
    }

    /// First index (0-based) where the tensors differ.
    pub fn first_difference(&self, other: &Tensor) -> Option<(Vec<usize>, Rational, Rational)> {
        assert_eq!(self.data.len(), other.data.len(), "tensor shape mismatch");
        multi_indices(self.dim, self.rank())
            .zip(self.data.iter().zip(&other.data))
            .find(|(_, (a, b))| a != b)
            .map(|(i, (a, b))| (i, a.clone(), b.clone()))
    }
}

/// All multi-indices of length `rank` over `0..dim`, lexicographic.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for slot in (0..rank).rev() {
            idx[slot] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

/// Formats a 0-based index as 1-based digits (`(0, 1)` → `12`), or comma
/// separated when `dim > 9`.
pub fn index_label(idx: &[usize]) -> String {
    if idx.iter().all(|&i| i < 9) {
        idx.iter().map(|i| (i + 1).to_string()).collect()
    } else {
        idx.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
