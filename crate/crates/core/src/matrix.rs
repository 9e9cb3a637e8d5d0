//! Dense row-major matrices over any [`RingElement`].

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::ring::RingElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: RingElement> Matrix<T> {
    /// Identity matrix whose entries live in the same ring as `like`.
    pub fn identity_like(n: usize, like: &T) -> Self {
        let zero = like.zero_like();
        let one = like.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let zero = entries[0].zero_like();
        let mut m = Matrix::from_fn(n, n, |_, _| zero.clone());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let zero = self.data[0].zero_like();
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = acc.add_ref(&a.mul_ref(b));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        *a == a.one_like()
                    } else {
                        a.is_zero()
                    }
                })
            })
    }

    /// Determinant by cofactor expansion; works over any commutative ring.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> T {
        match cols.len() {
            0 => self.data[0].one_like(),
            1 => self.get(row, cols[0]).clone(),
            2 => {
                let a = self.get(row, cols[0]).mul_ref(self.get(row + 1, cols[1]));
                let b = self.get(row, cols[1]).mul_ref(self.get(row + 1, cols[0]));
                a.sub_ref(&b)
            }
            _ => {
                let mut acc = self.data[0].zero_like();
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(row, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry.mul_ref(&self.minor_det(row + 1, &rest));
                    acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
                }
                acc
            }
        }
    }

    fn cofactor(&self, i: usize, j: usize) -> T {
        let n = self.rows;
        let sub = Matrix::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self.get(rr, cc).clone()
        });
        let d = if n == 1 { self.data[0].one_like() } else { sub.det() };
        if (i + j) % 2 == 0 {
            d
        } else {
            d.neg_ref()
        }
    }

    /// Inverse via the adjugate; `None` unless the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let det_inv = self.det().try_inverse()?;
        Some(self.inverse_with_det_inverse(&det_inv))
    }

    pub fn inverse_with_det_inverse(&self, det_inv: &T) -> Self {
        let n = self.rows;
        Matrix::from_fn(n, n, |i, j| self.cofactor(j, i).mul_ref(det_inv))
    }
}

impl<T: PartialOrd> PartialOrd for Matrix<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.rows, self.cols).cmp(&(other.rows, other.cols)) {
            Ordering::Equal => self.data.partial_cmp(&other.data),
            o => Some(o),
        }
    }
}

impl<T: Ord> Ord for Matrix<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }
}
