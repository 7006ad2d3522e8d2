//! Dense square matrices over arbitrary-precision integers.
//!
//! Only what the symplectic layer needs: products, transposes, block
//! extraction and assembly, matrix-vector products and diagonals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer column vector.
pub type IntVector = Vec<BigInt>;

/// Row-major `n x n` integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length as
    /// the number of rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Some(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// The diagonal entries in order, `(s)_0`.
    pub fn diagonal(&self) -> IntVector {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The `k x k` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, k: usize) -> Self {
        Self::from_fn(k, |i, j| self.get(row + i, col + j).clone())
    }

    /// Assembles `(a b; c d)` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let g = a.n;
        debug_assert!(b.n == g && c.n == g && d.n == g);
        Self::from_fn(2 * g, |i, j| match (i < g, j < g) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - g).clone(),
            (false, true) => c.get(i - g, j).clone(),
            (false, false) => d.get(i - g, j - g).clone(),
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        debug_assert_eq!(v.len(), self.n);
        self.data
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// True iff every entry of `self - other` is divisible by `modulus`.
    pub fn congruent_mod(&self, other: &Self, modulus: &BigInt) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(x, y)| (x - y).is_multiple_of(modulus))
    }

    /// First entry `(i, j)` where `self` and `other` are not congruent.
    pub fn first_incongruence(&self, other: &Self, modulus: &BigInt) -> Option<(usize, usize)> {
        (0..self.n * self.n)
            .find(|&k| !(&self.data[k] - &other.data[k]).is_multiple_of(modulus))
            .map(|k| (k / self.n, k % self.n))
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            m.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        sign * &m[n * n - 1]
    }

    /// Adjugate matrix via cofactors; `self * adj = det * I`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, |i, j| {
            // cofactor (j, i)
            let minor = Self::from_fn(n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let d = minor.determinant();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }
}

pub fn dot(u: &[BigInt], v: &[BigInt]) -> BigInt {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

pub fn vec_add(u: &[BigInt], v: &[BigInt]) -> IntVector {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(u: &[BigInt], v: &[BigInt]) -> IntVector {
    u.iter().zip(v).map(|(x, y)| x - y).collect()
}

/// Quadratic form `u^T s v`.
pub fn bilinear(u: &[BigInt], s: &IntMatrix, v: &[BigInt]) -> BigInt {
    dot(u, &s.mul_vec(v))
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = rhs.get(k, j);
                    if !y.is_zero() {
                        out.data[i * n + j] += x * y;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        IntMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}
