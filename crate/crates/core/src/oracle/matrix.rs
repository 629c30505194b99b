//! Dense row-major complex matrices, just enough for the oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Builds from row-major entries; `rows.len()` must be a square.
    pub fn from_rows(n: usize, rows: &[C64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: rows.len(),
            });
        }
        Ok(Self {
            n,
            data: rows.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap_or(col);
            if a[(pivot, col)].norm() <= 1e-300 * scale {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                b.swap_rows(pivot, col);
            }
            let inv = a[(col, col)].inv();
            for row in col + 1..n {
                let f = a[(row, col)] * inv;
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in col..n {
                    let v = a[(col, k)];
                    a[(row, k)] -= f * v;
                }
                for k in 0..n {
                    let v = b[(col, k)];
                    b[(row, k)] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let inv = a[(col, col)].inv();
            for k in 0..n {
                let mut acc = b[(col, k)];
                for j in col + 1..n {
                    acc -= a[(col, j)] * b[(j, k)];
                }
                b[(col, k)] = acc * inv;
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        let n = self.n;
        for k in 0..n {
            self.data.swap(i * n + k, j * n + k);
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// Solves `a x = b` for a vector `b`.
pub fn solve_vector(a: &CMatrix, b: &[C64]) -> Result<Vec<C64>> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.len(),
        });
    }
    let rhs = CMatrix::from_fn(n, |i, j| if j == 0 { b[i] } else { C64::new(0.0, 0.0) });
    let x = a.solve(&rhs)?;
    Ok((0..n).map(|i| x[(i, 0)]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn matmul_and_adjoint() {
        let a =
            CMatrix::from_rows(2, &[c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.5)]).unwrap();
        let i = CMatrix::identity(2);
        assert_eq!(a.matmul(&i).unwrap(), a);
        let h = a.matmul(&a.adjoint()).unwrap();
        assert!(h.hermitian_defect() < 1e-15);
        assert!((a.trace() - c(4.0, 1.5)).norm() < 1e-15);
        assert!(a.matmul(&CMatrix::identity(3)).is_err());
    }

    #[test]
    fn solve_recovers_inverse() {
        let a = CMatrix::from_fn(4, |i, j| {
            c(1.0 / (i + j + 1) as f64, if i == j { 0.3 } else { 0.0 })
        });
        let x = a.solve(&CMatrix::identity(4)).unwrap();
        let e = a.matmul(&x).unwrap().sub(&CMatrix::identity(4)).unwrap();
        assert!(e.max_abs() < 1e-10);
        assert_eq!(
            CMatrix::zeros(3).solve(&CMatrix::identity(3)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn vector_solve_needs_pivoting() {
        let a =
            CMatrix::from_rows(2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let x = solve_vector(&a, &[c(2.0, 0.0), c(3.0, 1.0)]).unwrap();
        assert_eq!(x, vec![c(3.0, 1.0), c(2.0, 0.0)]);
    }

    #[test]
    fn norms() {
        let a =
            CMatrix::from_rows(2, &[c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(a.norm_1(), 6.0);
        assert_eq!(a.max_abs(), 4.0);
    }
}
