//! Dense 10x10 complex matrices, the working type of the representation.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::Real;

pub const DIM: usize = 10;

/// 10-component complex column vector.
pub type Vector10<T> = [Complex<T>; DIM];

#[derive(Clone, Copy, PartialEq)]
pub struct Matrix10<T> {
    m: [[Complex<T>; DIM]; DIM],
}

impl<T: Real> std::fmt::Debug for Matrix10<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix10 [")?;
        for row in &self.m {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    if z.im == T::zero() {
                        format!("{:>5}", z.re)
                    } else {
                        format!("{:>5}", format!("{}{:+}i", z.re, z.im))
                    }
                })
                .collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<T: Real> Default for Matrix10<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> Matrix10<T> {
    pub fn zero() -> Self {
        Self {
            m: [[Complex::zero(); DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..DIM {
            out.m[i][i] = Complex::one();
        }
        out
    }

    pub fn from_real_diagonal(diag: [T; DIM]) -> Self {
        let mut out = Self::zero();
        for (i, d) in diag.into_iter().enumerate() {
            out.m[i][i] = Complex::new(d, T::zero());
        }
        out
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut out = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                out.m[i][j] = f(i, j);
            }
        }
        out
    }

    pub fn rows(&self) -> &[[Complex<T>; DIM]; DIM] {
        &self.m
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.m[i][j] * s)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].conj())
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `self * other + other * self`
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn frobenius_norm(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest absolute column sum (induced 1-norm).
    pub fn norm_one(&self) -> T {
        (0..DIM)
            .map(|j| (0..DIM).fold(T::zero(), |acc, i| acc + self.m[i][j].norm()))
            .fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| i == j || self.m[i][j].is_zero()))
    }

    pub fn diagonal(&self) -> Vector10<T> {
        std::array::from_fn(|i| self.m[i][i])
    }

    pub fn mul_vec(&self, v: &Vector10<T>) -> Vector10<T> {
        std::array::from_fn(|i| {
            self.m[i]
                .iter()
                .zip(v)
                .fold(Complex::zero(), |acc, (a, b)| acc + *a * *b)
        })
    }

    pub fn trace(&self) -> Complex<T> {
        (0..DIM).fold(Complex::zero(), |acc, i| acc + self.m[i][i])
    }

    /// Matrix exponential by scaling and squaring of a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let norm = self.norm_one();
        let mut squarings = 0u32;
        if norm > T::lit(0.5) {
            squarings = (norm / T::lit(0.5)).log2().ceil().to_u32().unwrap_or(0);
        }
        let scaled = self.scale_real(T::lit(0.5).powi(squarings as i32));

        let mut sum = Self::identity();
        let mut term = Self::identity();
        for k in 1..=30 {
            term = (term * scaled).scale_real(T::one() / T::from_usize_lossy(k));
            sum += term;
            if term.norm_one() <= T::epsilon() * sum.norm_one() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }

    /// Nonzero entries as (row, col, value), for repeated application.
    pub fn to_sparse(&self) -> SparseMatrix10<T> {
        let mut entries = Vec::new();
        for i in 0..DIM {
            for j in 0..DIM {
                if !self.m[i][j].is_zero() {
                    entries.push((i, j, self.m[i][j]));
                }
            }
        }
        SparseMatrix10 { entries }
    }
}

impl<T> Index<(usize, usize)> for Matrix10<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.m[i][j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix10<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.m[i][j]
    }
}

impl<T: Real> Mul for Matrix10<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..DIM {
                    out.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for Matrix10<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] + rhs.m[i][j])
    }
}

impl<T: Real> AddAssign for Matrix10<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<T: Real> Sub for Matrix10<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] - rhs.m[i][j])
    }
}

impl<T: Real> Neg for Matrix10<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.m[i][j])
    }
}

/// Sparse copy of a [`Matrix10`]; only used on hot paths.
#[derive(Clone, Debug)]
pub struct SparseMatrix10<T> {
    entries: Vec<(usize, usize, Complex<T>)>,
}

impl<T: Real> SparseMatrix10<T> {
    /// `out += self * v`
    #[inline]
    pub fn mul_vec_acc(&self, v: &Vector10<T>, out: &mut Vector10<T>) {
        for &(i, j, a) in &self.entries {
            out[i] += a * v[j];
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}
