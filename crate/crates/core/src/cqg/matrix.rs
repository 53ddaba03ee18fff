use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, One, Zero};
use rand::Rng;

/// Real field underlying the float matrix models.
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite")
    }
}

impl<T: Float + FloatConst + Debug + Send + Sync + 'static> Real for T {}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_fn(d, d, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn scalar(d: usize, z: Complex<T>) -> Self {
        Self::identity(d).scale(z)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        CMatrix { rows, cols, data }
    }

    /// Real matrix from nested rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, |i, j| Complex::new(T::from_f64(rows[i][j]), T::zero()))
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

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Complex<T>) {
        self.data[i * self.cols + j] = z;
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * z).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] = out.data[i * other.cols + j] + a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.matmul(self))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).fold(Complex::zero(), |a, b| a + b)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest singular value, by power iteration on `A* A`.
    pub fn operator_norm(&self) -> T {
        if self.data.iter().all(|z| z.is_zero()) {
            return T::zero();
        }
        let gram = self.adjoint().matmul(self);
        let n = gram.rows;
        let mut v: Vec<Complex<T>> = (0..n)
            .map(|k| Complex::new(T::one(), T::from_f64(0.1 + 0.37 * k as f64)))
            .collect();
        let mut lambda = T::zero();
        for _ in 0..500 {
            let w: Vec<Complex<T>> = (0..n)
                .map(|i| (0..n).fold(Complex::zero(), |acc, j| acc + gram.get(i, j) * v[j]))
                .collect();
            let norm = w.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
            if norm.is_zero() {
                break;
            }
            let next = (norm - lambda).abs() <= T::epsilon() * norm;
            lambda = norm;
            v = w.into_iter().map(|z| z / norm).collect();
            if next {
                break;
            }
        }
        lambda.sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        (self - other).frobenius_norm()
    }

    /// `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| match (i < self.rows, j < self.cols) {
            (true, true) => self.get(i, j),
            (false, false) => other.get(i - self.rows, j - self.cols),
            _ => Complex::zero(),
        })
    }

    /// Assemble an `m x m` grid of equally sized blocks.
    pub fn from_blocks(m: usize, blocks: impl Fn(usize, usize) -> CMatrix<T>) -> Self {
        let grid: Vec<CMatrix<T>> = (0..m * m).map(|k| blocks(k / m, k % m)).collect();
        let (r, c) = (grid[0].rows, grid[0].cols);
        Self::from_fn(m * r, m * c, |i, j| grid[(i / r) * m + j / c].get(i % r, j % c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Haar-like random unitary: Gram-Schmidt on a matrix with uniform entries.
    pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        loop {
            let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(d);
            let mut degenerate = false;
            for _ in 0..d {
                let mut v: Vec<Complex<T>> = (0..d)
                    .map(|_| {
                        Complex::new(
                            T::from_f64(rng.random_range(-1.0..1.0)),
                            T::from_f64(rng.random_range(-1.0..1.0)),
                        )
                    })
                    .collect();
                for u in &cols {
                    let dot = u.iter().zip(&v).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b);
                    for (x, y) in v.iter_mut().zip(u) {
                        *x = *x - *y * dot;
                    }
                }
                let norm = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
                if norm < T::from_f64(1e-6) {
                    degenerate = true;
                    break;
                }
                cols.push(v.into_iter().map(|z| z / norm).collect());
            }
            if !degenerate {
                return Self::from_fn(d, d, |i, j| cols[j][i]);
            }
        }
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, rhs: Self) -> CMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: Self) -> CMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        self.scale(-Complex::one())
    }
}
