use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Coefficient ring of the loop algebra: a commutative *-ring containing the reals.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Real: Scalar;

    fn conj(&self) -> Self;

    fn from_real(r: Self::Real) -> Self;

    /// `|z| = 1`, exactly for exact rings and within tolerance for floats.
    fn is_unimodular(&self) -> bool;

    fn pow(&self, k: u32) -> Self {
        let (mut out, mut base, mut k) = (Self::one(), self.clone(), k);
        while k > 0 {
            if k & 1 == 1 {
                out = out * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        out
    }

    /// `z^k` for any integer `k`, using `conj(z)` for negative powers of a unimodular `z`.
    fn unimodular_pow(&self, k: i64) -> Self {
        if k >= 0 {
            self.pow(k as u32)
        } else {
            self.conj().pow((-k) as u32)
        }
    }
}

impl<S: Scalar> Coefficient for Complex<S> {
    type Real = S;

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_real(r: S) -> Self {
        Complex::new(r, S::zero())
    }

    fn is_unimodular(&self) -> bool {
        self.norm_sqr().approx_eq(&S::one())
    }
}
