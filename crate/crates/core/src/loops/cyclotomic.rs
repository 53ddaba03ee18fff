//! The cyclotomic field Q(zeta_12), which holds every 4th and 6th root of unity.
//!
//! Elements are `a0 + a1 z + a2 z^2 + a3 z^3` reduced modulo the 12th cyclotomic
//! polynomial `z^4 - z^2 + 1`. Complex conjugation sends `z` to `z^-1 = z - z^3`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic12([BigRational; 4]);

impl Cyclotomic12 {
    pub fn new(coeffs: [BigRational; 4]) -> Self {
        Cyclotomic12(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.0
    }

    /// The primitive root `z = e^{2 pi i / 12}`.
    pub fn zeta() -> Self {
        let mut c = Self::zero().0;
        c[1] = BigRational::one();
        Cyclotomic12(c)
    }

    /// `e^{2 pi i k / 12}`.
    pub fn root_of_unity(k: i64) -> Self {
        Self::zeta().unimodular_pow(k.rem_euclid(12))
    }

    /// `e^{2 pi i k / order}` for `order` dividing 12.
    pub fn root_of_order(order: u32, k: i64) -> Option<Self> {
        if order == 0 || 12 % order != 0 {
            return None;
        }
        Some(Self::root_of_unity(k * i64::from(12 / order)))
    }

    pub fn i() -> Self {
        Self::root_of_unity(3)
    }

    pub fn from_gaussian(z: &Complex<BigRational>) -> Self {
        let mut c = Self::zero().0;
        c[0] = z.re.clone();
        c[3] = z.im.clone();
        Cyclotomic12(c)
    }

    pub fn rational(r: BigRational) -> Self {
        let mut c = Self::zero().0;
        c[0] = r;
        Cyclotomic12(c)
    }
}

impl Zero for Cyclotomic12 {
    fn zero() -> Self {
        Cyclotomic12(std::array::from_fn(|_| BigRational::zero()))
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic12 {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Add for Cyclotomic12 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Cyclotomic12(std::array::from_fn(|k| &self.0[k] + &rhs.0[k]))
    }
}

impl Sub for Cyclotomic12 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Cyclotomic12(std::array::from_fn(|k| &self.0[k] - &rhs.0[k]))
    }
}

impl Neg for Cyclotomic12 {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic12(self.0.map(|c| -c))
    }
}

impl Mul for Cyclotomic12 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut prod: [BigRational; 7] = std::array::from_fn(|_| BigRational::zero());
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
        for k in (4..7).rev() {
            let c = std::mem::replace(&mut prod[k], BigRational::zero());
            prod[k - 2] += &c;
            prod[k - 4] -= c;
        }
        Cyclotomic12(std::array::from_fn(|k| prod[k].clone()))
    }
}

impl Coefficient for Cyclotomic12 {
    type Real = BigRational;

    fn conj(&self) -> Self {
        // z^-1 = z - z^3, z^-2 = 1 - z^2, z^-3 = -z^3
        let [a0, a1, a2, a3] = &self.0;
        Cyclotomic12([a0 + a2, a1.clone(), -a2, -a1 - a3])
    }

    fn from_real(r: BigRational) -> Self {
        Self::rational(r)
    }

    fn is_unimodular(&self) -> bool {
        (self.clone() * self.conj()).is_one()
    }
}

impl fmt::Display for Cyclotomic12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
