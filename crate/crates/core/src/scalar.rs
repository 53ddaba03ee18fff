//! Real scalar types the numeric layers are generic over.
//!
//! Exact computations run over [`BigRational`]; floating-point ones over `f64`
//! (or `f32`). Every comparison goes through [`Scalar::approx_eq`] /
//! [`Scalar::approx_le`], which are exact for rationals and use a fixed
//! slack for floats.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Float comparison slack for weight and invariance checks.
pub const EPS_CMP: f64 = 1e-10;

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    /// Slack used by `approx_*`; zero for exact types.
    fn tolerance() -> Self;

    /// `e^beta`, or `None` when it has no exact representation in `Self`.
    fn exp_beta(beta: &Beta) -> Option<Self>;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance()
    }

    fn approx_le(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tolerance()
    }

    /// Parse a weight literal ("1/3", "0.25", "2").
    fn parse_literal(s: &str) -> Result<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        EPS_CMP
    }

    fn exp_beta(beta: &Beta) -> Option<Self> {
        Some(match beta {
            Beta::Zero => 1.0,
            Beta::LogRational(r) => r.to_f64()?,
            Beta::Real(b) => b.exp(),
        })
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: f64 = a.trim().parse().map_err(|_| literal_error(s))?;
            let den: f64 = b.trim().parse().map_err(|_| literal_error(s))?;
            if den == 0.0 {
                return Err(literal_error(s));
            }
            return Ok(num / den);
        }
        s.parse().map_err(|_| literal_error(s))
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn exp_beta(beta: &Beta) -> Option<Self> {
        f64::exp_beta(beta).map(|v| v as f32)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        f64::parse_literal(s).map(|v| v as f32)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn exp_beta(beta: &Beta) -> Option<Self> {
        match beta {
            Beta::Zero => Some(BigRational::one()),
            Beta::LogRational(r) => Some(r.clone()),
            Beta::Real(b) if *b == 0.0 => Some(BigRational::one()),
            Beta::Real(_) => None,
        }
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_exact(s)
    }
}

fn literal_error(s: &str) -> Error {
    Error::Parse {
        line: 0,
        message: format!("invalid number literal {s:?}"),
    }
}

/// Parse "a/b", an integer, or a finite decimal ("0.125", "-2.5e-3") exactly.
pub fn parse_exact(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(literal_error(s));
    }
    if let Some((a, b)) = s.split_once('/') {
        let num = parse_exact_decimal(a.trim()).ok_or_else(|| literal_error(s))?;
        let den = parse_exact_decimal(b.trim()).ok_or_else(|| literal_error(s))?;
        if den.is_zero() {
            return Err(literal_error(s));
        }
        return Ok(num / den);
    }
    parse_exact_decimal(s).ok_or_else(|| literal_error(s))
}

fn parse_exact_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&all_digits).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// True when the literal is written as a decimal rather than a fraction or integer.
pub fn is_decimal_literal(s: &str) -> bool {
    let s = s.trim();
    s.contains('.') || s.contains(['e', 'E'])
}

/// Inverse temperature, kept symbolic where `e^beta` is rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Beta {
    Zero,
    /// `beta = ln r` for a positive rational `r`.
    LogRational(BigRational),
    Real(f64),
}

impl Beta {
    pub fn value(&self) -> f64 {
        match self {
            Beta::Zero => 0.0,
            Beta::LogRational(r) => r.to_f64().unwrap_or(f64::NAN).ln(),
            Beta::Real(b) => *b,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Beta::Zero => true,
            Beta::LogRational(r) => r.is_one(),
            Beta::Real(b) => *b == 0.0,
        }
    }

    /// Parse "0", "ln:2", "ln:3/2" or a decimal.
    pub fn parse(s: &str) -> Result<Beta> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("ln:") {
            let r = parse_exact(r)?;
            if !r.is_positive() {
                return Err(literal_error(s));
            }
            return Ok(if r.is_one() { Beta::Zero } else { Beta::LogRational(r) });
        }
        let b: f64 = s.parse().map_err(|_| literal_error(s))?;
        Ok(if b == 0.0 { Beta::Zero } else { Beta::Real(b) })
    }
}

impl Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Beta::Zero => write!(f, "0"),
            Beta::LogRational(r) => write!(f, "ln({r})"),
            Beta::Real(b) => write!(f, "{b}"),
        }
    }
}
