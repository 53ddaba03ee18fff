use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::exact::{isolate_spectral_radius, nonnegative_extreme_rays, null_space, shifted};
use crate::error::{Error, Result};
use crate::graph::VertexMatrix;

/// Dimension up to which spectral quantities are computed exactly.
pub const EXACT_DIM_CAP: usize = 12;
/// Power-iteration convergence threshold and residual bound.
pub const EPS_SPEC: f64 = 1e-12;
pub const POWER_ITERATION_CAP: usize = 1_000_000;

pub const WARN_NOT_STRICTLY_POSITIVE: &str = "weight not strictly positive";

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    /// Present when the radius is an integer eigenvalue found by exact root isolation.
    pub exact: Option<BigInt>,
}

pub fn spectral_radius_detailed(d: &VertexMatrix) -> SpectralRadius {
    if d.dim() <= EXACT_DIM_CAP {
        let isolated = isolate_spectral_radius(d);
        return SpectralRadius {
            value: isolated.approx(),
            exact: isolated.exact,
        };
    }
    let (rho, _) = power_iteration(d);
    SpectralRadius { value: rho, exact: None }
}

pub fn spectral_radius(d: &VertexMatrix) -> f64 {
    spectral_radius_detailed(d).value
}

/// `ln rho(D)`, the critical inverse temperature.
pub fn critical_beta(d: &VertexMatrix) -> Result<f64> {
    let rho = spectral_radius(d);
    if rho <= 0.0 {
        return Err(Error::NoCriticalTemperature);
    }
    Ok(rho.ln())
}

/// Power iteration on `D + I`, which has `rho + 1` as its unique dominant eigenvalue.
/// Returns `(rho, v)` with `v >= 0`, `sum v = 1`.
fn power_iteration(d: &VertexMatrix) -> (f64, Vec<f64>) {
    let n = d.dim();
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 1.0;
    for _ in 0..POWER_ITERATION_CAP {
        let mut w: Vec<f64> = (0..n)
            .map(|i| v[i] + d.rows()[i].iter().zip(&v).map(|(&a, x)| a as f64 * x).sum::<f64>())
            .collect();
        lambda = w.iter().sum();
        for x in w.iter_mut() {
            *x /= lambda;
        }
        let change = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if change < EPS_SPEC * 1e-3 {
            break;
        }
    }
    (lambda - 1.0, v)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PerronVector {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl PerronVector {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            PerronVector::Exact(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            PerronVector::Float(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match self {
            PerronVector::Exact(v) => Some(v),
            PerronVector::Float(_) => None,
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        match self {
            PerronVector::Exact(v) => v.iter().all(|x| *x > BigRational::zero()),
            PerronVector::Float(v) => v.iter().all(|&x| x > 0.0),
        }
    }
}

/// Canonical nonnegative eigenvector for `rho(D)`, normalized to sum 1.
///
/// When `rho` is an integer and the dimension is small, this is the uniform
/// average of the normalized extreme rays of the nonnegative part of the
/// eigenspace, computed exactly.
pub fn perron_vector(d: &VertexMatrix) -> Option<PerronVector> {
    let rho = spectral_radius_detailed(d);
    let n = d.dim();
    if let Some(r) = &rho.exact {
        let a = shifted(d, r);
        let rays = if n <= EXACT_DIM_CAP {
            nonnegative_extreme_rays(&a, n)
        } else {
            sign_definite_basis(null_space(&a, n))
        };
        if !rays.is_empty() {
            let count = BigRational::from_integer(BigInt::from(rays.len()));
            let v = (0..n)
                .map(|j| rays.iter().map(|ray| &ray[j]).sum::<BigRational>() / &count)
                .collect();
            return Some(PerronVector::Exact(v));
        }
        if n <= EXACT_DIM_CAP {
            return None;
        }
    }
    let (_, v) = power_iteration(d);
    let rho_value = rho.value;
    let residual = (0..n)
        .map(|i| {
            let dv: f64 = d.rows()[i].iter().zip(&v).map(|(&a, x)| a as f64 * x).sum();
            (dv - rho_value * v[i]).abs()
        })
        .fold(0.0, f64::max);
    if v.iter().all(|&x| x >= 0.0) && residual <= 1e3 * EPS_SPEC * rho_value.max(1.0) {
        Some(PerronVector::Float(v))
    } else {
        None
    }
}

fn sign_definite_basis(basis: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let mut out = Vec::new();
    for v in basis {
        let total: BigRational = v.iter().sum();
        if total.is_zero() {
            return Vec::new();
        }
        let v: Vec<BigRational> = v.iter().map(|x| x / &total).collect();
        if v.iter().any(|x| *x < BigRational::zero()) {
            return Vec::new();
        }
        out.push(v);
    }
    out
}

/// Geometric multiplicity of `rho(D)`.
pub fn eigenspace_dimension(d: &VertexMatrix) -> usize {
    let rho = spectral_radius_detailed(d);
    let n = d.dim();
    match &rho.exact {
        Some(r) => null_space(&shifted(d, r), n).len(),
        None => n - numerical_rank(d, rho.value),
    }
}

fn numerical_rank(d: &VertexMatrix, rho: f64) -> usize {
    let n = d.dim();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| d.get(i, j) as f64 - if i == j { rho } else { 0.0 }).collect())
        .collect();
    let scale = a.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-9 * scale;
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else {
            break;
        };
        if a[p][c].abs() <= tol {
            continue;
        }
        a.swap(rank, p);
        for i in rank + 1..n {
            let f = a[i][c] / a[rank][c];
            for j in c..n {
                a[i][j] -= f * a[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

pub fn kms_exists_at_critical(d: &VertexMatrix) -> bool {
    perron_vector(d).is_some()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub rho: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_exact: Option<String>,
    pub critical_beta: Option<f64>,
    pub perron: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perron_exact: Option<Vec<String>>,
    pub eigenspace_dimension: usize,
    pub kms_exists_at_critical: bool,
    pub warnings: Vec<String>,
}

impl SpectralReport {
    pub fn new(d: &VertexMatrix) -> Self {
        let rho = spectral_radius_detailed(d);
        let perron = perron_vector(d);
        let mut warnings = Vec::new();
        if perron.as_ref().is_some_and(|p| !p.is_strictly_positive()) {
            warnings.push(WARN_NOT_STRICTLY_POSITIVE.to_string());
        }
        SpectralReport {
            rho: rho.value,
            rho_exact: rho.exact.as_ref().map(|r| r.to_string()),
            critical_beta: (rho.value > 0.0).then(|| rho.value.ln()),
            perron: perron.as_ref().map(PerronVector::to_f64),
            perron_exact: perron
                .as_ref()
                .and_then(|p| p.exact())
                .map(|v| v.iter().map(|x| x.to_string()).collect()),
            eigenspace_dimension: eigenspace_dimension(d),
            kms_exists_at_critical: perron.is_some(),
            warnings,
        }
    }
}
