//! One-dimensional representations: a permutation preserving the blocks together
//! with unimodular phases, held exactly over the Gaussian rationals.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::magic::{build_qblock_unchecked, check_permutation, MagicUnitary};
use super::matrix::Real;
use super::rep::{apply_coaction, QRep};
use super::report::Check;
use crate::error::{Error, Result};
use crate::kms::KmsWeightVector;
use crate::loops::{format_coefficient, Coefficient, ExactCoefficient, LoopElement, LoopMonomial};
use crate::scalar::Scalar;

/// `q_νμ = z_ν δ_{ν,σ(μ)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalPoint {
    /// 0-based, `sigma[μ] = σ(μ)`.
    sigma: Vec<usize>,
    /// Phase carried by each target loop.
    phases: Vec<ExactCoefficient>,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Random exact unimodular number: `±1`, `±i` or a Pythagorean `(a + bi)/c`.
pub fn random_exact_phase<R: Rng + ?Sized>(rng: &mut R) -> ExactCoefficient {
    const TRIPLES: [(i64, i64, i64); 5] = [(1, 0, 1), (3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];
    let (a, b, c) = TRIPLES[rng.random_range(0..TRIPLES.len())];
    let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
    let sa = if rng.random_bool(0.5) { 1 } else { -1 };
    let sb = if rng.random_bool(0.5) { 1 } else { -1 };
    Complex::new(q(sa * a, c), q(sb * b, c))
}

impl ClassicalPoint {
    pub fn new(sigma: Vec<usize>, phases: Vec<ExactCoefficient>) -> Result<Self> {
        check_permutation(&sigma)?;
        if phases.len() != sigma.len() {
            return Err(Error::SizeMismatch(sigma.len(), phases.len()));
        }
        if phases.iter().any(|z| !z.norm_sqr().is_one()) {
            return Err(Error::NotUnimodular);
        }
        Ok(ClassicalPoint { sigma, phases })
    }

    pub fn identity(n: usize) -> Self {
        ClassicalPoint {
            sigma: (0..n).collect(),
            phases: vec![Complex::one(); n],
        }
    }

    /// Uniform permutation within each block (1-based loops) and random exact phases.
    pub fn random<R: Rng + ?Sized>(vertex_blocks: &[Vec<usize>], rng: &mut R) -> Self {
        let n: usize = vertex_blocks.iter().map(Vec::len).sum();
        let mut sigma = vec![0; n];
        for block in vertex_blocks {
            let mut image = block.clone();
            image.shuffle(rng);
            for (&from, &to) in block.iter().zip(&image) {
                sigma[from - 1] = to - 1;
            }
        }
        let phases = (0..n).map(|_| random_exact_phase(rng)).collect();
        ClassicalPoint { sigma, phases }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn phases(&self) -> &[ExactCoefficient] {
        &self.phases
    }

    /// `σ` maps every block into itself.
    pub fn is_compatible(&self, vertex_blocks: &[Vec<usize>]) -> bool {
        let n: usize = vertex_blocks.iter().map(Vec::len).sum();
        n == self.n()
            && vertex_blocks
                .iter()
                .all(|b| b.iter().all(|&v| b.contains(&(self.sigma[v - 1] + 1))))
    }

    /// The `n x n` matrix `Q[ν][μ] = q_νμ`.
    pub fn matrix(&self) -> Vec<Vec<ExactCoefficient>> {
        let n = self.n();
        let mut out = vec![vec![Complex::zero(); n]; n];
        for mu in 0..n {
            let nu = self.sigma[mu];
            out[nu][mu] = self.phases[nu].clone();
        }
        out
    }

    /// Point whose matrix is `Q_self Q_other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::IncompatiblePoints(format!("sizes {} and {}", self.n(), other.n())));
        }
        let sigma: Vec<usize> = other.sigma.iter().map(|&s| self.sigma[s]).collect();
        let mut phases = vec![Complex::zero(); self.n()];
        for (mu, &mid) in other.sigma.iter().enumerate() {
            phases[sigma[mu]] = self.phases[sigma[mu]].clone() * other.phases[mid].clone();
        }
        Ok(ClassicalPoint { sigma, phases })
    }

    /// The point with matrix `Q*`.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut sigma = vec![0; n];
        for (mu, &nu) in self.sigma.iter().enumerate() {
            sigma[nu] = mu;
        }
        let phases = (0..n).map(|mu| self.phases[self.sigma[mu]].conj()).collect();
        ClassicalPoint { sigma, phases }
    }

    /// `S_μ^a ↦ z_σ(μ)^a S_σ(μ)^a`.
    pub fn act(&self, x: &LoopElement<ExactCoefficient>) -> Result<LoopElement<ExactCoefficient>> {
        if x.n() != self.n() {
            return Err(Error::SizeMismatch(self.n(), x.n()));
        }
        let terms = x.terms().map(|(w, c)| {
            let nu = self.sigma[w.loop_index - 1];
            let z = self.phases[nu].unimodular_pow(w.exponent);
            (LoopMonomial::new(nu + 1, w.exponent), c.clone() * z)
        });
        LoopElement::from_terms(x.n(), terms)
    }

    /// The same point as a `d = 1` float representation on the given blocks.
    pub fn to_qrep<T: Real>(&self, vertex_blocks: &[Vec<usize>]) -> Result<QRep<T>> {
        if !self.is_compatible(vertex_blocks) {
            return Err(Error::IncompatiblePoints("permutation does not preserve the blocks".into()));
        }
        let f = |z: &ExactCoefficient| Complex::new(T::from_f64(z.re.to_f64_lossy()), T::from_f64(z.im.to_f64_lossy()));
        let blocks = vertex_blocks
            .iter()
            .map(|vs| {
                let local: Vec<usize> = vs
                    .iter()
                    .map(|&v| vs.iter().position(|&w| w == self.sigma[v - 1] + 1).unwrap())
                    .collect();
                let u = MagicUnitary::<T>::classical(&local)?;
                let m = vs.len();
                let phases: Vec<Complex<T>> = (0..m * m).map(|k| f(&self.phases[vs[k / m] - 1])).collect();
                Ok(build_qblock_unchecked(&u, &phases))
            })
            .collect::<Result<Vec<_>>>()?;
        QRep::new(blocks, vertex_blocks.to_vec())
    }
}

/// Image of `x` under the coaction formula evaluated at an arbitrary scalar matrix:
/// `S_μ^a ↦ Σ_ξ Q[ξ][μ]^a S_ξ^a`, with `Q Q̄` in degree zero.
pub fn act_by_matrix(
    q: &[Vec<ExactCoefficient>],
    x: &LoopElement<ExactCoefficient>,
) -> Result<LoopElement<ExactCoefficient>> {
    let n = x.n();
    if q.len() != n {
        return Err(Error::SizeMismatch(n, q.len()));
    }
    let mut terms = Vec::new();
    for (w, c) in x.terms() {
        for (xi, row) in q.iter().enumerate() {
            let z = &row[w.loop_index - 1];
            if z.is_zero() {
                continue;
            }
            let factor = match w.exponent {
                0 => z.clone() * z.conj(),
                a if a > 0 => Coefficient::pow(z, a as u32),
                a => Coefficient::pow(&z.conj(), a.unsigned_abs() as u32),
            };
            terms.push((LoopMonomial::new(xi + 1, w.exponent), c.clone() * factor));
        }
    }
    LoopElement::from_terms(n, terms)
}

pub fn exact_matmul(a: &[Vec<ExactCoefficient>], b: &[Vec<ExactCoefficient>]) -> Vec<Vec<ExactCoefficient>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Complex::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

fn exact_deviation(x: &LoopElement<ExactCoefficient>, y: &LoopElement<ExactCoefficient>) -> Result<f64> {
    let diff = x.sub(y)?;
    Ok(diff
        .terms()
        .map(|(_, c)| c.re.abs().to_f64_lossy().max(c.im.abs().to_f64_lossy()))
        .fold(0.0, f64::max))
}

/// Action at `Q_g Q_h` against `g ∘ h` on every basis word of degree at most `max_degree`.
pub fn verify_classical_group_law(
    vertex_blocks: &[Vec<usize>],
    g: &ClassicalPoint,
    h: &ClassicalPoint,
    max_degree: u32,
) -> Result<Check> {
    for p in [g, h] {
        if !p.is_compatible(vertex_blocks) {
            return Err(Error::IncompatiblePoints(format!(
                "point {:?} does not preserve blocks {vertex_blocks:?}",
                p.sigma
            )));
        }
    }
    let n = g.n();
    let product = exact_matmul(&g.matrix(), &h.matrix());
    let d = i64::from(max_degree);
    let mut dev = 0.0f64;
    for mu in 1..=n {
        for a in -d..=d {
            let x = LoopElement::monomial(n, LoopMonomial::new(mu, a))?;
            let lhs = act_by_matrix(&product, &x)?;
            let rhs = g.act(&h.act(&x)?)?;
            dev = dev.max(exact_deviation(&lhs, &rhs)?);
        }
    }
    Ok(Check::new("classical_group_law", dev, 0.0))
}

/// A classical point breaking τ-preservation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockWitness {
    /// 1-based `σ(μ)` for each loop `μ`.
    pub permutation: Vec<usize>,
    pub phases: Vec<String>,
    /// The word whose image violates `(τ ⊗ id)α(x) = τ(x)`.
    pub word: String,
    pub deviation: f64,
    pub weight_gap: f64,
    /// `weight_gap` times the smallest nonzero `‖q q*‖`, which is 1 at classical points.
    pub lower_bound: f64,
}

/// Search transpositions inside each block for the worst violation of
/// `Σ_ν c_ν q_νμ q_νμ* = c_μ`.
pub fn find_block_witness<S: Scalar>(vertex_blocks: &[Vec<usize>], c: &KmsWeightVector<S>) -> Result<Option<BlockWitness>> {
    let n: usize = vertex_blocks.iter().map(Vec::len).sum();
    if c.len() != n {
        return Err(Error::SizeMismatch(n, c.len()));
    }
    let weights: Vec<f64> = c.weights().iter().map(Scalar::to_f64_lossy).collect();
    let mut best: Option<BlockWitness> = None;
    for block in vertex_blocks {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.swap(a - 1, b - 1);
                let point = ClassicalPoint::new(sigma, vec![Complex::one(); n])?;
                let rep = point.to_qrep::<f64>(vertex_blocks)?;
                let x = LoopElement::<ExactCoefficient>::projection(n, a)?;
                let image = apply_coaction(&rep, &x, 0)?.tau_slice(&weights);
                let deviation = (image.get(0, 0) - Complex::new(weights[a - 1], 0.0)).norm();
                let gap = (weights[a - 1] - weights[b - 1]).abs();
                if deviation > best.as_ref().map_or(0.0, |w| w.deviation) {
                    best = Some(BlockWitness {
                        permutation: point.sigma.iter().map(|s| s + 1).collect(),
                        phases: point.phases.iter().map(format_coefficient).collect(),
                        word: format!("p{a}"),
                        deviation,
                        weight_gap: gap,
                        lower_bound: gap,
                    });
                }
            }
        }
    }
    Ok(best)
}
