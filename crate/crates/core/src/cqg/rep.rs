use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use super::magic::QBlock;
use super::matrix::{CMatrix, Real};
use super::report::{worst, Check, RelationReport};
use crate::error::{Error, Result};
use crate::kms::KmsWeightVector;
use crate::loops::{random_exact_element, ExactCoefficient, LoopElement, LoopMonomial};
use crate::partitions::{classify_weights, Partition};
use crate::scalar::Scalar;

/// Block-diagonal family `q^(i)_νμ` over a partition of the loops.
#[derive(Debug, Clone, PartialEq)]
pub struct QRep<T> {
    partition: Partition,
    blocks: Vec<QBlock<T>>,
    vertex_blocks: Vec<Vec<usize>>,
    /// `location[v - 1] = (block, position within block)`.
    location: Vec<(usize, usize)>,
    d: usize,
}

impl<T: Real> QRep<T> {
    /// `vertex_blocks[i]` lists the 1-based loops of block `i`, in the order used by `blocks[i]`.
    pub fn new(blocks: Vec<QBlock<T>>, vertex_blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() != vertex_blocks.len() {
            return Err(Error::SizeMismatch(vertex_blocks.len(), blocks.len()));
        }
        let d = blocks.first().map(QBlock::d).ok_or_else(|| Error::InvalidModel("no blocks".into()))?;
        let n: usize = vertex_blocks.iter().map(Vec::len).sum();
        let mut location = vec![None; n];
        for (b, (block, vertices)) in blocks.iter().zip(&vertex_blocks).enumerate() {
            if block.m() != vertices.len() {
                return Err(Error::SizeMismatch(vertices.len(), block.m()));
            }
            if block.d() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: block.d(),
                });
            }
            for (k, &v) in vertices.iter().enumerate() {
                if v == 0 || v > n || location[v - 1].is_some() {
                    return Err(Error::InvalidModel(format!("vertex {v} missing or repeated in blocks")));
                }
                location[v - 1] = Some((b, k));
            }
        }
        let sizes: Vec<usize> = vertex_blocks.iter().map(Vec::len).collect();
        let partition = Partition::new(sizes.clone())?;
        if partition.blocks() != sizes.as_slice() {
            return Err(Error::InvalidModel("blocks must be ordered by decreasing size".into()));
        }
        Ok(QRep {
            partition,
            blocks,
            vertex_blocks,
            location: location.into_iter().map(Option::unwrap).collect(),
            d,
        })
    }

    /// Blocks on consecutive loops `1..=m1`, `m1+1..`, ...
    pub fn consecutive(blocks: Vec<QBlock<T>>) -> Result<Self> {
        let mut next = 1;
        let vertex_blocks = blocks
            .iter()
            .map(|b| {
                let v: Vec<usize> = (next..next + b.m()).collect();
                next += b.m();
                v
            })
            .collect();
        Self::new(blocks, vertex_blocks)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[QBlock<T>] {
        &self.blocks
    }

    pub fn vertex_blocks(&self) -> &[Vec<usize>] {
        &self.vertex_blocks
    }

    pub fn n(&self) -> usize {
        self.location.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Global generator `q_νμ` for 1-based loops; zero across blocks.
    pub fn generator(&self, nu: usize, mu: usize) -> CMatrix<T> {
        let ((bn, kn), (bm, km)) = (self.location[nu - 1], self.location[mu - 1]);
        if bn == bm {
            self.blocks[bn].entry(kn, km).clone()
        } else {
            CMatrix::zeros(self.d, self.d)
        }
    }

    /// Loops sharing a block with `mu`, paired with their positions.
    fn block_of(&self, mu: usize) -> (&QBlock<T>, &[usize], usize) {
        let (b, k) = self.location[mu - 1];
        (&self.blocks[b], &self.vertex_blocks[b], k)
    }

    /// `nd x nd` matrix `((q_νμ))` over all loops.
    pub fn global_matrix(&self) -> CMatrix<T> {
        CMatrix::from_blocks(self.n(), |i, j| self.generator(i + 1, j + 1))
    }
}

/// `α(x) = Σ S_ν^a ⊗ M_(ν,a)`, keyed by the normal-form word `S_ν^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoactionImage<T> {
    n: usize,
    d: usize,
    terms: BTreeMap<LoopMonomial, CMatrix<T>>,
}

impl<T: Real> CoactionImage<T> {
    pub fn zero(n: usize, d: usize) -> Self {
        CoactionImage {
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1 = Σ_ν p_ν ⊗ Id`.
    pub fn unit(n: usize, d: usize) -> Self {
        let mut out = Self::zero(n, d);
        for nu in 1..=n {
            out.terms.insert(LoopMonomial::projection(nu), CMatrix::identity(d));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LoopMonomial, &CMatrix<T>)> {
        self.terms.iter()
    }

    pub fn get(&self, nu: usize, a: i64) -> CMatrix<T> {
        self.terms
            .get(&LoopMonomial::new(nu, a))
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.d, self.d))
    }

    fn accumulate(&mut self, key: LoopMonomial, m: CMatrix<T>) {
        match self.terms.get_mut(&key) {
            Some(x) => *x = &*x + &m,
            None => {
                self.terms.insert(key, m);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &other.terms {
            out.accumulate(*k, m.clone());
        }
        out
    }

    /// `(S_ν^a ⊗ A)(S_ξ^b ⊗ B) = δ_νξ S_ν^(a+b) ⊗ AB`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                if let Some(xy) = x.product(*y) {
                    out.accumulate(xy, a.matmul(b));
                }
            }
        }
        out
    }

    /// `(S_ν^a ⊗ A)* = S_ν^(-a) ⊗ A*`.
    pub fn adjoint(&self) -> Self {
        CoactionImage {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(k, m)| (k.adjoint(), m.adjoint())).collect(),
        }
    }

    /// Largest Frobenius distance over the union of supports.
    pub fn distance(&self, other: &Self) -> f64 {
        let zero = CMatrix::zeros(self.d, self.d);
        let keys = self.terms.keys().chain(other.terms.keys());
        worst(keys.map(|k| {
            let a = self.terms.get(k).unwrap_or(&zero);
            let b = other.terms.get(k).unwrap_or(&zero);
            a.distance(b).as_f64()
        }))
    }

    /// `(τ ⊗ id)`: keep degree-zero terms weighted by `c_ν`.
    pub fn tau_slice(&self, weights: &[f64]) -> CMatrix<T> {
        self.terms
            .iter()
            .filter(|(k, _)| k.exponent == 0)
            .fold(CMatrix::zeros(self.d, self.d), |acc, (k, m)| {
                &acc + &m.scale(Complex::new(T::from_f64(weights[k.loop_index - 1]), T::zero()))
            })
    }
}

fn to_complex<T: Real, S: Scalar>(z: &Complex<S>) -> Complex<T> {
    Complex::new(T::from_f64(z.re.to_f64_lossy()), T::from_f64(z.im.to_f64_lossy()))
}

/// Closed-form image of a single word: `Σ_ν S_ν^a ⊗ q_νμ^a`, with adjoint powers for
/// `a < 0` and `q_νμ q_νμ*` for `a = 0`.
pub fn coaction_of_monomial<T: Real>(rep: &QRep<T>, w: LoopMonomial) -> CoactionImage<T> {
    let (block, vertices, mu) = rep.block_of(w.loop_index);
    let mut out = CoactionImage::zero(rep.n(), rep.d());
    for (k, &nu) in vertices.iter().enumerate() {
        let q = block.entry(k, mu);
        let m = match w.exponent {
            0 => q.matmul(&q.adjoint()),
            a if a > 0 => q.pow(a as u32),
            a => q.adjoint().pow(a.unsigned_abs() as u32),
        };
        if !m.is_zero() {
            out.accumulate(LoopMonomial::new(nu, w.exponent), m);
        }
    }
    out
}

pub fn apply_coaction<T: Real, S: Scalar>(
    rep: &QRep<T>,
    x: &LoopElement<Complex<S>>,
    max_degree: u32,
) -> Result<CoactionImage<T>> {
    if x.n() != rep.n() {
        return Err(Error::SizeMismatch(rep.n(), x.n()));
    }
    if x.degree() > max_degree {
        return Err(Error::DegreeTooLarge {
            degree: x.degree(),
            cap: max_degree,
        });
    }
    let mut out = CoactionImage::zero(rep.n(), rep.d());
    for (w, c) in x.terms() {
        let c = to_complex::<T, S>(c);
        for (k, m) in coaction_of_monomial(rep, *w).terms {
            out.accumulate(k, m.scale(c));
        }
    }
    Ok(out)
}

/// Letters `S_i`, `S_i*`, `p_i` for all loops.
pub fn letters(n: usize) -> Vec<LoopMonomial> {
    (1..=n)
        .flat_map(|i| [LoopMonomial::generator(i), LoopMonomial::generator_adjoint(i), LoopMonomial::projection(i)])
        .collect()
}

/// `α(xy) = α(x)α(y)` and `α(x*) = α(x)*` on all letter pairs and on `trials`
/// random pairs of degree at most `max_degree / 2`.
pub fn verify_homomorphism<T: Real, R: Rng + ?Sized>(
    rep: &QRep<T>,
    trials: usize,
    max_degree: u32,
    tol: f64,
    rng: &mut R,
) -> Result<RelationReport> {
    let n = rep.n();
    let mut pairs_dev = 0.0f64;
    let mut adjoint_dev = 0.0f64;
    for &a in &letters(n) {
        let xa = LoopElement::<ExactCoefficient>::monomial(n, a)?;
        let ia = apply_coaction(rep, &xa, max_degree)?;
        adjoint_dev = adjoint_dev.max(apply_coaction(rep, &xa.adjoint(), max_degree)?.distance(&ia.adjoint()));
        for &b in &letters(n) {
            let xb = LoopElement::<ExactCoefficient>::monomial(n, b)?;
            let lhs = apply_coaction(rep, &xa.multiply(&xb)?, max_degree)?;
            let rhs = ia.multiply(&apply_coaction(rep, &xb, max_degree)?);
            pairs_dev = pairs_dev.max(lhs.distance(&rhs));
        }
    }
    let unit_dev = apply_coaction(rep, &LoopElement::<ExactCoefficient>::unit(n), max_degree)?.distance(&CoactionImage::unit(n, rep.d()));

    let half = max_degree / 2;
    let mut random_dev = 0.0f64;
    for _ in 0..trials {
        let x = random_exact_element(n, half, 4, rng);
        let y = random_exact_element(n, half, 4, rng);
        let (ix, iy) = (apply_coaction(rep, &x, max_degree)?, apply_coaction(rep, &y, max_degree)?);
        random_dev = random_dev.max(apply_coaction(rep, &x.multiply(&y)?, max_degree)?.distance(&ix.multiply(&iy)));
        adjoint_dev = adjoint_dev.max(apply_coaction(rep, &x.adjoint(), max_degree)?.distance(&ix.adjoint()));
    }
    Ok(RelationReport {
        checks: vec![
            Check::new("homomorphism_letter_pairs", pairs_dev, tol),
            Check::new("homomorphism_random_products", random_dev, tol),
            Check::new("homomorphism_adjoint", adjoint_dev, tol),
            Check::new("homomorphism_unit", unit_dev, tol),
        ],
    })
}

fn weights_f64<S: Scalar>(c: &KmsWeightVector<S>) -> Vec<f64> {
    c.weights().iter().map(Scalar::to_f64_lossy).collect()
}

/// `Σ_ν c_ν q_νμ q_νμ* - c_μ Id`, worst over `μ`.
pub fn degree_zero_tau_deviation<T: Real>(rep: &QRep<T>, weights: &[f64]) -> f64 {
    let id = CMatrix::<T>::identity(rep.d());
    worst((1..=rep.n()).map(|mu| {
        let lhs = (1..=rep.n()).fold(CMatrix::zeros(rep.d(), rep.d()), |acc, nu| {
            let q = rep.generator(nu, mu);
            &acc + &q.matmul(&q.adjoint()).scale(Complex::new(T::from_f64(weights[nu - 1]), T::zero()))
        });
        lhs.distance(&id.scale(Complex::new(T::from_f64(weights[mu - 1]), T::zero()))).as_f64()
    }))
}

fn tau_value<S: Scalar>(x: &LoopElement<Complex<S>>, weights: &[f64]) -> Complex<f64> {
    x.terms()
        .filter(|(w, _)| w.exponent == 0)
        .fold(Complex::zero(), |acc, (w, c)| {
            acc + Complex::new(c.re.to_f64_lossy(), c.im.to_f64_lossy()) * weights[w.loop_index - 1]
        })
}

fn tau_deviation<T: Real, S: Scalar>(
    rep: &QRep<T>,
    x: &LoopElement<Complex<S>>,
    weights: &[f64],
    max_degree: u32,
) -> Result<f64> {
    let lhs = apply_coaction(rep, x, max_degree)?.tau_slice(weights);
    let t = tau_value(x, weights);
    let rhs = CMatrix::<T>::scalar(rep.d(), Complex::new(T::from_f64(t.re), T::from_f64(t.im)));
    Ok(lhs.distance(&rhs).as_f64())
}

/// Fails with [`Error::PartitionMismatch`] unless the weights are constant on the
/// blocks of `rep` and classify to the same partition.
pub fn check_tau_precondition<T: Real, S: Scalar>(rep: &QRep<T>, c: &KmsWeightVector<S>) -> Result<()> {
    if c.len() != rep.n() {
        return Err(Error::SizeMismatch(rep.n(), c.len()));
    }
    let eps = if S::EXACT { S::zero() } else { S::from_f64(crate::partitions::DEFAULT_GROUPING_EPS).unwrap() };
    let class = classify_weights(c, &eps)?;
    let constant = rep.vertex_blocks().iter().all(|vs| {
        vs.iter().all(|&v| {
            let diff = c.weights()[v - 1].clone() - c.weights()[vs[0] - 1].clone();
            diff.abs() <= eps
        })
    });
    if class.partition() != rep.partition() || !constant {
        return Err(Error::PartitionMismatch(format!(
            "weights classify to {} but the representation has blocks {:?}",
            class.partition(),
            rep.vertex_blocks()
        )));
    }
    Ok(())
}

/// `(τ ⊗ id)α(x) = τ(x) Id` on basis words and random elements, plus the explicit
/// degree-zero identity.
pub fn verify_tau_preservation<T: Real, S: Scalar, R: Rng + ?Sized>(
    rep: &QRep<T>,
    c: &KmsWeightVector<S>,
    trials: usize,
    max_degree: u32,
    tol: f64,
    rng: &mut R,
) -> Result<RelationReport> {
    check_tau_precondition(rep, c)?;
    verify_tau_preservation_forced(rep, c, trials, max_degree, tol, rng)
}

/// [`verify_tau_preservation`] without the partition precondition.
pub fn verify_tau_preservation_forced<T: Real, S: Scalar, R: Rng + ?Sized>(
    rep: &QRep<T>,
    c: &KmsWeightVector<S>,
    trials: usize,
    max_degree: u32,
    tol: f64,
    rng: &mut R,
) -> Result<RelationReport> {
    if c.len() != rep.n() {
        return Err(Error::SizeMismatch(rep.n(), c.len()));
    }
    if !c.beta().is_zero() {
        return Err(Error::NonzeroBeta);
    }
    let n = rep.n();
    let weights = weights_f64(c);
    let d = i64::from(max_degree);
    let mut basis = 0.0f64;
    for mu in 1..=n {
        for a in -d..=d {
            let x = LoopElement::<Complex<S>>::monomial(n, LoopMonomial::new(mu, a))?;
            basis = basis.max(tau_deviation(rep, &x, &weights, max_degree)?);
        }
    }
    let mut random = 0.0f64;
    for _ in 0..trials {
        let x = random_exact_element(n, max_degree, 6, rng);
        random = random.max(tau_deviation(rep, &x, &weights, max_degree)?);
    }
    Ok(RelationReport {
        checks: vec![
            Check::new("tau_degree_zero_identity", degree_zero_tau_deviation(rep, &weights), tol),
            Check::new("tau_basis_words", basis, tol),
            Check::new("tau_random_elements", random, tol),
        ],
    })
}
