use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::graph::DirectedMultigraph;
use crate::kms::{GeneralWord, KmsWeightVector, Path};

/// Normal-form word `S_i^a` (`a > 0`), `p_i` (`a = 0`) or `(S_i^*)^{-a}` (`a < 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopMonomial {
    /// 1-based loop index.
    pub loop_index: usize,
    pub exponent: i64,
}

impl LoopMonomial {
    pub const fn new(loop_index: usize, exponent: i64) -> Self {
        LoopMonomial { loop_index, exponent }
    }

    pub const fn projection(loop_index: usize) -> Self {
        Self::new(loop_index, 0)
    }

    pub const fn generator(loop_index: usize) -> Self {
        Self::new(loop_index, 1)
    }

    pub const fn generator_adjoint(loop_index: usize) -> Self {
        Self::new(loop_index, -1)
    }

    pub const fn adjoint(self) -> Self {
        Self::new(self.loop_index, -self.exponent)
    }

    pub fn degree(self) -> u32 {
        self.exponent.unsigned_abs() as u32
    }

    fn check(self, n: usize) -> Result<Self> {
        if self.loop_index == 0 || self.loop_index > n {
            return Err(Error::LoopOutOfRange {
                index: self.loop_index,
                n,
            });
        }
        Ok(self)
    }

    /// Product of two words: distinct loops are orthogonal, equal loops add exponents.
    pub fn product(self, other: Self) -> Option<Self> {
        (self.loop_index == other.loop_index)
            .then(|| Self::new(self.loop_index, self.exponent + other.exponent))
    }
}

/// Finite linear combination of normal-form words in the algebra of `n` disjoint loops.
///
/// Stored sparsely with no zero coefficients, so equality of elements is equality
/// of term maps. The unit is `p_1 + ... + p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopElement<C> {
    n: usize,
    terms: BTreeMap<LoopMonomial, C>,
}

pub fn mono_multiply<C: Coefficient>(n: usize, x: LoopMonomial, y: LoopMonomial) -> Result<LoopElement<C>> {
    x.check(n)?;
    y.check(n)?;
    Ok(match x.product(y) {
        Some(m) => LoopElement::monomial(n, m)?,
        None => LoopElement::zero(n),
    })
}

impl<C: Coefficient> LoopElement<C> {
    pub fn zero(n: usize) -> Self {
        LoopElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(n: usize, m: LoopMonomial) -> Result<Self> {
        Self::term(n, m, C::one())
    }

    pub fn term(n: usize, m: LoopMonomial, c: C) -> Result<Self> {
        let mut out = Self::zero(n);
        out.add_term(m.check(n)?, c);
        Ok(out)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (LoopMonomial, C)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            out.add_term(m.check(n)?, c);
        }
        Ok(out)
    }

    pub fn projection(n: usize, i: usize) -> Result<Self> {
        Self::monomial(n, LoopMonomial::projection(i))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Self::monomial(n, LoopMonomial::generator(i))
    }

    pub fn unit(n: usize) -> Self {
        Self::from_terms(n, (1..=n).map(|i| (LoopMonomial::projection(i), C::one())))
            .expect("indices in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LoopMonomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &LoopMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Largest `|a|` over the support; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: LoopMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, c.clone() * x.clone());
        }
        out
    }

    /// Bilinear extension of the word product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let mut out = Self::zero(self.n);
        for (x, a) in &self.terms {
            for (y, b) in other.terms.range(LoopMonomial::new(x.loop_index, i64::MIN)..=LoopMonomial::new(x.loop_index, i64::MAX)) {
                let m = x.product(*y).expect("same loop");
                out.add_term(m, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.adjoint(), c.conj());
        }
        out
    }

    pub fn is_projection(&self) -> bool {
        self.adjoint() == *self && self.multiply(self).is_ok_and(|sq| sq == *self)
    }

    /// The KMS functional at `beta = 0`: `tau(S_i^a) = delta_{a,0} c_i`.
    pub fn tau(&self, weights: &KmsWeightVector<C::Real>) -> Result<C> {
        if !weights.beta().is_zero() {
            return Err(Error::NonzeroBeta);
        }
        if weights.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: weights.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent == 0)
            .fold(C::zero(), |acc, (m, c)| {
                acc + c.clone() * C::from_real(weights.weights()[m.loop_index - 1].clone())
            }))
    }

    /// Gauge action: the coefficient of `S_i^a` is multiplied by `z^a`.
    pub fn gauge_action(&self, z: &C) -> Result<Self> {
        if !z.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let mut powers: BTreeMap<i64, C> = BTreeMap::new();
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let zk = powers.entry(m.exponent).or_insert_with(|| z.unimodular_pow(m.exponent));
            out.add_term(*m, c.clone() * zk.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LoopElement<D> {
        let mut out = LoopElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }
}

/// Collapse `S_mu S_nu^*` on the loops graph to its normal form `(i, |mu| - |nu|)`.
pub fn embed_general_word<C: Coefficient>(n: usize, word: &GeneralWord) -> Result<LoopElement<C>> {
    let g = DirectedMultigraph::loops(n)?;
    let target = word.target(&g)?;
    let len = |p: &Path| p.len() as i64;
    LoopElement::monomial(n, LoopMonomial::new(target, len(&word.mu) - len(&word.nu)))
}

/// Exact Gaussian-rational coefficients.
pub type ExactCoefficient = Complex<BigRational>;

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.random_range(-4..=4);
    let den: i64 = rng.random_range(1..=3);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Random element with small Gaussian-rational coefficients, degree at most
/// `max_degree` and at most `max_terms` terms.
pub fn random_exact_element<R: Rng + ?Sized>(
    n: usize,
    max_degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> LoopElement<ExactCoefficient> {
    let count = rng.random_range(1..=max_terms.max(1));
    let d = i64::from(max_degree);
    let terms: Vec<_> = (0..count)
        .map(|_| {
            let m = LoopMonomial::new(rng.random_range(1..=n), rng.random_range(-d..=d));
            let re = small_rational(rng);
            let im = if rng.random_bool(0.5) { small_rational(rng) } else { BigRational::zero() };
            (m, Complex::new(re, im))
        })
        .collect();
    LoopElement::from_terms(n, terms).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::Cyclotomic12;
    use num_traits::One;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type E = LoopElement<ExactCoefficient>;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn c(re: i64, im: i64) -> ExactCoefficient {
        Complex::new(q(re, 1), q(im, 1))
    }

    fn mono(n: usize, i: usize, a: i64) -> E {
        E::monomial(n, LoopMonomial::new(i, a)).unwrap()
    }

    #[test]
    fn mono_multiply_examples() {
        let p1: E = mono_multiply(2, LoopMonomial::new(1, 2), LoopMonomial::new(1, -2)).unwrap();
        assert_eq!(p1, mono(2, 1, 0));
        let z: E = mono_multiply(2, LoopMonomial::new(1, 1), LoopMonomial::new(2, 1)).unwrap();
        assert!(z.is_zero());
        let s: E = mono_multiply(2, LoopMonomial::new(1, 0), LoopMonomial::new(1, 5)).unwrap();
        assert_eq!(s, mono(2, 1, 5));
        assert!(matches!(
            mono_multiply::<ExactCoefficient>(2, LoopMonomial::new(3, 0), LoopMonomial::new(1, 0)),
            Err(Error::LoopOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn multiply_examples() {
        let p = mono(2, 1, 0).add(&mono(2, 2, 0)).unwrap();
        assert_eq!(p.multiply(&p).unwrap(), p);
        let s = mono(2, 1, 1).add(&mono(2, 2, 1)).unwrap();
        assert_eq!(s.multiply(&s.adjoint()).unwrap(), E::unit(2));
        let two_s1 = mono(2, 1, 1).scale(&c(2, 0));
        let three_s1 = mono(2, 1, 1).scale(&c(3, 0));
        assert_eq!(two_s1.multiply(&three_s1).unwrap(), mono(2, 1, 2).scale(&c(6, 0)));
        assert_eq!(mono(2, 1, 0).multiply(&mono(3, 1, 0)), Err(Error::SizeMismatch(2, 3)));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(mono(2, 1, 3).adjoint(), mono(2, 1, -3));
        assert_eq!(mono(2, 2, 0).scale(&c(0, 1)).adjoint(), mono(2, 2, 0).scale(&c(0, -1)));
        let x = mono(2, 1, 1).add(&mono(2, 2, -1).scale(&c(0, 2))).unwrap();
        let expected = mono(2, 1, -1).add(&mono(2, 2, 1).scale(&c(0, -2))).unwrap();
        assert_eq!(x.adjoint(), expected);
    }

    #[test]
    fn cancellation_keeps_sparse_form() {
        let x = mono(2, 1, 1).sub(&mono(2, 1, 1)).unwrap();
        assert!(x.is_zero());
        assert_eq!(x, E::zero(2));
    }

    #[test]
    fn tau_examples() {
        let w = KmsWeightVector::at_zero(vec![q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(mono(2, 2, 0).tau(&w).unwrap(), c(0, 0) + Complex::new(q(2, 3), q(0, 1)));
        assert!(mono(2, 1, 4).tau(&w).unwrap().is_zero());
        assert!(E::unit(2).tau(&w).unwrap().is_one());
        let w3 = KmsWeightVector::<BigRational>::uniform(3);
        assert!(matches!(mono(2, 1, 0).tau(&w3), Err(Error::DimensionMismatch { .. })));
        let hot = KmsWeightVector::new(crate::scalar::Beta::LogRational(q(2, 1)), vec![q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(mono(2, 1, 0).tau(&hot), Err(Error::NonzeroBeta));
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(mono(2, 1, 3).gauge_action(&c(-1, 0)).unwrap(), mono(2, 1, 3).scale(&c(-1, 0)));
        let z = Complex::new(q(3, 5), q(4, 5));
        assert_eq!(mono(2, 2, 0).gauge_action(&z).unwrap(), mono(2, 2, 0));
        assert_eq!(mono(2, 2, -2).gauge_action(&c(0, 1)).unwrap(), mono(2, 2, -2).scale(&c(-1, 0)));
        assert_eq!(mono(2, 1, 1).gauge_action(&c(2, 0)), Err(Error::NotUnimodular));
        let cyc = mono(1, 1, 2).map_coefficients(Cyclotomic12::from_gaussian);
        let w = Cyclotomic12::root_of_order(6, 1).unwrap();
        assert_eq!(cyc.gauge_action(&w).unwrap().coefficient(&LoopMonomial::new(1, 2)), w.pow(2));
    }

    #[test]
    fn embed_examples() {
        let word = GeneralWord::new(Path::Edges(vec![1, 1]), Path::Edges(vec![1]));
        assert_eq!(embed_general_word::<ExactCoefficient>(2, &word).unwrap(), mono(2, 1, 1));
        let word = GeneralWord::new(Path::Edges(vec![2]), Path::Edges(vec![2]));
        assert_eq!(embed_general_word::<ExactCoefficient>(2, &word).unwrap(), mono(2, 2, 0));
        assert_eq!(embed_general_word::<ExactCoefficient>(3, &GeneralWord::vertex(3)).unwrap(), mono(3, 3, 0));
        let bad = GeneralWord::new(Path::Edges(vec![1]), Path::Edges(vec![2]));
        assert!(embed_general_word::<ExactCoefficient>(2, &bad).is_err());
    }

    #[test]
    fn projection_examples() {
        assert!(mono(3, 1, 0).add(&mono(3, 3, 0)).unwrap().is_projection());
        assert!(!mono(3, 1, 1).is_projection());
        assert!(!mono(3, 1, 0).scale(&Complex::new(q(1, 2), q(0, 1))).is_projection());
    }

    #[test]
    fn partial_isometry_law() {
        for i in 1..=4 {
            let s = mono(4, i, 1);
            assert_eq!(s.multiply(&s.adjoint().multiply(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn random_elements_respect_caps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_exact_element(3, 4, 5, &mut rng);
            assert!(x.degree() <= 4);
            assert!(x.len() <= 5);
        }
    }
}
