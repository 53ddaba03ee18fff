use num_complex::Complex;
use num_traits::{One, Zero};

use super::matrix::{CMatrix, Real};
use super::report::{worst, Check, RelationReport, CONSTRUCTION_TOL};
use crate::error::{Error, Result};

pub(crate) fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidPermutation(format!("{sigma:?}")));
        }
    }
    Ok(())
}

/// `m x m` grid of `d x d` matrices, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MagicUnitary<T> {
    m: usize,
    d: usize,
    entries: Vec<CMatrix<T>>,
}

impl<T: Real> MagicUnitary<T> {
    /// Wrap entries without checking the relations; see [`check_magic_relations`].
    pub fn from_entries(m: usize, d: usize, entries: Vec<CMatrix<T>>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::SizeMismatch(m * m, entries.len()));
        }
        if let Some(bad) = entries.iter().find(|e| e.rows() != d || e.cols() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.rows().max(bad.cols()),
            });
        }
        Ok(MagicUnitary { m, d, entries })
    }

    /// Evaluation at a permutation (0-based, `sigma[j] = σ(j)`): `u_ij = δ_{i,σ(j)}`.
    pub fn classical(sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma)?;
        let m = sigma.len();
        let entries = (0..m * m)
            .map(|k| {
                let (i, j) = (k / m, k % m);
                CMatrix::scalar(1, if sigma[j] == i { Complex::one() } else { Complex::zero() })
            })
            .collect();
        Ok(MagicUnitary { m, d: 1, entries })
    }

    /// `blockdiag([[P, 1-P], [1-P, P]], [[Q, 1-Q], [1-Q, Q]])` with `P = diag(1, 0)`
    /// and `Q` its rotation by `theta`.
    pub fn two_projections(theta: T) -> Self {
        let p = CMatrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 0 {
                Complex::one()
            } else {
                Complex::zero()
            }
        });
        let (s, c) = theta.sin_cos();
        let q = CMatrix::from_fn(2, 2, |i, j| {
            let x = match (i, j) {
                (0, 0) => c * c,
                (1, 1) => s * s,
                _ => c * s,
            };
            Complex::new(x, T::zero())
        });
        let id = CMatrix::identity(2);
        let (np, nq) = (&id - &p, &id - &q);
        let zero = CMatrix::zeros(2, 2);
        let grid = [
            [&p, &np, &zero, &zero],
            [&np, &p, &zero, &zero],
            [&zero, &zero, &q, &nq],
            [&zero, &zero, &nq, &q],
        ];
        let entries = (0..16).map(|k| grid[k / 4][k % 4].clone()).collect();
        MagicUnitary { m: 4, d: 2, entries }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &CMatrix<T> {
        &self.entries[i * self.m + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, x: CMatrix<T>) {
        self.entries[i * self.m + j] = x;
    }

    /// Entrywise `u_ij ⊕ v_ij`, dimension `d + d'`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::SizeMismatch(self.m, other.m));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(MagicUnitary {
            m: self.m,
            d: self.d + other.d,
            entries,
        })
    }

    /// Block-diagonal grid `[[u, 0], [0, v]]` of size `m + m'`.
    pub fn index_direct_sum(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let m = self.m + other.m;
        let zero = CMatrix::zeros(self.d, self.d);
        let entries = (0..m * m)
            .map(|k| {
                let (i, j) = (k / m, k % m);
                match (i < self.m, j < self.m) {
                    (true, true) => self.entry(i, j).clone(),
                    (false, false) => other.entry(i - self.m, j - self.m).clone(),
                    _ => zero.clone(),
                }
            })
            .collect();
        Ok(MagicUnitary { m, d: self.d, entries })
    }

    /// `v_ij = u_{π(i) π(j)}`.
    pub fn permute_indices(&self, pi: &[usize]) -> Result<Self> {
        check_permutation(pi)?;
        if pi.len() != self.m {
            return Err(Error::SizeMismatch(self.m, pi.len()));
        }
        let m = self.m;
        let entries = (0..m * m).map(|k| self.entry(pi[k / m], pi[k % m]).clone()).collect();
        Ok(MagicUnitary { m, d: self.d, entries })
    }

    /// `W u_ij W*` for a unitary `W`.
    pub fn conjugate(&self, w: &CMatrix<T>) -> Self {
        let wa = w.adjoint();
        MagicUnitary {
            m: self.m,
            d: self.d,
            entries: self.entries.iter().map(|e| w.matmul(e).matmul(&wa)).collect(),
        }
    }

    /// Largest `‖[u_ij, u_kl]‖` in operator norm; zero iff the entries commute.
    pub fn noncommutativity(&self) -> f64 {
        let mut best = 0.0f64;
        for a in &self.entries {
            for b in &self.entries {
                best = best.max(a.commutator(b).operator_norm().as_f64());
            }
        }
        best
    }
}

pub fn magic_unitary_classical<T: Real>(sigma: &[usize]) -> Result<MagicUnitary<T>> {
    MagicUnitary::classical(sigma)
}

pub fn magic_unitary_two_projections<T: Real>(theta: T) -> MagicUnitary<T> {
    MagicUnitary::two_projections(theta)
}

/// Projection relations plus unit row and column sums, in Frobenius norm.
pub fn check_magic_relations<T: Real>(u: &MagicUnitary<T>, tol: f64) -> RelationReport {
    let (m, d) = (u.m, u.d);
    let id = CMatrix::identity(d);
    let idempotent = worst(u.entries.iter().map(|e| e.matmul(e).distance(e).as_f64()));
    let selfadjoint = worst(u.entries.iter().map(|e| e.adjoint().distance(e).as_f64()));
    let sum = |cells: &mut dyn Iterator<Item = &CMatrix<T>>| {
        cells.fold(CMatrix::zeros(d, d), |acc, e| &acc + e).distance(&id).as_f64()
    };
    let rows = worst((0..m).map(|i| sum(&mut (0..m).map(|j| u.entry(i, j)))));
    let cols = worst((0..m).map(|j| sum(&mut (0..m).map(|i| u.entry(i, j)))));
    RelationReport {
        checks: vec![
            Check::new("magic_idempotent", idempotent, tol),
            Check::new("magic_selfadjoint", selfadjoint, tol),
            Check::new("magic_row_sums", rows, tol),
            Check::new("magic_column_sums", cols, tol),
        ],
    }
}

/// `q_νμ = c_νμ u_νμ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBlock<T> {
    m: usize,
    d: usize,
    entries: Vec<CMatrix<T>>,
}

impl<T: Real> QBlock<T> {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entry(&self, nu: usize, mu: usize) -> &CMatrix<T> {
        &self.entries[nu * self.m + mu]
    }

    /// Replace one entry, bypassing every invariant. Meant for perturbation tests.
    pub fn with_entry(mut self, nu: usize, mu: usize, x: CMatrix<T>) -> Self {
        self.entries[nu * self.m + mu] = x;
        self
    }

    /// The `md x md` block matrix `((q_νμ))`.
    pub fn block_matrix(&self) -> CMatrix<T> {
        CMatrix::from_blocks(self.m, |i, j| self.entry(i, j).clone())
    }

    /// The `md x md` block matrix `((q_νμ*))`, entries adjointed in place.
    pub fn block_matrix_of_adjoints(&self) -> CMatrix<T> {
        CMatrix::from_blocks(self.m, |i, j| self.entry(i, j).adjoint())
    }
}

/// Multiply a magic unitary by unimodular phases (row-major `m x m`).
pub fn build_qblock<T: Real>(u: &MagicUnitary<T>, phases: &[Complex<T>]) -> Result<QBlock<T>> {
    if phases.len() != u.m * u.m {
        return Err(Error::SizeMismatch(u.m * u.m, phases.len()));
    }
    if phases.iter().any(|z| (z.norm().as_f64() - 1.0).abs() > CONSTRUCTION_TOL) {
        return Err(Error::NotUnimodular);
    }
    Ok(build_qblock_unchecked(u, phases))
}

/// As [`build_qblock`] without the modulus check.
pub fn build_qblock_unchecked<T: Real>(u: &MagicUnitary<T>, phases: &[Complex<T>]) -> QBlock<T> {
    QBlock {
        m: u.m,
        d: u.d,
        entries: u.entries.iter().zip(phases).map(|(e, &z)| e.scale(z)).collect(),
    }
}

/// Partial isometry, normality, block unitarity of `((q))` and `((q*))`, and
/// `q*_ξμ q_ξν = 0` for `μ != ν`.
pub fn check_hinf_relations<T: Real>(q: &QBlock<T>, tol: f64) -> RelationReport {
    let m = q.m;
    let partial = worst(q.entries.iter().map(|e| e.matmul(&e.adjoint()).matmul(e).distance(e).as_f64()));
    let normal = worst(
        q.entries
            .iter()
            .map(|e| e.matmul(&e.adjoint()).distance(&e.adjoint().matmul(e)).as_f64()),
    );
    let unitary = |b: CMatrix<T>| {
        let id = CMatrix::identity(b.rows());
        let ba = b.adjoint();
        b.matmul(&ba).distance(&id).as_f64().max(ba.matmul(&b).distance(&id).as_f64())
    };
    let mut orth = 0.0f64;
    for xi in 0..m {
        for mu in 0..m {
            for nu in 0..m {
                if mu != nu {
                    let p = q.entry(xi, mu).adjoint().matmul(q.entry(xi, nu));
                    orth = orth.max(p.frobenius_norm().as_f64());
                }
            }
        }
    }
    RelationReport {
        checks: vec![
            Check::new("hinf_partial_isometry", partial, tol),
            Check::new("hinf_normal", normal, tol),
            Check::new("hinf_block_unitary", unitary(q.block_matrix()), tol),
            Check::new("hinf_block_unitary_adjoints", unitary(q.block_matrix_of_adjoints()), tol),
            Check::new("hinf_column_orthogonality", orth, tol),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    type U = MagicUnitary<f64>;

    fn random_phases(m: usize, rng: &mut ChaCha8Rng) -> Vec<Complex<f64>> {
        (0..m * m).map(|_| Complex::from_polar(1.0, rng.random_range(0.0..2.0 * PI))).collect()
    }

    #[test]
    fn classical_examples() {
        let u = U::classical(&[0, 1, 2]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(u.entry(i, j).get(0, 0), Complex::new(want, 0.0));
            }
        }
        let t = U::classical(&[1, 0]).unwrap();
        assert_eq!(t.entry(0, 1).get(0, 0), Complex::one());
        assert_eq!(t.entry(0, 0).get(0, 0), Complex::zero());
        let r = check_magic_relations(&U::classical(&[2, 0, 3, 1]).unwrap(), 0.0);
        assert!(r.passed());
        assert_eq!(r.max_deviation(), 0.0);
        assert!(U::classical(&[0, 0]).is_err());
    }

    #[test]
    fn two_projection_examples() {
        let flat = U::two_projections(0.0);
        assert!(flat.noncommutativity() < 1e-15);
        let u = U::two_projections(PI / 4.0);
        let (p, q) = (u.entry(0, 0), u.entry(2, 2));
        assert!((p.commutator(q).operator_norm() - 0.5).abs() < 1e-12);
        assert!((u.noncommutativity() - 0.5).abs() < 1e-12);
        for theta in [0.0, 0.3, PI / 4.0, PI / 2.0, 2.0, 5.9] {
            let r = check_magic_relations(&U::two_projections(theta), 1e-14);
            assert!(r.get("magic_row_sums").unwrap().pass);
            assert!(r.get("magic_column_sums").unwrap().pass);
            assert!(check_magic_relations(&U::two_projections(theta), 1e-12).passed());
        }
    }

    #[test]
    fn corrupted_entry_fails() {
        let mut u = U::classical(&[1, 0, 2]).unwrap();
        let bumped = &u.entry(0, 0).clone() + &CMatrix::scalar(1, Complex::new(0.1, 0.0));
        u.set_entry(0, 0, bumped);
        let r = check_magic_relations(&u, 1e-12);
        assert!(!r.passed());
        assert!(r.max_deviation() >= 0.05);
    }

    #[test]
    fn qblock_examples() {
        let id = build_qblock(&U::classical(&[0, 1]).unwrap(), &[Complex::one(); 4]).unwrap();
        assert!(check_hinf_relations(&id, 0.0).passed());
        assert!(id.block_matrix().distance(&CMatrix::identity(2)) == 0.0);

        let z = [Complex::new(0.6, 0.8), Complex::new(0.0, -1.0)];
        let sigma = [1, 0];
        let phases: Vec<Complex<f64>> = (0..4).map(|k| z[k / 2]).collect();
        let q = build_qblock(&U::classical(&sigma).unwrap(), &phases).unwrap();
        for nu in 0..2 {
            for mu in 0..2 {
                let want = if nu == sigma[mu] { z[nu] } else { Complex::zero() };
                assert_eq!(q.entry(nu, mu).get(0, 0), want);
            }
        }
        assert!(check_hinf_relations(&q, 1e-15).passed());

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = U::two_projections(PI / 4.0);
        let q = build_qblock(&u, &random_phases(4, &mut rng)).unwrap();
        assert!(check_hinf_relations(&q, CONSTRUCTION_TOL).passed());
    }

    #[test]
    fn non_unimodular_phase_rejected() {
        let u = U::classical(&[0, 1]).unwrap();
        let mut phases = vec![Complex::one(); 4];
        phases[0] = Complex::new(1.5, 0.0);
        assert_eq!(build_qblock(&u, &phases), Err(Error::NotUnimodular));
        let q = build_qblock_unchecked(&u, &phases);
        let r = check_hinf_relations(&q, 1e-10);
        assert!(!r.get("hinf_partial_isometry").unwrap().pass);
    }

    #[test]
    fn sums_and_conjugation_preserve_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = U::two_projections(0.7);
        let b = U::two_projections(1.9);
        let big = a.direct_sum(&b).unwrap();
        assert_eq!(big.d(), 4);
        let c = U::classical(&[0, 2, 1]).unwrap().direct_sum(&U::classical(&[1, 2, 0]).unwrap()).unwrap();
        let mixed = a.index_direct_sum(&c).unwrap().permute_indices(&[3, 0, 6, 1, 5, 2, 4]).unwrap();
        let mixed = mixed.conjugate(&CMatrix::random_unitary(2, &mut rng));
        for u in [&big, &mixed] {
            assert!(check_magic_relations(u, CONSTRUCTION_TOL).passed());
            let q = build_qblock(u, &random_phases(u.m(), &mut rng)).unwrap();
            assert!(check_hinf_relations(&q, CONSTRUCTION_TOL).passed());
        }
        assert!(mixed.noncommutativity() > 0.1);
    }
}
