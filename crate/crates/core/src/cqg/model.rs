//! Seeded random model representations and the end-to-end verification run.

use std::f64::consts::PI;

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::classical::{find_block_witness, verify_classical_group_law, BlockWitness, ClassicalPoint};
use super::magic::{build_qblock, check_hinf_relations, check_magic_relations, MagicUnitary, QBlock};
use super::matrix::{CMatrix, Real};
use super::rep::{verify_homomorphism, verify_tau_preservation, verify_tau_preservation_forced, QRep};
use super::report::{Check, RelationReport, VERIFY_TOL};
use crate::error::{Error, Result};
use crate::kms::KmsWeightVector;
use crate::partitions::{classify_weights, Partition};
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_MAX_DEGREE: u32 = 6;
/// Largest operator dimension the model builders produce.
pub const MAX_MODEL_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Classical,
    TwoProjection,
    Mixed,
}

fn random_permutation<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.shuffle(rng);
    p
}

/// Operator direct sum of `d` random permutation models.
fn classical_model<T: Real, R: Rng + ?Sized>(m: usize, d: usize, rng: &mut R) -> Result<MagicUnitary<T>> {
    let mut u = MagicUnitary::classical(&random_permutation(m, rng))?;
    for _ in 1..d {
        u = u.direct_sum(&MagicUnitary::classical(&random_permutation(m, rng))?)?;
    }
    Ok(u)
}

/// A 4 x 4 two-projection model of dimension `d` in `2..=4`, angle kept away from
/// the commuting cases.
fn two_projection_model<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<MagicUnitary<T>> {
    let mut angle = || T::from_f64(rng.random_range(0.2..PI / 2.0 - 0.2));
    let base = MagicUnitary::two_projections(angle());
    match d {
        2 => Ok(base),
        3 => base.direct_sum(&classical_model(4, 1, rng)?),
        4 => base.direct_sum(&MagicUnitary::two_projections(angle())),
        _ => Err(Error::InvalidModel(format!("two-projection model needs 2 <= d <= 4, got {d}"))),
    }
}

/// Magic unitary model of size `m` and dimension `d`: classical for `m <= 3` or
/// `d = 1`, two-projection for `m = 4`, a permuted index sum of both for `m >= 5`.
/// Models with `d > 1` are conjugated by a random unitary.
pub fn model_magic_unitary<T: Real, R: Rng + ?Sized>(
    m: usize,
    d: usize,
    rng: &mut R,
) -> Result<(MagicUnitary<T>, ModelKind)> {
    if m == 0 || d == 0 || d > MAX_MODEL_DIM {
        return Err(Error::InvalidModel(format!("unsupported model size m = {m}, d = {d}")));
    }
    let (u, kind) = if m <= 3 || d == 1 {
        (classical_model(m, d, rng)?, ModelKind::Classical)
    } else if m == 4 {
        (two_projection_model(d, rng)?, ModelKind::TwoProjection)
    } else {
        let sum = two_projection_model(d, rng)?.index_direct_sum(&classical_model(m - 4, d, rng)?)?;
        (sum.permute_indices(&random_permutation(m, rng))?, ModelKind::Mixed)
    };
    let u = if d > 1 { u.conjugate(&CMatrix::random_unitary(d, rng)) } else { u };
    Ok((u, kind))
}

pub fn random_phases<T: Real, R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<Complex<T>> {
    (0..count)
        .map(|_| Complex::from_polar(T::one(), T::from_f64(rng.random_range(0.0..2.0 * PI))))
        .collect()
}

pub fn model_qblock<T: Real, R: Rng + ?Sized>(m: usize, d: usize, rng: &mut R) -> Result<(QBlock<T>, ModelKind)> {
    let (u, kind) = model_magic_unitary(m, d, rng)?;
    let phases = random_phases(m * m, rng);
    Ok((build_qblock(&u, &phases)?, kind))
}

/// One model block per vertex block; `d = 2` as soon as any block has four or more loops.
pub fn model_rep<T: Real, R: Rng + ?Sized>(vertex_blocks: &[Vec<usize>], rng: &mut R) -> Result<(QRep<T>, ModelKind)> {
    let d = if vertex_blocks.iter().any(|b| b.len() >= 4) { 2 } else { 1 };
    let mut kind = ModelKind::Classical;
    let mut blocks = Vec::with_capacity(vertex_blocks.len());
    for vs in vertex_blocks {
        let (b, k) = model_qblock(vs.len(), d, rng)?;
        kind = kind.max(k);
        blocks.push(b);
    }
    Ok((QRep::new(blocks, vertex_blocks.to_vec())?, kind))
}

/// Off-block generators vanish in `((q_νμ))`.
pub fn block_diagonal_deviation<T: Real>(rep: &QRep<T>) -> f64 {
    let g = rep.global_matrix();
    let d = rep.d();
    let block_of = |v: usize| rep.vertex_blocks().iter().position(|b| b.contains(&v)).unwrap();
    let mut dev = 0.0f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if block_of(i / d + 1) != block_of(j / d + 1) {
                dev = dev.max(g.get(i, j).norm().as_f64());
            }
        }
    }
    dev
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub max_degree: u32,
    pub tol: f64,
    /// Model a single block over all loops regardless of the weights.
    pub force_single_block: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            max_degree: DEFAULT_MAX_DEGREE,
            tol: VERIFY_TOL,
            force_single_block: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    /// Partition of the model representation.
    pub partition: Partition,
    pub weight_partition: Partition,
    pub model: ModelKind,
    pub d: usize,
    #[serde(rename = "L")]
    pub max_degree: u32,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BlockWitness>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Classify the weights, build a seeded model on the resulting blocks and run every check:
/// magic and `H^∞+` relations, block structure, homomorphism, τ-preservation (with a classical
/// witness search) and the classical group law.
pub fn verify_action<S: Scalar>(c: &KmsWeightVector<S>, eps: &S, opts: &VerifyOptions) -> Result<VerificationReport> {
    let class = classify_weights(c, eps)?;
    let n = c.len();
    let vertex_blocks = if opts.force_single_block {
        vec![(1..=n).collect()]
    } else {
        class.vertex_blocks()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (rep, model) = model_rep::<f64, _>(&vertex_blocks, &mut rng)?;
    let tol = opts.tol;

    let mut relations = RelationReport { checks: Vec::new() };
    for (b, vs) in rep.blocks().iter().zip(&vertex_blocks) {
        // the magic unitary behind q = c u is recovered as u = q q*
        let u = MagicUnitary::from_entries(
            b.m(),
            b.d(),
            (0..vs.len() * vs.len())
                .map(|k| {
                    let q = b.entry(k / vs.len(), k % vs.len());
                    q.matmul(&q.adjoint())
                })
                .collect(),
        )?;
        relations.merge(&check_magic_relations(&u, tol), tol);
        relations.merge(&check_hinf_relations(b, tol), tol);
    }
    let mut checks = relations.checks;
    checks.push(Check::new("block_diagonal", block_diagonal_deviation(&rep), tol));
    checks.extend(verify_homomorphism(&rep, opts.trials, opts.max_degree, tol, &mut rng)?.checks);

    let tau = if opts.force_single_block {
        verify_tau_preservation_forced(&rep, c, opts.trials, opts.max_degree, tol, &mut rng)?
    } else {
        verify_tau_preservation(&rep, c, opts.trials, opts.max_degree, tol, &mut rng)?
    };
    checks.extend(tau.checks);
    let witness = find_block_witness(&vertex_blocks, c)?;
    let witness_dev = witness.as_ref().map_or(0.0, |w| w.deviation);
    checks.push(Check::new("tau_classical_points", witness_dev, tol));
    let witness = witness.filter(|w| w.deviation > tol);

    let group_degree = opts.max_degree.min(4);
    let mut law = 0.0f64;
    let mut inverse = 0.0f64;
    for _ in 0..opts.trials {
        let g = ClassicalPoint::random(&vertex_blocks, &mut rng);
        let h = ClassicalPoint::random(&vertex_blocks, &mut rng);
        law = law.max(verify_classical_group_law(&vertex_blocks, &g, &h, group_degree)?.max_deviation);
        let gi = g.inverse();
        inverse = inverse.max(verify_classical_group_law(&vertex_blocks, &g, &gi, group_degree)?.max_deviation);
        if g.compose(&gi)? != ClassicalPoint::identity(n) {
            inverse = inverse.max(1.0);
        }
    }
    checks.push(Check::new("classical_group_law", law, 0.0));
    checks.push(Check::new("classical_inverse", inverse, 0.0));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        seed: opts.seed,
        partition: rep.partition().clone(),
        weight_partition: class.partition().clone(),
        model,
        d: rep.d(),
        max_degree: opts.max_degree,
        checks,
        witness,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn exact(ws: &[(i64, i64)]) -> KmsWeightVector<BigRational> {
        KmsWeightVector::at_zero(ws.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn zero() -> BigRational {
        q(0, 1)
    }

    fn quick() -> VerifyOptions {
        VerifyOptions {
            trials: 10,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn models_by_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for (m, d, want) in [
            (1, 1, ModelKind::Classical),
            (3, 2, ModelKind::Classical),
            (4, 2, ModelKind::TwoProjection),
            (4, 3, ModelKind::TwoProjection),
            (4, 4, ModelKind::TwoProjection),
            (6, 2, ModelKind::Mixed),
            (7, 4, ModelKind::Mixed),
        ] {
            let (b, kind) = model_qblock::<f64, _>(m, d, &mut rng).unwrap();
            assert_eq!(kind, want);
            assert_eq!((b.m(), b.d()), (m, d));
            assert!(check_hinf_relations(&b, 1e-12).passed());
        }
        assert!(model_qblock::<f64, _>(4, 5, &mut rng).is_err());
    }

    #[test]
    fn noncommutative_models_do_not_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in [4, 5, 8] {
            let (u, _) = model_magic_unitary::<f64, _>(m, 2, &mut rng).unwrap();
            assert!(u.noncommutativity() > 1e-3, "m = {m}");
        }
    }

    #[test]
    fn uniform_four_passes() {
        let c = exact(&[(1, 4); 4]);
        let r = verify_action(&c, &zero(), &quick()).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.model, ModelKind::TwoProjection);
        assert_eq!(r.d, 2);
        assert!(r.witness.is_none());
    }

    #[test]
    fn single_loop_passes() {
        let c = exact(&[(1, 1)]);
        let r = verify_action(&c, &zero(), &quick()).unwrap();
        assert!(r.pass);
        assert_eq!(r.partition, Partition::new(vec![1]).unwrap());
    }

    #[test]
    fn forced_single_block_fails_with_witness() {
        let c = exact(&[(1, 3), (2, 3)]);
        let opts = VerifyOptions {
            force_single_block: true,
            ..quick()
        };
        let r = verify_action(&c, &zero(), &opts).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert!(w.deviation >= 1e-3);
        assert_eq!(r.partition, Partition::new(vec![2]).unwrap());
        assert_eq!(r.weight_partition, Partition::new(vec![1, 1]).unwrap());
    }

    #[test]
    fn float_weights_and_report_shape() {
        let c = KmsWeightVector::at_zero(vec![0.3, 0.3, 0.2, 0.2]).unwrap();
        let r = verify_action(&c, &1e-9, &quick()).unwrap();
        assert!(r.pass, "{r:#?}");
        let doc = serde_json::to_value(&r).unwrap();
        assert_eq!(doc["partition"], serde_json::json!([2, 2]));
        assert_eq!(doc["L"], 6);
        assert_eq!(doc["model"], "classical");
        assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
        assert!(doc.get("witness").is_none());
    }

    #[test]
    fn same_seed_same_report() {
        let c = exact(&[(1, 6), (1, 6), (1, 6), (1, 6), (1, 6), (1, 6)]);
        let a = verify_action(&c, &zero(), &quick()).unwrap();
        let b = verify_action(&c, &zero(), &quick()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.model, ModelKind::Mixed);
        assert!(a.pass, "{a:#?}");
    }
}
