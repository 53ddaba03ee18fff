//! Finite-dimensional models of the quantum symmetry generators and checks of the
//! relations they must satisfy.
//!
//! A block of size `m` is modelled by `q_νμ = c_νμ u_νμ` with `u` a magic unitary of
//! `d x d` matrices and `c` unimodular. Several blocks sit on disjoint sets of loops,
//! with zero generators between them. The coaction on the loop algebra is evaluated in
//! closed form, `α(S_μ^a) = Σ_ν S_ν^a ⊗ q_νμ^a`, since words on distinct loops
//! multiply to zero.

mod classical;
mod magic;
mod matrix;
mod model;
mod rep;
mod report;

pub use classical::{
    act_by_matrix, exact_matmul, find_block_witness, random_exact_phase, verify_classical_group_law, BlockWitness,
    ClassicalPoint,
};
pub use magic::{
    build_qblock, build_qblock_unchecked, check_hinf_relations, check_magic_relations, magic_unitary_classical,
    magic_unitary_two_projections, MagicUnitary, QBlock,
};
pub use matrix::{CMatrix, Real};
pub use model::{
    block_diagonal_deviation, model_magic_unitary, model_qblock, model_rep, random_phases, verify_action, ModelKind,
    VerificationReport, VerifyOptions, DEFAULT_MAX_DEGREE, DEFAULT_SEED, DEFAULT_TRIALS, MAX_MODEL_DIM,
};
pub use rep::{
    apply_coaction, check_tau_precondition, coaction_of_monomial, degree_zero_tau_deviation, letters,
    verify_homomorphism, verify_tau_preservation, verify_tau_preservation_forced, CoactionImage, QRep,
};
pub use report::{Check, RelationReport, CONSTRUCTION_TOL, FORCED_FAILURE_THRESHOLD, VERIFY_TOL};
