//! Spectral analysis of vertex matrices and the KMS conditions at the
//! critical inverse temperature `ln rho(D)`.

mod exact;
mod spectrum;
mod state;

pub use spectrum::{
    critical_beta, eigenspace_dimension, kms_exists_at_critical, perron_vector, spectral_radius,
    spectral_radius_detailed, PerronVector, SpectralRadius, SpectralReport, EPS_SPEC, EXACT_DIM_CAP,
    POWER_ITERATION_CAP, WARN_NOT_STRICTLY_POSITIVE,
};
pub use state::{check_invariance, check_subinvariance, tau_eval_word, GeneralWord, KmsWeightVector, Path};
