use qsym_core::scalar::{is_decimal_literal, Beta, Scalar};
use qsym_core::{BigRational, ExactWeights, FloatWeights};

use crate::commands::CliError;
use crate::{Mode, WeightArgs};

pub enum Weights {
    Exact(ExactWeights),
    Float(FloatWeights),
}

impl Weights {
    pub fn mode(&self) -> &'static str {
        match self {
            Weights::Exact(_) => "exact",
            Weights::Float(_) => "float",
        }
    }
}

/// Exact unless a decimal literal shows up; `--exact-decimal` reads those exactly too.
fn resolve_exact(args: &WeightArgs, literals: &[&str]) -> Result<bool, CliError> {
    let has_decimal = literals.iter().any(|s| is_decimal_literal(s));
    Ok(match args.mode {
        Mode::Float => false,
        Mode::Exact if has_decimal && !args.exact_decimal => {
            return Err(CliError::Usage("decimal weights in exact mode need --exact-decimal".into()))
        }
        Mode::Exact => true,
        Mode::Auto => !has_decimal || args.exact_decimal,
    })
}

pub fn parse(args: &WeightArgs, beta: Beta) -> Result<Weights, CliError> {
    let literals: Vec<&str> = args.weights.split(',').map(str::trim).collect();
    if let Some(n) = args.n {
        if n != literals.len() {
            return Err(CliError::Usage(format!("--n {n} but {} weights given", literals.len())));
        }
    }
    if resolve_exact(args, &literals)? {
        let values = literals
            .iter()
            .map(|s| BigRational::parse_literal(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Weights::Exact(ExactWeights::new(beta, values)?))
    } else {
        let values = literals.iter().map(|s| f64::parse_literal(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(Weights::Float(FloatWeights::new(beta, values)?))
    }
}
