use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, VertexMatrix};
use crate::scalar::{Beta, Scalar};

/// Inverse temperature and vertex weights of a KMS state.
#[derive(Debug, Clone, PartialEq)]
pub struct KmsWeightVector<S> {
    beta: Beta,
    weights: Vec<S>,
}

impl<S: Scalar> KmsWeightVector<S> {
    /// Weights must be nonnegative and sum to 1.
    pub fn new(beta: Beta, weights: Vec<S>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::NotProbability("empty weight vector".into()));
        }
        for (k, w) in weights.iter().enumerate() {
            if !S::zero().approx_le(w) {
                return Err(Error::NotProbability(format!("weight {w} at vertex {} is negative", k + 1)));
            }
        }
        let total = weights.iter().fold(S::zero(), |acc, w| acc + w.clone());
        let slack = S::tolerance() * S::from_usize(weights.len()).unwrap_or_else(S::one);
        if (total.clone() - S::one()).abs() > slack {
            return Err(Error::NotProbability(format!("weights sum to {total}")));
        }
        Ok(KmsWeightVector { beta, weights })
    }

    /// Weights at `beta = 0`.
    pub fn at_zero(weights: Vec<S>) -> Result<Self> {
        Self::new(Beta::Zero, weights)
    }

    pub fn uniform(n: usize) -> Self {
        let w = S::one() / S::from_usize(n).expect("n fits the scalar type");
        KmsWeightVector {
            beta: Beta::Zero,
            weights: vec![w; n],
        }
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(|w| *w > S::tolerance())
    }

    /// Non-fatal diagnostics; a zero weight is a legitimate boundary state.
    pub fn warnings(&self) -> Vec<String> {
        if self.is_strictly_positive() {
            Vec::new()
        } else {
            vec![super::spectrum::WARN_NOT_STRICTLY_POSITIVE.to_string()]
        }
    }

    fn exp_beta(&self) -> Result<S> {
        S::exp_beta(&self.beta).ok_or_else(|| Error::InexactTemperature(self.beta.to_string()))
    }
}

fn apply<S: Scalar>(d: &VertexMatrix, w: &[S]) -> Result<Vec<S>> {
    if d.dim() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            found: w.len(),
        });
    }
    Ok(d.rows()
        .iter()
        .map(|row| {
            row.iter().zip(w).fold(S::zero(), |acc, (&a, x)| {
                acc + S::from_u64(a).expect("entry fits the scalar type") * x.clone()
            })
        })
        .collect())
}

/// `(D N)_i <= e^beta N_i` for every vertex.
pub fn check_subinvariance<S: Scalar>(d: &VertexMatrix, w: &KmsWeightVector<S>) -> Result<bool> {
    let dn = apply(d, w.weights())?;
    let e = w.exp_beta()?;
    Ok(dn.iter().zip(w.weights()).all(|(lhs, n)| lhs.approx_le(&(e.clone() * n.clone()))))
}

/// `D N = e^beta N`: the state factors through the graph algebra.
pub fn check_invariance<S: Scalar>(d: &VertexMatrix, w: &KmsWeightVector<S>) -> Result<bool> {
    let dn = apply(d, w.weights())?;
    let e = w.exp_beta()?;
    Ok(dn.iter().zip(w.weights()).all(|(lhs, n)| lhs.approx_eq(&(e.clone() * n.clone()))))
}

/// A finite path: either a vertex (length 0) or a nonempty edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Vertex(usize),
    Edges(Vec<usize>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Vertex(_) => 0,
            Path::Edges(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Validate against `g` and return `(source, target)`.
    pub fn endpoints(&self, g: &DirectedMultigraph) -> Result<(usize, usize)> {
        match self {
            Path::Vertex(v) => {
                if *v == 0 || *v > g.num_vertices() {
                    return Err(Error::VertexOutOfRange {
                        index: *v,
                        num_vertices: g.num_vertices(),
                    });
                }
                Ok((*v, *v))
            }
            Path::Edges(ids) => {
                let Some((&first, rest)) = ids.split_first() else {
                    return Err(Error::InvalidPath("empty edge sequence; use a vertex path".into()));
                };
                let first = g.edge(first)?;
                let mut target = first.target;
                for &id in rest {
                    let e = g.edge(id)?;
                    if e.source != target {
                        return Err(Error::InvalidPath(format!(
                            "edge {id} starts at vertex {} but the path is at vertex {target}",
                            e.source
                        )));
                    }
                    target = e.target;
                }
                Ok((first.source, target))
            }
        }
    }
}

/// The spanning element `S_mu S_nu^*` with `t(mu) = t(nu)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralWord {
    pub mu: Path,
    pub nu: Path,
}

impl GeneralWord {
    pub fn new(mu: Path, nu: Path) -> Self {
        GeneralWord { mu, nu }
    }

    /// The vertex projection `p_v`.
    pub fn vertex(v: usize) -> Self {
        GeneralWord::new(Path::Vertex(v), Path::Vertex(v))
    }

    /// Validate and return the common target vertex.
    pub fn target(&self, g: &DirectedMultigraph) -> Result<usize> {
        let (_, t_mu) = self.mu.endpoints(g)?;
        let (_, t_nu) = self.nu.endpoints(g)?;
        if t_mu != t_nu {
            return Err(Error::InvalidPath(format!(
                "targets differ: t(mu) = {t_mu}, t(nu) = {t_nu}"
            )));
        }
        Ok(t_mu)
    }
}

/// `tau(S_mu S_nu^*) = delta_{mu,nu} e^{-beta |mu|} N_{t(mu)}`.
pub fn tau_eval_word<S: Scalar>(
    g: &DirectedMultigraph,
    w: &KmsWeightVector<S>,
    word: &GeneralWord,
) -> Result<S> {
    if w.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: g.num_vertices(),
            found: w.len(),
        });
    }
    let t = word.target(g)?;
    if word.mu != word.nu {
        return Ok(S::zero());
    }
    let decay = S::one() / w.exp_beta()?;
    let factor = (0..word.mu.len()).fold(S::one(), |acc, _| acc * decay.clone());
    Ok(factor * w.weights()[t - 1].clone())
}
