use serde::Serialize;

/// Construction checks must hold to this precision.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Default pass threshold for verification checks.
pub const VERIFY_TOL: f64 = 1e-10;
/// A forced cross-partition check must fail by at least this much.
pub const FORCED_FAILURE_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_deviation: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            max_deviation,
            pass: max_deviation <= tol,
        }
    }
}

/// Per-relation maximum deviations.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RelationReport {
    pub checks: Vec<Check>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Merge by name, keeping the worst deviation.
    pub fn merge(&mut self, other: &RelationReport, tol: f64) {
        for c in &other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.max_deviation = x.max_deviation.max(c.max_deviation);
                    x.pass = x.max_deviation <= tol;
                }
                None => self.checks.push(c.clone()),
            }
        }
    }
}

pub(crate) fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}
