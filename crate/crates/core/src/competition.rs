use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Number of symmetric Cournot firms, read as a continuous competition index.
///
/// The perfect-competition limit is carried explicitly rather than as a large
/// float so that the pass-through factor is exactly one there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "f64", try_from = "f64")]
pub enum CompetitionIndex {
    Finite(f64),
    Infinite,
}

impl CompetitionIndex {
    pub const MONOPOLY: CompetitionIndex = CompetitionIndex::Finite(1.0);

    pub fn value(self) -> f64 {
        match self {
            CompetitionIndex::Finite(n) => n,
            CompetitionIndex::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, CompetitionIndex::Infinite)
    }

    /// Oligopoly pass-through `n*eps / (1 + n*eps)` of a cost change into price.
    pub fn pass_through(self, elasticity: f64) -> Result<f64> {
        match self {
            CompetitionIndex::Infinite => Ok(1.0),
            CompetitionIndex::Finite(n) => {
                let ne = n * elasticity;
                let denom = 1.0 + ne;
                if denom == 0.0 || !denom.is_finite() {
                    return Err(Error::PassThroughSingularity);
                }
                Ok(ne / denom)
            }
        }
    }

    /// Markup term `1/(n*eps)` in the pricing condition; zero at the limit.
    pub fn inverse_markup(self, elasticity: f64) -> f64 {
        match self {
            CompetitionIndex::Infinite => 0.0,
            CompetitionIndex::Finite(n) => 1.0 / (n * elasticity),
        }
    }
}

impl From<CompetitionIndex> for f64 {
    fn from(n: CompetitionIndex) -> f64 {
        n.value()
    }
}

impl TryFrom<f64> for CompetitionIndex {
    type Error = String;

    fn try_from(v: f64) -> std::result::Result<Self, Self::Error> {
        if v == f64::INFINITY {
            Ok(CompetitionIndex::Infinite)
        } else if v.is_finite() && v > 0.0 {
            Ok(CompetitionIndex::Finite(v))
        } else {
            Err(format!("invalid competition index {v}"))
        }
    }
}

impl fmt::Display for CompetitionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompetitionIndex::Infinite => write!(f, "∞"),
            CompetitionIndex::Finite(n) => match f.precision() {
                Some(p) => write!(f, "{n:.p$}"),
                None => write!(f, "{n}"),
            },
        }
    }
}
