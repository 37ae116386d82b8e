use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consts::{DEFAULT_BASE_RATE, EPS_CLASSIFY, EPS_SUM};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpinionError {
    #[error("invalid {field} component: {value}")]
    InvalidComponent { field: &'static str, value: f64 },
    #[error("components sum to {sum}, expected 1")]
    SumViolation { sum: f64 },
}

/// A binomial opinion `<belief, disbelief, uncertainty>` with a relative atomicity.
///
/// Values of this type always hold non-negative components summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOpinion", into = "RawOpinion")]
pub struct Opinion {
    belief: f64,
    disbelief: f64,
    uncertainty: f64,
    base_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpinionKind {
    PureBelief,
    PureDisbelief,
    Vacuous,
    Dogmatic,
    General,
}

#[derive(Serialize, Deserialize)]
struct RawOpinion {
    belief: f64,
    disbelief: f64,
    uncertainty: f64,
    #[serde(default = "default_base_rate")]
    base_rate: f64,
}

fn default_base_rate() -> f64 {
    DEFAULT_BASE_RATE
}

impl TryFrom<RawOpinion> for Opinion {
    type Error = OpinionError;

    fn try_from(raw: RawOpinion) -> Result<Self, Self::Error> {
        if !raw.base_rate.is_finite() || !(0.0..=1.0).contains(&raw.base_rate) {
            return Err(OpinionError::InvalidComponent {
                field: "base_rate",
                value: raw.base_rate,
            });
        }
        let mut o = Opinion::new(raw.belief, raw.disbelief, raw.uncertainty)?;
        o.base_rate = raw.base_rate;
        Ok(o)
    }
}

impl From<Opinion> for RawOpinion {
    fn from(o: Opinion) -> Self {
        RawOpinion {
            belief: o.belief,
            disbelief: o.disbelief,
            uncertainty: o.uncertainty,
            base_rate: o.base_rate,
        }
    }
}

impl Opinion {
    pub const PURE_BELIEF: Opinion = Opinion::vertex(1.0, 0.0, 0.0);
    pub const PURE_DISBELIEF: Opinion = Opinion::vertex(0.0, 1.0, 0.0);
    pub const VACUOUS: Opinion = Opinion::vertex(0.0, 0.0, 1.0);

    const fn vertex(belief: f64, disbelief: f64, uncertainty: f64) -> Self {
        Opinion {
            belief,
            disbelief,
            uncertainty,
            base_rate: DEFAULT_BASE_RATE,
        }
    }

    /// Validates a triple and renormalizes it so the components sum to exactly one.
    ///
    /// Components may be slightly negative or the sum slightly off (up to
    /// [`EPS_SUM`]); such inputs are clamped into `[0, 1]` and divided by their sum.
    pub fn new(belief: f64, disbelief: f64, uncertainty: f64) -> Result<Self, OpinionError> {
        for (field, value) in [
            ("belief", belief),
            ("disbelief", disbelief),
            ("uncertainty", uncertainty),
        ] {
            if !value.is_finite() || value < -EPS_SUM {
                return Err(OpinionError::InvalidComponent { field, value });
            }
        }
        let sum = belief + disbelief + uncertainty;
        if (sum - 1.0).abs() > EPS_SUM {
            return Err(OpinionError::SumViolation { sum });
        }
        Ok(Opinion::from_clamped(belief, disbelief, uncertainty))
    }

    /// Clamps each component into `[0, 1]` and rescales to sum one.
    /// Callers guarantee the triple is a valid opinion up to rounding.
    pub(crate) fn from_clamped(belief: f64, disbelief: f64, uncertainty: f64) -> Self {
        let (b, d, u) = (belief.clamp(0.0, 1.0), disbelief.clamp(0.0, 1.0), uncertainty.clamp(0.0, 1.0));
        let total = b + d + u;
        let nonzero = [b, d, u].iter().filter(|v| **v > 0.0).count();
        if nonzero == 1 && total > 0.0 {
            return Opinion::vertex(
                if b > 0.0 { 1.0 } else { 0.0 },
                if d > 0.0 { 1.0 } else { 0.0 },
                if u > 0.0 { 1.0 } else { 0.0 },
            );
        }
        // Sums off by rounding alone are left as they are.
        if (total - 1.0).abs() <= 4.0 * f64::EPSILON {
            Opinion::vertex(b, d, u)
        } else {
            Opinion::vertex(b / total, d / total, u / total)
        }
    }

    pub fn belief(&self) -> f64 {
        self.belief
    }

    pub fn disbelief(&self) -> f64 {
        self.disbelief
    }

    pub fn uncertainty(&self) -> f64 {
        self.uncertainty
    }

    pub fn base_rate(&self) -> f64 {
        self.base_rate
    }

    pub fn components(&self) -> [f64; 3] {
        [self.belief, self.disbelief, self.uncertainty]
    }

    /// Probability expectation `b + a·u`.
    pub fn expectation(&self) -> f64 {
        self.belief + self.base_rate * self.uncertainty
    }

    pub fn kind(&self) -> OpinionKind {
        let near = |v: &Opinion| {
            self.components()
                .iter()
                .zip(v.components())
                .all(|(x, y)| (x - y).abs() <= EPS_CLASSIFY)
        };
        if near(&Opinion::PURE_BELIEF) {
            OpinionKind::PureBelief
        } else if near(&Opinion::PURE_DISBELIEF) {
            OpinionKind::PureDisbelief
        } else if near(&Opinion::VACUOUS) {
            OpinionKind::Vacuous
        } else if self.uncertainty <= EPS_CLASSIFY {
            OpinionKind::Dogmatic
        } else {
            OpinionKind::General
        }
    }

    /// Largest per-component absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Opinion) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Opinion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{}, {}, {}>",
            self.belief, self.disbelief, self.uncertainty
        )
    }
}

/// Parses the `b,d,u` shorthand.
impl std::str::FromStr for Opinion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated numbers, got {s:?}"));
        }
        let mut vals = [0.0; 3];
        for (slot, (name, part)) in vals
            .iter_mut()
            .zip(["belief", "disbelief", "uncertainty"].iter().zip(parts))
        {
            *slot = part
                .parse::<f64>()
                .map_err(|e| format!("{name}: {e}"))?;
        }
        Opinion::new(vals[0], vals[1], vals[2]).map_err(|e| e.to_string())
    }
}
