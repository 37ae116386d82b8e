//! Classical binomial Subjective Logic operators, instantiated at base rate ½.
//!
//! | id        | result                                                                 | defined when |
//! |-----------|------------------------------------------------------------------------|--------------|
//! | `add`     | b = bx+by, d = ((dx−by)+(dy−bx))/2, u = (ux+uy)/2                      | bx+by ≤ 1, d ≥ 0 |
//! | `sub`     | b = bx−by, d = 2dx+bx−dy, u = 2ux−uy                                   | result in simplex |
//! | `mul`     | b = bx·by+(bx·uy+ux·by)/3, d = dx+dy−dx·dy, u = ux·uy+2(bx·uy+ux·by)/3 | always |
//! | `div`     | d = (dx−dy)/(1−dy), b = 2Ex/Ey−(1−dx)/(1−dy), u = 2(1−dx)/(1−dy)−2Ex/Ey | dy < 1, result in simplex |
//! | `comul`   | b = bx+by−bx·by, d = dx·dy+(dx·uy+ux·dy)/3, u = ux·uy+2(dx·uy+ux·dy)/3 | always |
//! | `codiv`   | b = (bx−by)/(1−by), d = 2Q−(1−b), u = 2((1−b)−Q)                        | by < 1, result in simplex |
//! | `discount`| b = bx·by, d = bx·dy, u = dx+ux+bx·uy                                  | always |
//! | `cfuse`   | b = (bx·uy+by·ux)/κ, d = (dx·uy+dy·ux)/κ, u = ux·uy/κ, κ = ux+uy−ux·uy | always |
//! | `afuse`   | b = (bx·uy+by·ux)/(ux+uy), d likewise, u = 2ux·uy/(ux+uy)              | always |
//! | `cunfuse` | b = (bx·uy−by·ux)/κ', d likewise, u = ux·uy/κ', κ' = uy−ux+ux·uy       | κ' ≠ 0, result in simplex |
//! | `aunfuse` | b = (2bx·uy−by·ux)/(2uy−ux), d likewise, u = ux·uy/(2uy−ux)            | 2uy ≠ ux, result in simplex |
//!
//! In `div`, `Ex = bx + ux/4` and `Ey = by + uy/2`; in `codiv`, `Q = (dx + ux/4)/(dy + uy/2)`.
//! The published quotient formulas need distinct atomicities for dividend and
//! divisor. With every operand at ½ the dividend is read as a product (atomicity
//! ¼) or coproduct (atomicity ¾) of ½-opinions, which makes `div` the exact
//! inverse of `mul` and `codiv` the exact inverse of `comul`. `sub` reads its
//! minuend as a sum (atomicity 1) and so inverts `add`.
//!
//! Fusion of two dogmatic opinions, and unfusion of one dogmatic opinion from
//! another, use equal relative dogmatic weights.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::consts::EPS_SUM;
use crate::opinion::Opinion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorId {
    #[serde(rename = "add")]
    Addition,
    #[serde(rename = "sub")]
    Subtraction,
    #[serde(rename = "mul")]
    Multiplication,
    #[serde(rename = "div")]
    Division,
    #[serde(rename = "comul")]
    Comultiplication,
    #[serde(rename = "codiv")]
    Codivision,
    #[serde(rename = "discount")]
    Discounting,
    #[serde(rename = "cfuse")]
    CumulativeFusion,
    #[serde(rename = "afuse")]
    AveragingFusion,
    #[serde(rename = "cunfuse")]
    CumulativeUnfusion,
    #[serde(rename = "aunfuse")]
    AveragingUnfusion,
}

impl OperatorId {
    /// All operators, in the order of the requirement table.
    pub const ALL: [OperatorId; 11] = [
        OperatorId::Addition,
        OperatorId::Subtraction,
        OperatorId::Multiplication,
        OperatorId::Division,
        OperatorId::Comultiplication,
        OperatorId::Codivision,
        OperatorId::Discounting,
        OperatorId::CumulativeFusion,
        OperatorId::AveragingFusion,
        OperatorId::CumulativeUnfusion,
        OperatorId::AveragingUnfusion,
    ];

    pub fn id(self) -> &'static str {
        match self {
            OperatorId::Addition => "add",
            OperatorId::Subtraction => "sub",
            OperatorId::Multiplication => "mul",
            OperatorId::Division => "div",
            OperatorId::Comultiplication => "comul",
            OperatorId::Codivision => "codiv",
            OperatorId::Discounting => "discount",
            OperatorId::CumulativeFusion => "cfuse",
            OperatorId::AveragingFusion => "afuse",
            OperatorId::CumulativeUnfusion => "cunfuse",
            OperatorId::AveragingUnfusion => "aunfuse",
        }
    }

    /// Human-readable name with the conventional symbol.
    pub fn display_name(self) -> &'static str {
        match self {
            OperatorId::Addition => "Addition (+)",
            OperatorId::Subtraction => "Subtraction (-)",
            OperatorId::Multiplication => "Multiplication (·)",
            OperatorId::Division => "Division (/)",
            OperatorId::Comultiplication => "Comultiplication (⊔)",
            OperatorId::Codivision => "Codivision (⊓)",
            OperatorId::Discounting => "Discounting (⊗)",
            OperatorId::CumulativeFusion => "Cumulative fusion (⊕)",
            OperatorId::AveragingFusion => "Averaging fusion (⊕̲)",
            OperatorId::CumulativeUnfusion => "Cumulative unfusion (⊖)",
            OperatorId::AveragingUnfusion => "Averaging unfusion (⊖̲)",
        }
    }

    pub fn is_commutative(self) -> bool {
        matches!(
            self,
            OperatorId::Addition
                | OperatorId::Multiplication
                | OperatorId::Comultiplication
                | OperatorId::CumulativeFusion
                | OperatorId::AveragingFusion
        )
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown operator {0:?}")]
pub struct UnknownOperator(pub String);

impl FromStr for OperatorId {
    type Err = UnknownOperator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorId::ALL
            .into_iter()
            .find(|op| op.id() == s)
            .ok_or_else(|| UnknownOperator(s.to_string()))
    }
}

/// Marker for operands outside an operator's domain.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{op} undefined: {reason}")]
pub struct Undefined {
    pub op: OperatorId,
    pub reason: String,
}

pub type OpResult = Result<Opinion, Undefined>;

/// Applies `op` to `(left, right)`. For discounting the left operand is the
/// opinion about the source and the right one is the source's opinion.
pub fn apply(op: OperatorId, left: &Opinion, right: &Opinion) -> OpResult {
    let [bx, dx, ux] = left.components();
    let [by, dy, uy] = right.components();
    let undefined = |reason: &str| Undefined {
        op,
        reason: reason.to_string(),
    };
    let raw = match op {
        OperatorId::Addition => {
            if bx + by > 1.0 + EPS_SUM {
                return Err(undefined("belief sum exceeds 1"));
            }
            ((bx + by), ((dx - by) + (dy - bx)) / 2.0, (ux + uy) / 2.0)
        }
        OperatorId::Subtraction => {
            if bx - by < -EPS_SUM {
                return Err(undefined("belief would be negative"));
            }
            (bx - by, 2.0 * dx + bx - dy, 2.0 * ux - uy)
        }
        OperatorId::Multiplication => {
            let cross = bx * uy + ux * by;
            (bx * by + cross / 3.0, dx + dy - dx * dy, ux * uy + 2.0 * cross / 3.0)
        }
        OperatorId::Division => {
            let not_dy = 1.0 - dy;
            if not_dy <= 0.0 {
                return Err(undefined("divisor has full disbelief"));
            }
            let ratio = (1.0 - dx) / not_dy;
            let expect = 2.0 * (bx + ux / 4.0) / (by + uy / 2.0);
            (expect - ratio, (dx - dy) / not_dy, 2.0 * ratio - expect)
        }
        OperatorId::Comultiplication => {
            let cross = dx * uy + ux * dy;
            (bx + by - bx * by, dx * dy + cross / 3.0, ux * uy + 2.0 * cross / 3.0)
        }
        OperatorId::Codivision => {
            let not_by = 1.0 - by;
            if not_by <= 0.0 {
                return Err(undefined("divisor has full belief"));
            }
            let b = (bx - by) / not_by;
            let q = (dx + ux / 4.0) / (dy + uy / 2.0);
            (b, 2.0 * q - (1.0 - b), 2.0 * ((1.0 - b) - q))
        }
        OperatorId::Discounting => (bx * by, bx * dy, dx + ux + bx * uy),
        OperatorId::CumulativeFusion => {
            if ux == 0.0 && uy == 0.0 {
                ((bx + by) / 2.0, (dx + dy) / 2.0, 0.0)
            } else {
                let k = ux + uy - ux * uy;
                ((bx * uy + by * ux) / k, (dx * uy + dy * ux) / k, ux * uy / k)
            }
        }
        OperatorId::AveragingFusion => {
            if ux == 0.0 && uy == 0.0 {
                ((bx + by) / 2.0, (dx + dy) / 2.0, 0.0)
            } else {
                let k = ux + uy;
                ((bx * uy + by * ux) / k, (dx * uy + dy * ux) / k, 2.0 * ux * uy / k)
            }
        }
        OperatorId::CumulativeUnfusion | OperatorId::AveragingUnfusion => {
            if ux == 0.0 && uy == 0.0 {
                (2.0 * bx - by, 2.0 * dx - dy, 0.0)
            } else {
                let (k, w) = if op == OperatorId::CumulativeUnfusion {
                    (uy - ux + ux * uy, 1.0)
                } else {
                    (2.0 * uy - ux, 2.0)
                };
                if k == 0.0 {
                    return Err(undefined("removed opinion accounts for all evidence"));
                }
                ((w * bx * uy - by * ux) / k, (w * dx * uy - dy * ux) / k, ux * uy / k)
            }
        }
    };
    finish(op, raw)
}

fn finish(op: OperatorId, (b, d, u): (f64, f64, f64)) -> OpResult {
    let bad = [("belief", b), ("disbelief", d), ("uncertainty", u)]
        .into_iter()
        .find(|(_, v)| !v.is_finite() || *v < -EPS_SUM || *v > 1.0 + EPS_SUM);
    if let Some((name, v)) = bad {
        return Err(Undefined {
            op,
            reason: format!("result {name} {v} outside [0, 1]"),
        });
    }
    Opinion::new(b, d, u).map_err(|e| Undefined {
        op,
        reason: e.to_string(),
    })
}

/// True iff [`apply`] succeeds on these operands.
pub fn operator_domain(op: OperatorId, left: &Opinion, right: &Opinion) -> bool {
    apply(op, left, right).is_ok()
}
