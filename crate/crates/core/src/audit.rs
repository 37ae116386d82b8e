//! Empirical check of binary operators against the four combination requirements:
//!
//! * (a) pure-belief confidence leaves T unchanged;
//! * (b) pure-disbelief confidence yields pure disbelief;
//! * (c) vacuous confidence yields the vacuous opinion;
//! * (d) the result never believes more than T.
//!
//! "Yes" means no counterexample was found among the sampled inputs.

use std::fmt::{self, Write as _};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combine::combine;
use crate::consts::AUDIT_TOL;
use crate::operators::{apply, OpResult, OperatorId};
use crate::opinion::Opinion;

/// Counterexamples kept per requirement.
pub const MAX_COUNTEREXAMPLES: usize = 5;

/// Sample counts below this are flagged as low confidence.
pub const LOW_CONFIDENCE_BELOW: usize = 1000;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("operator is undefined on every sampled input")]
    OperatorNeverDefined,
    #[error("sample count must be at least 1")]
    NoSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    fn from_holds(holds: bool) -> Self {
        if holds {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Requirement {
    A,
    B,
    C,
    D,
}

impl Requirement {
    pub const ALL: [Requirement; 4] = [Requirement::A, Requirement::B, Requirement::C, Requirement::D];

    pub fn label(self) -> &'static str {
        match self {
            Requirement::A => "(a)",
            Requirement::B => "(b)",
            Requirement::C => "(c)",
            Requirement::D => "(d)",
        }
    }
}

/// An input on which a requirement fails. `result` is `None` when the
/// operator was undefined there, in which case `undefined` holds the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub t: Opinion,
    pub c: Opinion,
    pub result: Option<Opinion>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub undefined: Option<String>,
    /// By how much the requirement is missed; absent for undefined results.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub violation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequirementResult {
    pub verdict: Verdict,
    /// Inputs on which the operator was defined.
    pub defined: usize,
    /// Inputs violating the requirement, including undefined ones for (a)–(c).
    pub violations: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequirementVerdict {
    pub req_a: RequirementResult,
    pub req_b: RequirementResult,
    pub req_c: RequirementResult,
    pub req_d: RequirementResult,
}

impl RequirementVerdict {
    pub fn get(&self, r: Requirement) -> &RequirementResult {
        match r {
            Requirement::A => &self.req_a,
            Requirement::B => &self.req_b,
            Requirement::C => &self.req_c,
            Requirement::D => &self.req_d,
        }
    }

    pub fn verdicts(&self) -> [Verdict; 4] {
        Requirement::ALL.map(|r| self.get(r).verdict)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub sample_count: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            sample_count: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            tolerance: AUDIT_TOL,
        }
    }
}

/// Uniform sampler over the opinion simplex, deterministic for a given seed.
pub struct SimplexSampler {
    rng: ChaCha8Rng,
}

impl SimplexSampler {
    pub fn new(seed: u64) -> Self {
        SimplexSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn opinion(&mut self) -> Opinion {
        let e: [f64; 3] = std::array::from_fn(|_| Exp1.sample(&mut self.rng));
        let s = e[0] + e[1] + e[2];
        Opinion::new(e[0] / s, e[1] / s, e[2] / s).expect("normalized exponentials lie on the simplex")
    }

    pub fn opinions(&mut self, n: usize) -> Vec<Opinion> {
        (0..n).map(|_| self.opinion()).collect()
    }
}

/// The sampled inputs an audit runs on.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditSamples {
    /// Trustworthiness opinions paired with each limit confidence for (a)–(c).
    pub trust: Vec<Opinion>,
    /// Arbitrary pairs for (d).
    pub pairs: Vec<(Opinion, Opinion)>,
}

impl AuditSamples {
    pub fn generate(cfg: &AuditConfig) -> Self {
        let mut sampler = SimplexSampler::new(cfg.seed);
        let trust = sampler.opinions(cfg.sample_count);
        let pairs = (0..cfg.sample_count)
            .map(|_| (sampler.opinion(), sampler.opinion()))
            .collect();
        AuditSamples { trust, pairs }
    }
}

#[derive(Default)]
struct Tally {
    defined: usize,
    violations: usize,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn fail(&mut self, ex: Counterexample) {
        self.violations += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(ex);
        }
    }

    fn finish(self) -> RequirementResult {
        RequirementResult {
            verdict: Verdict::from_holds(self.violations == 0 && self.defined > 0),
            defined: self.defined,
            violations: self.violations,
            counterexamples: self.counterexamples,
        }
    }
}

fn check_limit<F>(op: &F, trust: &[Opinion], c: Opinion, expected: impl Fn(&Opinion) -> Opinion, tol: f64) -> Tally
where
    F: Fn(&Opinion, &Opinion) -> OpResult,
{
    let mut tally = Tally::default();
    for t in trust {
        match op(t, &c) {
            Ok(w) => {
                tally.defined += 1;
                let gap = w.max_abs_diff(&expected(t));
                if gap > tol {
                    tally.fail(Counterexample {
                        t: *t,
                        c,
                        result: Some(w),
                        undefined: None,
                        violation: Some(gap),
                    });
                }
            }
            Err(e) => tally.fail(Counterexample {
                t: *t,
                c,
                result: None,
                undefined: Some(e.reason),
                violation: None,
            }),
        }
    }
    tally
}

/// Audits `op` on explicit samples.
pub fn audit_samples<F>(op: F, samples: &AuditSamples, tol: f64) -> Result<RequirementVerdict, AuditError>
where
    F: Fn(&Opinion, &Opinion) -> OpResult,
{
    if samples.trust.is_empty() && samples.pairs.is_empty() {
        return Err(AuditError::NoSamples);
    }
    let req_a = check_limit(&op, &samples.trust, Opinion::PURE_BELIEF, |t| *t, tol);
    let req_b = check_limit(&op, &samples.trust, Opinion::PURE_DISBELIEF, |_| Opinion::PURE_DISBELIEF, tol);
    let req_c = check_limit(&op, &samples.trust, Opinion::VACUOUS, |_| Opinion::VACUOUS, tol);

    let mut req_d = Tally::default();
    for (t, c) in &samples.pairs {
        if let Ok(w) = op(t, c) {
            req_d.defined += 1;
            let excess = w.belief() - t.belief();
            if excess > tol {
                req_d.fail(Counterexample {
                    t: *t,
                    c: *c,
                    result: Some(w),
                    undefined: None,
                    violation: Some(excess),
                });
            }
        }
    }

    if req_a.defined + req_b.defined + req_c.defined + req_d.defined == 0 {
        return Err(AuditError::OperatorNeverDefined);
    }
    Ok(RequirementVerdict {
        req_a: req_a.finish(),
        req_b: req_b.finish(),
        req_c: req_c.finish(),
        req_d: req_d.finish(),
    })
}

/// Audits `op`, applied as `op(T, C)`, on samples drawn from `cfg`.
pub fn audit<F>(op: F, cfg: &AuditConfig) -> Result<RequirementVerdict, AuditError>
where
    F: Fn(&Opinion, &Opinion) -> OpResult,
{
    if cfg.sample_count == 0 {
        return Err(AuditError::NoSamples);
    }
    audit_samples(op, &AuditSamples::generate(cfg), cfg.tolerance)
}

/// The trustworthiness–confidence combination as an audit subject.
pub fn tc_combine(t: &Opinion, c: &Opinion) -> OpResult {
    Ok(combine(t, c))
}

/// Published verdicts for requirements (a)–(d), with `true` for "Yes".
pub const PUBLISHED_TABLE: [(OperatorId, [bool; 4]); 11] = [
    (OperatorId::Addition, [false, false, false, false]),
    (OperatorId::Subtraction, [false, false, false, true]),
    (OperatorId::Multiplication, [false, true, false, false]),
    (OperatorId::Division, [false, false, false, false]),
    (OperatorId::Comultiplication, [false, false, false, false]),
    (OperatorId::Codivision, [false, false, false, false]),
    (OperatorId::Discounting, [false, false, true, true]),
    (OperatorId::CumulativeFusion, [false, true, false, false]),
    (OperatorId::AveragingFusion, [false, false, false, false]),
    (OperatorId::CumulativeUnfusion, [false, true, false, false]),
    (OperatorId::AveragingUnfusion, [false, true, false, false]),
];

pub fn published_verdicts(op: OperatorId) -> [Verdict; 4] {
    let (_, cells) = PUBLISHED_TABLE
        .iter()
        .find(|(id, _)| *id == op)
        .expect("every operator has a published row");
    cells.map(Verdict::from_holds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub operator: OperatorId,
    pub name: String,
    pub verdict: RequirementVerdict,
    pub expected: [Verdict; 4],
    /// Requirements whose observed verdict differs from the published one.
    pub discrepant: Vec<Requirement>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub sample_count: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub low_confidence: bool,
    pub rows: Vec<TableRow>,
    /// The combination operator audited under the same configuration.
    pub tc_combine: RequirementVerdict,
}

impl TableReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = (OperatorId, Requirement)> + '_ {
        self.rows
            .iter()
            .flat_map(|row| row.discrepant.iter().map(move |r| (row.operator, *r)))
    }

    pub fn matches_published(&self) -> bool {
        self.discrepancies().next().is_none()
    }

    /// Aligned text rendering: one line per operator with four Yes/No columns.
    /// Cells that disagree with the published table are marked `*`.
    pub fn to_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| display_width(&r.name))
            .chain(std::iter::once(display_width("Trust-confidence (⊠)")))
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$} | {:<4} | {:<4} | {:<4} | {:<4}", "Operator", "(a)", "(b)", "(c)", "(d)");
        let _ = writeln!(out, "{}", "-".repeat(width + 28));
        let mut line = |name: &str, verdicts: [Verdict; 4], discrepant: &[Requirement]| {
            let cells: Vec<String> = Requirement::ALL
                .iter()
                .zip(verdicts)
                .map(|(r, v)| {
                    if discrepant.contains(r) {
                        format!("{v}*")
                    } else {
                        v.to_string()
                    }
                })
                .collect();
            let pad = width - display_width(name);
            let _ = writeln!(
                out,
                "{name}{} | {:<4} | {:<4} | {:<4} | {:<4}",
                " ".repeat(pad),
                cells[0],
                cells[1],
                cells[2],
                cells[3]
            );
        };
        for row in &self.rows {
            line(&row.name, row.verdict.verdicts(), &row.discrepant);
        }
        line("Trust-confidence (⊠)", self.tc_combine.verdicts(), &[]);
        let _ = writeln!(out, "samples: {}  seed: {}  tolerance: {:e}", self.sample_count, self.seed, self.tolerance);
        if self.low_confidence {
            let _ = writeln!(out, "LOW_CONFIDENCE: fewer than {LOW_CONFIDENCE_BELOW} samples");
        }
        for row in &self.rows {
            for r in &row.discrepant {
                let i = Requirement::ALL.iter().position(|x| x == r).unwrap_or(0);
                let _ = writeln!(
                    out,
                    "DISCREPANT: {} {}: published {}, observed {}",
                    row.operator,
                    r.label(),
                    row.expected[i],
                    row.verdict.get(*r).verdict
                );
            }
        }
        out
    }
}

// Combining underline does not take a column.
fn display_width(s: &str) -> usize {
    s.chars().filter(|c| *c != '\u{332}').count()
}

/// Audits every classical operator as `op(T, C)` and compares the verdicts
/// with the published table. Operators are audited in parallel on the same
/// samples; row order is fixed.
pub fn audit_table(cfg: &AuditConfig) -> Result<TableReport, AuditError> {
    if cfg.sample_count == 0 {
        return Err(AuditError::NoSamples);
    }
    let samples = AuditSamples::generate(cfg);
    let tol = cfg.tolerance;
    let (rows, tc) = std::thread::scope(|s| {
        let handles: Vec<_> = OperatorId::ALL
            .iter()
            .map(|&op| {
                let samples = &samples;
                s.spawn(move || (op, audit_samples(|t, c| apply(op, t, c), samples, tol)))
            })
            .collect();
        let tc = audit_samples(tc_combine, &samples, tol);
        let rows: Vec<_> = handles
            .into_iter()
            .map(|h| h.join().expect("audit worker panicked"))
            .collect();
        (rows, tc)
    });

    let rows = rows
        .into_iter()
        .map(|(op, verdict)| {
            let verdict = verdict?;
            let expected = published_verdicts(op);
            let discrepant = Requirement::ALL
                .iter()
                .zip(verdict.verdicts().iter().zip(expected))
                .filter(|(_, (got, want))| **got != *want)
                .map(|(r, _)| *r)
                .collect();
            Ok(TableRow {
                operator: op,
                name: op.display_name().to_string(),
                verdict,
                expected,
                discrepant,
            })
        })
        .collect::<Result<Vec<_>, AuditError>>()?;

    Ok(TableReport {
        sample_count: cfg.sample_count,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        low_confidence: cfg.sample_count < LOW_CONFIDENCE_BELOW,
        rows,
        tc_combine: tc?,
    })
}
