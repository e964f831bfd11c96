//! Matrix-level domination deciders.
//!
//! Q P^+ is the rational matrix (q_lj / Delta). P dominates Q iff Delta
//! dominates every q_lj and ker P(x) is contained in ker Q(x) almost
//! everywhere; the kernel condition is decided by the exact polynomial
//! identity Q A P = Delta Q. Compact domination replaces the entry
//! condition with vanishing ratios at infinity.

use crate::error::{Error, Result};
use crate::matrix::{MatrixPoly, PseudoinverseRep};
use crate::multiindex::{indices_up_to, MultiIndex};
use crate::poly::ScalarPoly;
use crate::scalar_dom::{decide, DecisionConfig, Mode, Outcome, ScalarVerdict, WitnessCurve};
use serde::Serialize;

/// The reduced numerators Q A together with the shared denominator Delta.
#[derive(Debug, Clone)]
pub struct ReducedPair {
    pub entries: MatrixPoly,
    pub delta: ScalarPoly,
    pub source_rep: PseudoinverseRep,
}

/// Computes the pseudoinverse representation of P and reduces Q against it.
pub fn reduced_matrix(p: &MatrixPoly, q: &MatrixPoly) -> Result<ReducedPair> {
    let rep = p.pseudoinverse()?;
    reduced_matrix_with_rep(p, q, rep)
}

/// Same reduction with a caller-provided representation (for example the
/// adjugate form of a generically invertible square symbol).
pub fn reduced_matrix_with_rep(
    p: &MatrixPoly,
    q: &MatrixPoly,
    rep: PseudoinverseRep,
) -> Result<ReducedPair> {
    if q.cols() != p.cols() {
        return Err(Error::ShapeMismatch {
            context: "operators must act on the same number of components",
            left: format!("{}x{}", p.rows(), p.cols()),
            right: format!("{}x{}", q.rows(), q.cols()),
        });
    }
    if q.dim() != p.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let entries = q.mul(&rep.a)?;
    Ok(ReducedPair {
        entries,
        delta: rep.delta.clone(),
        source_rep: rep,
    })
}

/// Exact test of ker P(x) subset ker Q(x) a.e. via Q A P = Delta Q.
pub fn kernel_inclusion(p: &MatrixPoly, q: &MatrixPoly, pair: &ReducedPair) -> bool {
    let qap = match pair.entries.mul(p) {
        Ok(m) => m,
        Err(_) => return false,
    };
    qap == q.scale_poly(&pair.delta)
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryVerdict {
    /// 1-based (row, column) position in Q A.
    pub entry: (usize, usize),
    pub verdict: ScalarVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominationReport {
    pub overall: Outcome,
    pub mode: Mode,
    pub kernel_inclusion: bool,
    pub entry_verdicts: Vec<EntryVerdict>,
    pub failing_entry: Option<(usize, usize)>,
    pub witness: Option<WitnessCurve>,
    pub notes: String,
}

pub fn decide_domination(p: &MatrixPoly, q: &MatrixPoly) -> Result<DominationReport> {
    decide_matrix(p, q, Mode::Strict, &DecisionConfig::default(), None)
}

pub fn decide_compact_domination(p: &MatrixPoly, q: &MatrixPoly) -> Result<DominationReport> {
    decide_matrix(p, q, Mode::Compact, &DecisionConfig::default(), None)
}

/// Full matrix decision: kernel inclusion first (cheap, decisive), then
/// scalar verdicts per entry in ascending degree order so simple entries
/// fail fast. The report grid is assembled in row-major order.
pub fn decide_matrix(
    p: &MatrixPoly,
    q: &MatrixPoly,
    mode: Mode,
    config: &DecisionConfig,
    rep: Option<PseudoinverseRep>,
) -> Result<DominationReport> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let pair = match rep {
        Some(r) => reduced_matrix_with_rep(p, q, r)?,
        None => reduced_matrix(p, q)?,
    };
    if !kernel_inclusion(p, q, &pair) {
        return Ok(DominationReport {
            overall: Outcome::NotDominates,
            mode,
            kernel_inclusion: false,
            entry_verdicts: Vec::new(),
            failing_entry: None,
            witness: None,
            notes: "kernel inclusion fails: Q A P != Delta Q".into(),
        });
    }

    let rows = pair.entries.rows();
    let cols = pair.entries.cols();
    let mut order: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .collect();
    order.sort_by_key(|&(r, c)| {
        (
            pair.entries.entry(r, c).degree().map(|d| d + 1).unwrap_or(0),
            r,
            c,
        )
    });

    let mut verdict_grid: Vec<Option<ScalarVerdict>> = vec![None; rows * cols];
    let mut failing: Option<(usize, usize)> = None;
    let mut witness = None;
    let mut unknown = false;
    let mut notes = Vec::new();
    for (r, c) in order {
        let numerator = pair.entries.entry(r, c);
        let v = decide(&pair.delta, numerator, mode, config)?;
        match v.outcome {
            Outcome::NotDominates => {
                if failing.is_none() {
                    failing = Some((r + 1, c + 1));
                    witness = v.witness.clone();
                }
            }
            Outcome::Unknown => {
                unknown = true;
                notes.push(format!("entry ({}, {}): {}", r + 1, c + 1, v.note));
            }
            Outcome::Dominates => {}
        }
        verdict_grid[r * cols + c] = Some(v);
    }

    let entry_verdicts: Vec<EntryVerdict> = verdict_grid
        .into_iter()
        .enumerate()
        .map(|(i, v)| EntryVerdict {
            entry: (i / cols + 1, i % cols + 1),
            verdict: v.expect("every entry decided"),
        })
        .collect();

    let overall = if failing.is_some() {
        Outcome::NotDominates
    } else if unknown {
        Outcome::Unknown
    } else {
        Outcome::Dominates
    };
    Ok(DominationReport {
        overall,
        mode,
        kernel_inclusion: true,
        entry_verdicts,
        failing_entry: failing,
        witness,
        notes: notes.join("; "),
    })
}

/// Entrywise derivative P^(alpha).
pub fn derivative_operator(p: &MatrixPoly, alpha: &MultiIndex) -> MatrixPoly {
    p.derivative(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LscStatus {
    Satisfied,
    Fails,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct LscEntry {
    pub alpha: Vec<u32>,
    pub outcome: Outcome,
    pub note: String,
}

/// Per-derivative report for the lower-order compact-domination hypothesis.
#[derive(Debug, Clone, Serialize)]
pub struct LscReport {
    pub status: LscStatus,
    pub entries: Vec<LscEntry>,
    pub failing_alpha: Option<Vec<u32>>,
}

/// Checks that P compactly dominates every nonzero proper derivative
/// operator P^(alpha), 0 < |alpha| <= deg P. Vacuously satisfied when all
/// derivatives vanish.
pub fn lsc_hypothesis_check(p: &MatrixPoly, config: &DecisionConfig) -> Result<LscReport> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let deg = p.degree().unwrap_or(0);
    let mut entries = Vec::new();
    let mut failing = None;
    let mut unknown = false;
    for alpha in indices_up_to(p.dim(), deg) {
        if alpha.is_zero() {
            continue;
        }
        let pa = p.derivative(&alpha);
        if pa.is_zero() {
            continue;
        }
        let report = decide_matrix(p, &pa, Mode::Compact, config, None)?;
        match report.overall {
            Outcome::NotDominates => {
                if failing.is_none() {
                    failing = Some(alpha.0.clone());
                }
            }
            Outcome::Unknown => unknown = true,
            Outcome::Dominates => {}
        }
        entries.push(LscEntry {
            alpha: alpha.0.clone(),
            outcome: report.overall,
            note: if report.kernel_inclusion {
                report.notes
            } else {
                "kernel inclusion fails".into()
            },
        });
    }
    let status = if failing.is_some() {
        LscStatus::Fails
    } else if unknown {
        LscStatus::Unknown
    } else {
        LscStatus::Satisfied
    };
    Ok(LscReport {
        status,
        entries,
        failing_alpha: failing,
    })
}
