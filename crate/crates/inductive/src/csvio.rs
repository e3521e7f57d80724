//! CSV serialization of histories, traces, and convergence reports.
//!
//! Formats are fixed so downstream plots are reproducible without this
//! library:
//!
//! - histories: `step,outcome_label,type_label`
//! - traces: `step,type,outcome,pred_0,...,pred_{k-1}` (prediction made
//!   before the step's outcome was observed)
//! - convergence: one row per (checkpoint, next type) with predictions,
//!   empirical per-type frequencies, and distances to each candidate limit
//!
//! Floats use Rust's shortest round-trip formatting, so identical inputs
//! produce byte-identical files.

use std::fmt::Write as _;

use crate::error::{InductiveError, Result};
use crate::history::TypedHistory;
use crate::space::{OutcomeSpace, TypeSpace};
use crate::stream::Trace;
use crate::symmetry::ConvergenceReport;

fn check_label(label: &str) -> Result<()> {
    if label.contains(',') || label.contains('\n') || label.contains('\r') || label.contains('"') {
        return Err(InductiveError::InvalidInput(format!(
            "label {label:?} cannot be written to CSV (contains a delimiter)"
        )));
    }
    Ok(())
}

/// Renders a history as `step,outcome_label,type_label` rows.
pub fn history_to_csv(
    history: &TypedHistory,
    outcomes: &OutcomeSpace,
    types: &TypeSpace,
) -> Result<String> {
    if outcomes.count() != history.outcome_count() || types.count() != history.type_count() {
        return Err(InductiveError::InvalidInput(
            "label spaces do not match the history dimensions".into(),
        ));
    }
    for label in outcomes.labels().iter().chain(types.labels()) {
        check_label(label)?;
    }
    let mut out = String::from("step,outcome_label,type_label\n");
    for (step, (outcome, ty)) in history.iter().enumerate() {
        let _ = writeln!(
            out,
            "{step},{},{}",
            outcomes.label(outcome)?,
            types.label(ty)?
        );
    }
    Ok(out)
}

/// Parses a history written by [`history_to_csv`]. Steps must be the
/// ascending integers 0, 1, 2, …; labels must belong to the given spaces.
pub fn history_from_csv(
    text: &str,
    outcomes: &OutcomeSpace,
    types: &TypeSpace,
) -> Result<TypedHistory> {
    let mut lines = text.lines();
    match lines.next() {
        Some("step,outcome_label,type_label") => {}
        other => {
            return Err(InductiveError::InvalidInput(format!(
                "expected header 'step,outcome_label,type_label', found {other:?}"
            )))
        }
    }
    let mut outcome_seq = Vec::new();
    let mut type_seq = Vec::new();
    for (row, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (step, outcome_label, type_label) =
            match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(s), Some(o), Some(t), None) => (s, o, t),
                _ => {
                    return Err(InductiveError::InvalidInput(format!(
                        "row {row}: expected 3 fields, found {line:?}"
                    )))
                }
            };
        let step: usize = step.parse().map_err(|_| {
            InductiveError::InvalidInput(format!("row {row}: step {step:?} is not an integer"))
        })?;
        if step != row {
            return Err(InductiveError::InvalidInput(format!(
                "row {row}: step column reads {step}, expected {row}"
            )));
        }
        let outcome = outcomes.index_of(outcome_label).ok_or_else(|| {
            InductiveError::InvalidInput(format!("row {row}: unknown outcome {outcome_label:?}"))
        })?;
        let ty = types.index_of(type_label).ok_or_else(|| {
            InductiveError::InvalidInput(format!("row {row}: unknown type {type_label:?}"))
        })?;
        outcome_seq.push(outcome);
        type_seq.push(ty);
    }
    TypedHistory::from_indices(outcomes.count(), types.count(), outcome_seq, type_seq)
}

/// Renders a simulation trace as
/// `step,type,outcome,pred_0,...,pred_{k-1}`.
pub fn trace_to_csv(trace: &Trace) -> String {
    let mut out = String::from("step,type,outcome");
    for i in 0..trace.outcome_count {
        let _ = write!(out, ",pred_{i}");
    }
    out.push('\n');
    for step in &trace.steps {
        let _ = write!(out, "{},{},{}", step.step, step.ty, step.outcome);
        for &p in step.prediction.values() {
            let _ = write!(out, ",{p}");
        }
        out.push('\n');
    }
    out
}

/// Renders a convergence report, one row per (checkpoint, next type):
/// `step,next_type,pred_*,freq_*,dist_freq,dist_<candidate>...`. Frequency
/// cells are empty until the type has been observed.
pub fn convergence_to_csv(report: &ConvergenceReport) -> String {
    let k = report
        .points
        .first()
        .map(|p| p.per_type[0].prediction.len())
        .unwrap_or(0);
    let mut out = String::from("step,next_type");
    for i in 0..k {
        let _ = write!(out, ",pred_{i}");
    }
    for i in 0..k {
        let _ = write!(out, ",freq_{i}");
    }
    out.push_str(",dist_freq");
    for name in &report.candidate_names {
        let _ = write!(out, ",dist_{name}");
    }
    out.push('\n');
    for point in &report.points {
        for trajectory in &point.per_type {
            let _ = write!(out, "{},{}", point.step, trajectory.next_type);
            for &p in trajectory.prediction.values() {
                let _ = write!(out, ",{p}");
            }
            match &trajectory.empirical_frequency {
                Some(freq) => {
                    for &f in freq.values() {
                        let _ = write!(out, ",{f}");
                    }
                }
                None => {
                    for _ in 0..k {
                        out.push(',');
                    }
                }
            }
            match trajectory.distance_to_frequency {
                Some(d) => {
                    let _ = write!(out, ",{d}");
                }
                None => out.push(','),
            }
            for &d in &trajectory.candidate_distances {
                let _ = write!(out, ",{d}");
            }
            out.push('\n');
        }
    }
    out
}
