//! The predictive-rule contract and chain-rule joint probabilities.
//!
//! A predictive rule maps a history and the type of the next observation to
//! a probability vector over outcomes. Every inductive system in this
//! library is one instance of the contract. Joint probabilities of finite
//! sequences are obtained by chaining predictions, and conversely a rule's
//! predictions must agree with ratios of its joints; [`predictive_from_joint`]
//! computes that ratio form as a cross-check.

use crate::error::{InductiveError, Result};
use crate::history::TypedHistory;
use crate::simplex::SimplexVector;

/// A conditional prediction: history and next type in, outcome
/// probabilities out.
///
/// Implementations must be deterministic (identical inputs give bit-identical
/// outputs) and must return a valid probability vector of length
/// [`outcome_count`](PredictiveRule::outcome_count).
pub trait PredictiveRule: Send + Sync {
    /// Number of distinct outcomes the rule predicts over.
    fn outcome_count(&self) -> usize;

    /// Number of types the rule understands. Type-free rules report 1.
    fn type_count(&self) -> usize;

    /// Probability vector for the next outcome, given the history and the
    /// type of the next observation.
    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector>;

    /// Prediction with additional stipulated future types beyond the next
    /// one. Rules satisfying future-type independence ignore the extra
    /// annotations, which is what the default does; the parameter exists so
    /// the independence postulate is checkable through the API.
    fn predict_with_future(
        &self,
        history: &TypedHistory,
        next_type: usize,
        future_types: &[usize],
    ) -> Result<SimplexVector> {
        let _ = future_types;
        self.predict(history, next_type)
    }
}

impl<R: PredictiveRule + ?Sized> PredictiveRule for &R {
    fn outcome_count(&self) -> usize {
        (**self).outcome_count()
    }

    fn type_count(&self) -> usize {
        (**self).type_count()
    }

    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector> {
        (**self).predict(history, next_type)
    }

    fn predict_with_future(
        &self,
        history: &TypedHistory,
        next_type: usize,
        future_types: &[usize],
    ) -> Result<SimplexVector> {
        (**self).predict_with_future(history, next_type, future_types)
    }
}

/// Lifts a single-type rule to a multi-type history space. Predictions
/// ignore the types entirely: the inner rule sees the outcome sequence
/// re-typed as its single type.
pub struct TypeBlindLift {
    inner: Box<dyn PredictiveRule>,
    type_count: usize,
}

impl TypeBlindLift {
    pub fn new(inner: Box<dyn PredictiveRule>, type_count: usize) -> Result<Self> {
        if inner.type_count() != 1 {
            return Err(InductiveError::InvalidInput(
                "only single-type rules can be lifted".into(),
            ));
        }
        if type_count < 1 {
            return Err(InductiveError::InvalidInput(
                "need at least one type".into(),
            ));
        }
        Ok(Self { inner, type_count })
    }
}

impl PredictiveRule for TypeBlindLift {
    fn outcome_count(&self) -> usize {
        self.inner.outcome_count()
    }

    fn type_count(&self) -> usize {
        self.type_count
    }

    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector> {
        if next_type >= self.type_count {
            return Err(InductiveError::InvalidInput(format!(
                "type index {next_type} out of range (< {})",
                self.type_count
            )));
        }
        let untyped = TypedHistory::from_indices(
            history.outcome_count(),
            1,
            history.outcomes().to_vec(),
            vec![0; history.len()],
        )?;
        self.inner.predict(&untyped, 0)
    }
}

/// Probability of observing `outcomes` in order, given the type sequence,
/// as the chain product of one-step predictions. The empty sequence has
/// probability one.
pub fn joint_probability(
    rule: &dyn PredictiveRule,
    outcomes: &[usize],
    types: &[usize],
) -> Result<f64> {
    if outcomes.len() != types.len() {
        return Err(InductiveError::InvalidInput(format!(
            "outcome sequence has length {} but type sequence has length {}",
            outcomes.len(),
            types.len()
        )));
    }
    let mut prefix = TypedHistory::empty(rule.outcome_count(), rule.type_count())?;
    let mut probability = 1.0;
    for (&outcome, &ty) in outcomes.iter().zip(types) {
        if outcome >= rule.outcome_count() {
            return Err(InductiveError::InvalidInput(format!(
                "outcome index {outcome} out of range (< {})",
                rule.outcome_count()
            )));
        }
        if ty >= rule.type_count() {
            return Err(InductiveError::InvalidInput(format!(
                "type index {ty} out of range (< {})",
                rule.type_count()
            )));
        }
        let prediction = rule.predict(&prefix, ty)?;
        probability *= prediction[outcome];
        prefix = prefix.with_observation(outcome, ty)?;
    }
    Ok(probability)
}

/// Predictive distribution recovered as a ratio of joints: entry `i` is
/// `joint(history + (i, next_type)) / joint(history)`.
///
/// For any rule satisfying the contract this equals `rule.predict` exactly;
/// it is kept as an independent evaluation route for consistency checks.
/// Requesting the ratio on a zero-probability history violates regularity
/// and is an error.
pub fn predictive_from_joint(
    rule: &dyn PredictiveRule,
    history: &TypedHistory,
    next_type: usize,
) -> Result<SimplexVector> {
    if next_type >= rule.type_count() {
        return Err(InductiveError::InvalidInput(format!(
            "type index {next_type} out of range (< {})",
            rule.type_count()
        )));
    }
    let base = joint_probability(rule, history.outcomes(), history.types())?;
    if base <= 0.0 {
        return Err(InductiveError::RegularityViolation(format!(
            "history of length {} has probability {base}; conditional undefined",
            history.len()
        )));
    }
    let mut values = Vec::with_capacity(rule.outcome_count());
    for outcome in 0..rule.outcome_count() {
        let extended = history.with_observation(outcome, next_type)?;
        let joint = joint_probability(rule, extended.outcomes(), extended.types())?;
        values.push(joint / base);
    }
    SimplexVector::new(values)
}
