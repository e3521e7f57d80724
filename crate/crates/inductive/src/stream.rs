//! Observation processes for simulation and convergence studies.
//!
//! Predictive rules condition on the type sequence; they do not fix its
//! law. A [`StreamConfig`] supplies one as configuration: an i.i.d. type
//! process together with i.i.d. per-type outcome distributions. Sampling
//! is driven by an explicitly seeded ChaCha generator so every run is
//! reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{InductiveError, Result};
use crate::history::TypedHistory;
use crate::rule::PredictiveRule;
use crate::simplex::SimplexVector;

/// An i.i.d. stream specification: a distribution over types and one
/// outcome distribution per type.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamConfig {
    type_probs: SimplexVector,
    outcome_probs: Vec<SimplexVector>,
}

impl StreamConfig {
    pub fn new(type_probs: SimplexVector, outcome_probs: Vec<SimplexVector>) -> Result<Self> {
        if outcome_probs.len() != type_probs.len() {
            return Err(InductiveError::InvalidInput(format!(
                "{} types but {} outcome distributions",
                type_probs.len(),
                outcome_probs.len()
            )));
        }
        let k = outcome_probs[0].len();
        if k < 2 {
            return Err(InductiveError::InvalidInput(
                "streams need at least two outcomes".into(),
            ));
        }
        if outcome_probs.iter().any(|p| p.len() != k) {
            return Err(InductiveError::InvalidInput(
                "outcome distributions must share one outcome space".into(),
            ));
        }
        Ok(Self {
            type_probs,
            outcome_probs,
        })
    }

    /// Uniform type process over as many types as there are outcome
    /// distributions.
    pub fn uniform_types(outcome_probs: Vec<SimplexVector>) -> Result<Self> {
        let type_probs = SimplexVector::uniform(outcome_probs.len().max(1))?;
        Self::new(type_probs, outcome_probs)
    }

    pub fn type_count(&self) -> usize {
        self.type_probs.len()
    }

    pub fn outcome_count(&self) -> usize {
        self.outcome_probs[0].len()
    }

    pub fn type_probs(&self) -> &SimplexVector {
        &self.type_probs
    }

    pub fn outcome_probs(&self, ty: usize) -> &SimplexVector {
        &self.outcome_probs[ty]
    }
}

/// Inverse-CDF draw of an index with the given probabilities.
pub fn sample_index(probs: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let mut draw: f64 = rng.random();
    for (i, &p) in probs.iter().enumerate() {
        if draw < p {
            return i;
        }
        draw -= p;
    }
    probs.len() - 1
}

/// A sampled realization of a stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamSample {
    pub outcomes: Vec<usize>,
    pub types: Vec<usize>,
}

/// Draws `horizon` (type, outcome) pairs i.i.d. from the stream
/// configuration.
pub fn sample_stream(config: &StreamConfig, horizon: usize, seed: u64) -> StreamSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(horizon);
    let mut types = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let ty = sample_index(config.type_probs().values(), &mut rng);
        let outcome = sample_index(config.outcome_probs(ty).values(), &mut rng);
        types.push(ty);
        outcomes.push(outcome);
    }
    StreamSample { outcomes, types }
}

/// One step of a rule-generated trace: the prediction is the rule's
/// distribution *before* the step's outcome was observed.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub step: usize,
    pub ty: usize,
    pub outcome: usize,
    pub prediction: SimplexVector,
}

/// A simulated trajectory of a rule along a given type sequence.
#[derive(Debug, Clone)]
pub struct Trace {
    pub outcome_count: usize,
    pub steps: Vec<TraceStep>,
}

/// Simulates the rule's own observation process: at each step the next
/// outcome is drawn from the rule's predictive distribution for the
/// current type. For the analogical rule this reproduces the two-urn
/// scheme; for the basic system it is the classic reinforced urn.
///
/// Prediction cost grows with the history, so full traces are meant for
/// desk-scale horizons; convergence studies at long horizons evaluate at
/// checkpoints instead (see [`crate::symmetry::estimate_reichenbach_limit`]).
pub fn simulate_trace(rule: &dyn PredictiveRule, types: &[usize], seed: u64) -> Result<Trace> {
    if types.is_empty() {
        return Err(InductiveError::InvalidInput(
            "type sequence must be nonempty".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut history = TypedHistory::empty(rule.outcome_count(), rule.type_count())?;
    let mut steps = Vec::with_capacity(types.len());
    for (step, &ty) in types.iter().enumerate() {
        let prediction = rule.predict(&history, ty)?;
        let outcome = sample_index(prediction.values(), &mut rng);
        history = history.with_observation(outcome, ty)?;
        steps.push(TraceStep {
            step,
            ty,
            outcome,
            prediction,
        });
    }
    Ok(Trace {
        outcome_count: rule.outcome_count(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analogy::{urn_simulate, AnalogicalRule, AnalogyParams};
    use crate::carnap::{CarnapParams, CarnapRule};

    fn two_type_config() -> StreamConfig {
        StreamConfig::uniform_types(vec![
            SimplexVector::new(vec![0.8, 0.1, 0.1]).unwrap(),
            SimplexVector::new(vec![0.2, 0.4, 0.4]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn stream_sampling_is_reproducible() {
        let config = two_type_config();
        let a = sample_stream(&config, 100, 3);
        let b = sample_stream(&config, 100, 3);
        assert_eq!(a, b);
        assert_eq!(a.outcomes.len(), 100);
        assert!(a.types.iter().all(|&t| t < 2));
    }

    #[test]
    fn stream_frequencies_match_configuration() {
        let config = two_type_config();
        let sample = sample_stream(&config, 50_000, 9);
        let type0 = sample.types.iter().filter(|&&t| t == 0).count() as f64;
        assert!((type0 / 50_000.0 - 0.5).abs() < 0.02);
        let zero_of_type0 = sample
            .outcomes
            .iter()
            .zip(&sample.types)
            .filter(|&(&o, &t)| t == 0 && o == 0)
            .count() as f64;
        assert!((zero_of_type0 / type0 - 0.8).abs() < 0.02);
    }

    #[test]
    fn trace_records_predictions_before_outcomes() {
        let rule = CarnapRule::new(CarnapParams::flat(2).unwrap());
        let trace = simulate_trace(&rule, &[0, 0, 0], 5).unwrap();
        assert_eq!(trace.steps.len(), 3);
        // the first prediction is the prior regardless of what is drawn
        assert_eq!(trace.steps[0].prediction.values(), &[0.5, 0.5]);
    }

    #[test]
    fn trace_law_matches_the_urn_scheme() {
        // sampling sequentially from the analogical rule's predictions and
        // sampling from the two-urn scheme induce the same law; compare
        // first-step marginals empirically
        let params = AnalogyParams::new(vec![[2.0, 1.0], [1.0, 3.0]], 0.5, 0.5).unwrap();
        let rule = AnalogicalRule::new(params.clone());
        let types = [0usize, 1, 1];
        let runs = 20_000;
        let mut trace_first = [0usize; 2];
        let mut urn_first = [0usize; 2];
        for run in 0..runs {
            let t = simulate_trace(&rule, &types, 10_000 + run).unwrap();
            trace_first[t.steps[0].outcome] += 1;
            let u = urn_simulate(&params, &types, 50_000 + run).unwrap();
            urn_first[u[0]] += 1;
        }
        let diff = (trace_first[0] as f64 - urn_first[0] as f64).abs() / runs as f64;
        assert!(diff < 0.02, "first-step marginals differ by {diff}");
    }
}
