//! Mixture-based analogical systems: finite mixtures of basic systems
//! (Skyrms' wheel-of-fortune construction) and Maher's two-family
//! Q-predicate system with positive weight on the Wright manifold.
//!
//! Both keep exchangeability, so their analogy effects are transient: the
//! posterior over components concentrates and the cross-outcome influence
//! washes out as data accumulates. They serve as foils for the persistent
//! analogical rule in [`crate::analogy`].

use crate::carnap::{
    carnap_predict, log_polya_probability_from_counts, polya_sequence_probability, CarnapParams,
};
use crate::error::{InductiveError, Result};
use crate::history::{counts_from_history, TypedHistory};
use crate::rule::PredictiveRule;
use crate::simplex::SimplexVector;

/// A finite mixture of basic systems over a common outcome space.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureModel {
    components: Vec<CarnapParams>,
    weights: SimplexVector,
}

impl MixtureModel {
    pub fn new(components: Vec<CarnapParams>, weights: SimplexVector) -> Result<Self> {
        if components.is_empty() {
            return Err(InductiveError::InvalidInput(
                "mixture needs at least one component".into(),
            ));
        }
        if weights.len() != components.len() {
            return Err(InductiveError::InvalidInput(format!(
                "{} components but {} weights",
                components.len(),
                weights.len()
            )));
        }
        let k = components[0].outcome_count();
        if components.iter().any(|c| c.outcome_count() != k) {
            return Err(InductiveError::InvalidInput(
                "components must share one outcome space".into(),
            ));
        }
        Ok(Self {
            components,
            weights,
        })
    }

    /// Equal prior weight on every component.
    pub fn uniform(components: Vec<CarnapParams>) -> Result<Self> {
        let weights = SimplexVector::uniform(components.len().max(1))?;
        Self::new(components, weights)
    }

    pub fn components(&self) -> &[CarnapParams] {
        &self.components
    }

    pub fn weights(&self) -> &SimplexVector {
        &self.weights
    }

    pub fn outcome_count(&self) -> usize {
        self.components[0].outcome_count()
    }
}

fn pooled_counts(outcomes: &[usize], k: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; k];
    for &o in outcomes {
        if o >= k {
            return Err(InductiveError::InvalidInput(format!(
                "outcome index {o} out of range (< {k})"
            )));
        }
        counts[o] += 1;
    }
    Ok(counts)
}

/// Posterior weights over the mixture components after observing a
/// sequence: weight_c ∝ prior_c · (Polya sequence probability under
/// component c). Likelihoods are accumulated in log space, so long
/// sequences do not underflow.
pub fn mixture_posterior(model: &MixtureModel, outcomes: &[usize]) -> Result<SimplexVector> {
    let counts = pooled_counts(outcomes, model.outcome_count())?;
    let log_posteriors: Vec<f64> = model
        .components()
        .iter()
        .zip(model.weights().values())
        .map(|(component, &prior)| {
            Ok(prior.ln() + log_polya_probability_from_counts(&counts, component)?)
        })
        .collect::<Result<_>>()?;
    let max = log_posteriors
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    // positive prior weights make a zero-likelihood sequence impossible
    assert!(
        max.is_finite(),
        "all component likelihoods vanished, which positive prior weights forbid"
    );
    let unnormalized: Vec<f64> = log_posteriors.iter().map(|lp| (lp - max).exp()).collect();
    let total: f64 = unnormalized.iter().sum();
    SimplexVector::new(unnormalized.iter().map(|u| u / total).collect())
}

/// The mixture predictive: posterior-weighted average of the component
/// rules of succession. The induced joint stays exchangeable, but the
/// prediction no longer depends on the past through `(n_i, n)` alone,
/// which is the point of the construction.
pub fn skyrms_predict(model: &MixtureModel, outcomes: &[usize]) -> Result<SimplexVector> {
    let posterior = mixture_posterior(model, outcomes)?;
    let k = model.outcome_count();
    let types = vec![0usize; outcomes.len()];
    let history = TypedHistory::from_indices(k, 1, outcomes.to_vec(), types)?;
    let counts = counts_from_history(&history);
    let mut values = vec![0.0f64; k];
    for (c, component) in model.components().iter().enumerate() {
        let component_prediction = carnap_predict(&counts, component)?;
        for i in 0..k {
            values[i] += posterior[c] * component_prediction[i];
        }
    }
    SimplexVector::new(values)
}

/// A mixture of basic systems as a [`PredictiveRule`] (single-type).
#[derive(Debug, Clone)]
pub struct SkyrmsRule {
    model: MixtureModel,
}

impl SkyrmsRule {
    pub fn new(model: MixtureModel) -> Self {
        Self { model }
    }

    pub fn model(&self) -> &MixtureModel {
        &self.model
    }
}

impl PredictiveRule for SkyrmsRule {
    fn outcome_count(&self) -> usize {
        self.model.outcome_count()
    }

    fn type_count(&self) -> usize {
        1
    }

    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector> {
        if next_type != 0 {
            return Err(InductiveError::InvalidInput(format!(
                "type index {next_type} out of range (< 1)"
            )));
        }
        skyrms_predict(&self.model, history.outcomes())
    }
}

/// The fixed pairing of Q-predicates with value pairs of the two binary
/// families: Q_1 = (0,0), Q_2 = (1,0), Q_3 = (0,1), Q_4 = (1,1), at
/// indices 0..3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QPredicateEncoding;

impl QPredicateEncoding {
    pub const COUNT: usize = 4;

    /// (v, w) pair of each Q-index.
    pub const PAIRS: [(usize, usize); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

    pub fn to_pair(q: usize) -> Result<(usize, usize)> {
        Self::PAIRS
            .get(q)
            .copied()
            .ok_or_else(|| InductiveError::InvalidInput(format!("Q-index {q} out of range (< 4)")))
    }

    pub fn from_pair(v: usize, w: usize) -> Result<usize> {
        if v > 1 || w > 1 {
            return Err(InductiveError::InvalidInput(format!(
                "predicate values ({v}, {w}) must be binary"
            )));
        }
        Ok(v + 2 * w)
    }
}

/// Parameters of the two-family mixture system: with probability `w` the
/// families are treated as dependent (one basic system on the four
/// Q-predicates), with probability `1 − w` as independent (a product of
/// basic systems on the two family marginals, i.e. a prior supported on
/// the Wright manifold).
#[derive(Debug, Clone, PartialEq)]
pub struct MaherParams {
    weight_dependent: f64,
    alpha_joint: CarnapParams,
    alpha_v: CarnapParams,
    alpha_w: CarnapParams,
}

impl MaherParams {
    pub fn new(
        weight_dependent: f64,
        alpha_joint: CarnapParams,
        alpha_v: CarnapParams,
        alpha_w: CarnapParams,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight_dependent) {
            return Err(InductiveError::InvalidInput(format!(
                "mixture weight {weight_dependent} outside [0, 1]"
            )));
        }
        if alpha_joint.outcome_count() != 4 {
            return Err(InductiveError::InvalidInput(
                "joint component needs 4 Q-predicates".into(),
            ));
        }
        if alpha_v.outcome_count() != 2 || alpha_w.outcome_count() != 2 {
            return Err(InductiveError::InvalidInput(
                "family components need 2 values each".into(),
            ));
        }
        Ok(Self {
            weight_dependent,
            alpha_joint,
            alpha_v,
            alpha_w,
        })
    }

    /// `w = 1/2` and all prior weights 1.
    pub fn symmetric() -> Self {
        Self::new(
            0.5,
            CarnapParams::flat(4).unwrap(),
            CarnapParams::flat(2).unwrap(),
            CarnapParams::flat(2).unwrap(),
        )
        .expect("fixed parameters are valid")
    }

    pub fn weight_dependent(&self) -> f64 {
        self.weight_dependent
    }
}

/// Probability of a Q-predicate sequence under the two-family mixture:
/// `w · polya(qs) + (1−w) · polya(v-projection) · polya(w-projection)`.
pub fn maher_sequence_probability(qs: &[usize], params: &MaherParams) -> Result<f64> {
    let mut v_seq = Vec::with_capacity(qs.len());
    let mut w_seq = Vec::with_capacity(qs.len());
    for &q in qs {
        let (v, w) = QPredicateEncoding::to_pair(q)?;
        v_seq.push(v);
        w_seq.push(w);
    }
    let dependent = polya_sequence_probability(qs, &params.alpha_joint)?;
    let independent = polya_sequence_probability(&v_seq, &params.alpha_v)?
        * polya_sequence_probability(&w_seq, &params.alpha_w)?;
    Ok(params.weight_dependent * dependent + (1.0 - params.weight_dependent) * independent)
}

/// Predictive distribution over the next Q-predicate, as the ratio of
/// mixture sequence probabilities.
pub fn maher_predict(qs: &[usize], params: &MaherParams) -> Result<SimplexVector> {
    let base = maher_sequence_probability(qs, params)?;
    assert!(base > 0.0, "positive prior weights guarantee regularity");
    let mut values = Vec::with_capacity(QPredicateEncoding::COUNT);
    let mut extended = qs.to_vec();
    for q in 0..QPredicateEncoding::COUNT {
        extended.push(q);
        values.push(maher_sequence_probability(&extended, params)? / base);
        extended.pop();
    }
    SimplexVector::new(values)
}

/// The two-family mixture system as a [`PredictiveRule`] over the four
/// Q-predicates (single-type).
#[derive(Debug, Clone)]
pub struct MaherRule {
    params: MaherParams,
}

impl MaherRule {
    pub fn new(params: MaherParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &MaherParams {
        &self.params
    }
}

impl PredictiveRule for MaherRule {
    fn outcome_count(&self) -> usize {
        QPredicateEncoding::COUNT
    }

    fn type_count(&self) -> usize {
        1
    }

    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector> {
        if next_type != 0 {
            return Err(InductiveError::InvalidInput(format!(
                "type index {next_type} out of range (< 1)"
            )));
        }
        maher_predict(history.outcomes(), &self.params)
    }
}

/// The element of the 3-simplex at which the two families are independent
/// with marginals P(v=1) = a, P(w=1) = b, in Q-predicate order.
pub fn wright_manifold_point(a: f64, b: f64) -> Result<SimplexVector> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(InductiveError::InvalidInput(format!(
                "{name} = {v} outside [0, 1]"
            )));
        }
    }
    let values = QPredicateEncoding::PAIRS
        .iter()
        .map(|&(v, w)| {
            let pv = if v == 1 { a } else { 1.0 - a };
            let pw = if w == 1 { b } else { 1.0 - b };
            pv * pw
        })
        .collect();
    SimplexVector::new(values)
}

/// Tolerance for [`check_on_manifold`].
pub const WRIGHT_MANIFOLD_TOLERANCE: f64 = 1e-12;

/// Whether a point of the 3-simplex satisfies the independence constraint
/// `x_1 = (x_1 + x_2)(x_1 + x_3)` that defines the Wright manifold.
pub fn check_on_manifold(x: &SimplexVector) -> Result<bool> {
    if x.len() != 4 {
        return Err(InductiveError::InvalidInput(format!(
            "manifold check needs a point of the 3-simplex, got {} entries",
            x.len()
        )));
    }
    let residual = x[0] - (x[0] + x[1]) * (x[0] + x[2]);
    Ok(residual.abs() <= WRIGHT_MANIFOLD_TOLERANCE)
}
