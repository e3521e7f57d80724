//! The Johnson–Carnap basic system: generalized rules of succession.
//!
//! The basic system predicts outcome `i` with probability
//! `(n_i + α_i) / (n + Σ_j α_j)` where `n_i` counts past observations of
//! `i`. It is the unique family compatible with exchangeability,
//! Johnson's sufficientness postulate, and regularity (for non-independent
//! trials), and coincides with the posterior predictive of a
//! Dirichlet(α) prior over i.i.d. chances. This module provides the rule,
//! its λ–γ parameterization, the closed-form Polya sequence probability
//! used as an exchangeability oracle, and a Monte Carlo check of the
//! Dirichlet-mixture representation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{InductiveError, Result};
use crate::history::TypedHistory;
use crate::history::{counts_from_history, CountStatistics};
use crate::rule::PredictiveRule;
use crate::simplex::SimplexVector;

/// Per-outcome prior weights α_i of the basic system.
///
/// Weights must be strictly positive: that is the regime in which the rule
/// describes an infinite exchangeable sequence. Negative weights (which the
/// finite-sequence theory admits) are rejected at validation.
#[derive(Debug, Clone, PartialEq)]
pub struct CarnapParams {
    alpha: Vec<f64>,
}

impl CarnapParams {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(InductiveError::InvalidInput(
                "need at least two outcomes".into(),
            ));
        }
        for (i, &a) in alpha.iter().enumerate() {
            if !a.is_finite() || a <= 0.0 {
                return Err(InductiveError::InvalidInput(format!(
                    "prior weight alpha[{i}] = {a} must be positive and finite"
                )));
            }
        }
        Ok(Self { alpha })
    }

    /// Uniform prior weights: α_i = 1 for `k` outcomes.
    pub fn flat(k: usize) -> Result<Self> {
        Self::new(vec![1.0; k])
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn outcome_count(&self) -> usize {
        self.alpha.len()
    }

    /// Σ_j α_j, the total prior weight.
    pub fn total(&self) -> f64 {
        self.alpha.iter().sum()
    }
}

/// The λ–γ parameterization: a single weight λ > 0 regulating how strongly
/// the prior resists the data, and a prior outcome distribution γ.
///
/// γ must be strictly positive entrywise so that the induced α_i = λ·γ_i
/// are valid prior weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGamma {
    lambda: f64,
    gamma: SimplexVector,
}

impl LambdaGamma {
    pub fn new(lambda: f64, gamma: SimplexVector) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(InductiveError::InvalidInput(format!(
                "lambda = {lambda} must be positive and finite"
            )));
        }
        for (i, &g) in gamma.values().iter().enumerate() {
            if g <= 0.0 || lambda * g <= 0.0 {
                return Err(InductiveError::InvalidInput(format!(
                    "gamma[{i}] = {g} must be strictly positive"
                )));
            }
        }
        Ok(Self { lambda, gamma })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> &SimplexVector {
        &self.gamma
    }
}

/// Converts λ–γ form to prior weights: α_i = λ·γ_i.
pub fn lambda_gamma_to_alpha(lg: &LambdaGamma) -> CarnapParams {
    let alpha = lg.gamma.values().iter().map(|g| lg.lambda * g).collect();
    CarnapParams::new(alpha).expect("positive by LambdaGamma validation")
}

/// Converts prior weights back to λ–γ form: λ = Σα_i, γ_i = α_i/λ.
pub fn alpha_to_lambda_gamma(params: &CarnapParams) -> LambdaGamma {
    let lambda = params.total();
    let gamma = SimplexVector::new(params.alpha().iter().map(|a| a / lambda).collect())
        .expect("normalized positive weights lie on the simplex");
    LambdaGamma::new(lambda, gamma).expect("positive by CarnapParams validation")
}

/// The generalized rule of succession: entry `i` is
/// `(n_i + α_i) / (n + Σ_j α_j)`, using pooled counts. The type dimension
/// of `counts` is ignored.
pub fn carnap_predict(counts: &CountStatistics, params: &CarnapParams) -> Result<SimplexVector> {
    let k = params.outcome_count();
    if counts.outcome_count() != k {
        return Err(InductiveError::InvalidInput(format!(
            "counts cover {} outcomes but parameters cover {k}",
            counts.outcome_count()
        )));
    }
    let denom = counts.total() as f64 + params.total();
    let values = (0..k)
        .map(|i| (counts.outcome_total(i) as f64 + params.alpha()[i]) / denom)
        .collect();
    SimplexVector::new(values)
}

/// Closed-form probability of an outcome sequence under the basic system:
/// `Π_i α_i^(n_i) / (Σα)^(n)` with rising factorials
/// `x^(m) = x(x+1)···(x+m−1)`.
///
/// Evaluated as an interleaved product of ratios so long sequences neither
/// overflow nor underflow prematurely. Depends on the sequence only through
/// its counts, which is exactly the exchangeability of the induced joint;
/// tests pit it against the chained one-step predictions.
pub fn polya_sequence_probability(outcomes: &[usize], params: &CarnapParams) -> Result<f64> {
    let k = params.outcome_count();
    let mut counts = vec![0usize; k];
    for &o in outcomes {
        if o >= k {
            return Err(InductiveError::InvalidInput(format!(
                "outcome index {o} out of range (< {k})"
            )));
        }
        counts[o] += 1;
    }
    Ok(polya_probability_from_counts(&counts, params))
}

fn polya_probability_from_counts(counts: &[usize], params: &CarnapParams) -> f64 {
    let total_weight = params.total();
    let mut probability = 1.0;
    let mut step = 0usize;
    for (i, &n_i) in counts.iter().enumerate() {
        for t in 0..n_i {
            probability *= (params.alpha()[i] + t as f64) / (total_weight + step as f64);
            step += 1;
        }
    }
    probability
}

/// Log form of the Polya sequence probability, from pooled per-outcome
/// counts. Mixture posteriors over long sequences need this: the linear
/// form underflows after a few hundred observations.
pub fn log_polya_probability_from_counts(counts: &[usize], params: &CarnapParams) -> Result<f64> {
    if counts.len() != params.outcome_count() {
        return Err(InductiveError::InvalidInput(format!(
            "counts cover {} outcomes but parameters cover {}",
            counts.len(),
            params.outcome_count()
        )));
    }
    let total_weight = params.total();
    let mut log_probability = 0.0;
    let mut step = 0usize;
    for (i, &n_i) in counts.iter().enumerate() {
        for t in 0..n_i {
            log_probability += (params.alpha()[i] + t as f64).ln();
            log_probability -= (total_weight + step as f64).ln();
            step += 1;
        }
    }
    Ok(log_probability)
}

/// The basic system as a [`PredictiveRule`].
///
/// Type-blind: predictions pool counts over all types. By default the rule
/// lives in the single-type setting; [`CarnapRule::with_type_count`] lifts
/// it to a multi-type history space without changing its predictions.
#[derive(Debug, Clone)]
pub struct CarnapRule {
    params: CarnapParams,
    type_count: usize,
}

impl CarnapRule {
    pub fn new(params: CarnapParams) -> Self {
        Self {
            params,
            type_count: 1,
        }
    }

    /// Same rule, declared over `type_count` types (which it ignores).
    pub fn with_type_count(params: CarnapParams, type_count: usize) -> Result<Self> {
        if type_count < 1 {
            return Err(InductiveError::InvalidInput(
                "need at least one type".into(),
            ));
        }
        Ok(Self { params, type_count })
    }

    pub fn params(&self) -> &CarnapParams {
        &self.params
    }
}

impl PredictiveRule for CarnapRule {
    fn outcome_count(&self) -> usize {
        self.params.outcome_count()
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
        if history.outcome_count() != self.outcome_count() {
            return Err(InductiveError::InvalidInput(format!(
                "history covers {} outcomes but rule covers {}",
                history.outcome_count(),
                self.outcome_count()
            )));
        }
        carnap_predict(&counts_from_history(history), &self.params)
    }
}

/// A Monte Carlo posterior-predictive estimate with its standard errors.
#[derive(Debug, Clone)]
pub struct McPredictive {
    pub estimate: SimplexVector,
    pub std_error: Vec<f64>,
    pub samples: usize,
}

impl McPredictive {
    /// Largest standardized deviation from a reference vector,
    /// `max_i |estimate_i − reference_i| / std_error_i`.
    pub fn max_standardized_deviation(&self, reference: &SimplexVector) -> f64 {
        self.estimate
            .values()
            .iter()
            .zip(reference.values())
            .zip(&self.std_error)
            .map(|((e, r), se)| if *se > 0.0 { (e - r).abs() / se } else { 0.0 })
            .fold(0.0, f64::max)
    }
}

// Sample budget is split into fixed-size chunks, each drawn from its own
// ChaCha stream, so results are reproducible and independent of any future
// re-batching of the chunks.
const MC_CHUNK: usize = 1 << 16;

/// Monte Carlo estimate of the posterior-mean predictive under a
/// Dirichlet(α) prior: chance vectors are drawn from the prior, weighted by
/// the i.i.d. likelihood of the observed counts (computed in log space),
/// and averaged. Converges to [`carnap_predict`] as the sample count grows,
/// which is the Dirichlet-mixture representation made testable.
pub fn dirichlet_mc_predictive(
    params: &CarnapParams,
    counts: &CountStatistics,
    samples: usize,
    seed: u64,
) -> Result<McPredictive> {
    if samples == 0 {
        return Err(InductiveError::InvalidInput(
            "need at least one sample".into(),
        ));
    }
    let k = params.outcome_count();
    if counts.outcome_count() != k {
        return Err(InductiveError::InvalidInput(format!(
            "counts cover {} outcomes but parameters cover {k}",
            counts.outcome_count()
        )));
    }
    let pooled: Vec<f64> = (0..k).map(|i| counts.outcome_total(i) as f64).collect();
    let gammas: Vec<Gamma<f64>> = params
        .alpha()
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("alpha validated positive"))
        .collect();

    let mut chances = vec![0.0f64; samples * k];
    let mut log_weights = vec![0.0f64; samples];
    let mut max_log_weight = f64::NEG_INFINITY;
    let mut drawn = 0usize;
    let mut chunk_index = 0u64;
    while drawn < samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk_index);
        let chunk = MC_CHUNK.min(samples - drawn);
        for s in drawn..drawn + chunk {
            let row = &mut chances[s * k..(s + 1) * k];
            let mut sum = 0.0;
            for (slot, gamma) in row.iter_mut().zip(&gammas) {
                *slot = gamma.sample(&mut rng);
                sum += *slot;
            }
            let mut log_weight = 0.0;
            for (slot, &n_i) in row.iter_mut().zip(&pooled) {
                *slot = if sum > 0.0 { *slot / sum } else { f64::NAN };
                if n_i > 0.0 {
                    log_weight += n_i * slot.ln();
                }
                if !slot.is_finite() {
                    log_weight = f64::NEG_INFINITY;
                }
            }
            log_weights[s] = log_weight;
            if log_weight > max_log_weight {
                max_log_weight = log_weight;
            }
        }
        drawn += chunk;
        chunk_index += 1;
    }

    if !max_log_weight.is_finite() {
        return Err(InductiveError::NumericalDegeneracy(
            "all likelihood weights underflowed to zero".into(),
        ));
    }

    let mut weight_sum = 0.0;
    let mut weighted = vec![0.0f64; k];
    for s in 0..samples {
        let w = (log_weights[s] - max_log_weight).exp();
        weight_sum += w;
        for i in 0..k {
            weighted[i] += w * chances[s * k + i];
        }
    }
    let estimate: Vec<f64> = weighted.iter().map(|v| v / weight_sum).collect();

    // Delta-method standard error of the self-normalized estimator.
    let mut variance = vec![0.0f64; k];
    for s in 0..samples {
        let w = (log_weights[s] - max_log_weight).exp() / weight_sum;
        for i in 0..k {
            let d = chances[s * k + i] - estimate[i];
            variance[i] += w * w * d * d;
        }
    }
    let std_error = variance.iter().map(|v| v.sqrt()).collect();

    Ok(McPredictive {
        estimate: SimplexVector::new(estimate)?,
        std_error,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::joint_probability;
    use proptest::prelude::*;
    use rand::Rng;

    fn flat2() -> CarnapParams {
        CarnapParams::flat(2).unwrap()
    }

    fn counts_of(outcomes: &[usize], k: usize) -> CountStatistics {
        let types = vec![0usize; outcomes.len()];
        let h = TypedHistory::from_indices(k, 1, outcomes.to_vec(), types).unwrap();
        counts_from_history(&h)
    }

    #[test]
    fn rejects_nonpositive_weights() {
        assert!(CarnapParams::new(vec![1.0, 0.0]).is_err());
        assert!(CarnapParams::new(vec![1.0, -2.0]).is_err());
        assert!(CarnapParams::new(vec![1.0]).is_err());
    }

    #[test]
    fn zero_counts_give_prior_mean() {
        let params = CarnapParams::new(vec![3.0, 1.0]).unwrap();
        let p = carnap_predict(&CountStatistics::zero(2, 1).unwrap(), &params).unwrap();
        assert!((p[0] - 0.75).abs() < 1e-15);
        assert!((p[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn laplace_rule_of_succession() {
        // three heads out of three: (3+1)/(3+2) = 4/5
        let p = carnap_predict(&counts_of(&[0, 0, 0], 2), &flat2()).unwrap();
        assert!((p[0] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn three_outcome_hand_example() {
        let params = CarnapParams::flat(3).unwrap();
        let p = carnap_predict(&counts_of(&[0, 0, 2], 3), &params).unwrap();
        assert!((p[0] - 3.0 / 6.0).abs() < 1e-15);
        assert!((p[1] - 1.0 / 6.0).abs() < 1e-15);
        assert!((p[2] - 2.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_gamma_examples() {
        let lg = LambdaGamma::new(2.0, SimplexVector::new(vec![0.5, 0.5]).unwrap()).unwrap();
        assert_eq!(lambda_gamma_to_alpha(&lg).alpha(), &[1.0, 1.0]);
        let lg = LambdaGamma::new(4.0, SimplexVector::new(vec![0.75, 0.25]).unwrap()).unwrap();
        assert_eq!(lambda_gamma_to_alpha(&lg).alpha(), &[3.0, 1.0]);
        assert!(LambdaGamma::new(0.0, SimplexVector::new(vec![0.5, 0.5]).unwrap()).is_err());
        assert!(LambdaGamma::new(1.0, SimplexVector::new(vec![0.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn polya_hand_examples() {
        assert_eq!(polya_sequence_probability(&[], &flat2()).unwrap(), 1.0);
        let ht = polya_sequence_probability(&[0, 1], &flat2()).unwrap();
        let th = polya_sequence_probability(&[1, 0], &flat2()).unwrap();
        assert!((ht - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(ht, th);
    }

    #[test]
    fn polya_matches_chained_predictions_and_is_exchangeable() {
        let params = CarnapParams::new(vec![0.7, 1.3, 2.0]).unwrap();
        let rule = CarnapRule::new(params.clone());
        // exhaustive over all sequences of length <= 6, k = 3
        for len in 0..=6usize {
            let mut seq = vec![0usize; len];
            loop {
                let closed = polya_sequence_probability(&seq, &params).unwrap();
                let chained = joint_probability(&rule, &seq, &vec![0; len]).unwrap();
                assert!(
                    (closed - chained).abs() < 1e-12,
                    "seq {seq:?}: {closed} vs {chained}"
                );
                let mut sorted = seq.clone();
                sorted.sort_unstable();
                let canonical = polya_sequence_probability(&sorted, &params).unwrap();
                assert!((closed - canonical).abs() < 1e-12);

                let mut pos = 0;
                loop {
                    if pos == len {
                        break;
                    }
                    seq[pos] += 1;
                    if seq[pos] < 3 {
                        break;
                    }
                    seq[pos] = 0;
                    pos += 1;
                }
                if pos == len {
                    break;
                }
            }
        }
    }

    #[test]
    fn log_polya_agrees_with_linear_form() {
        let params = CarnapParams::new(vec![0.5, 2.5, 1.0]).unwrap();
        let seq = [0, 1, 1, 2, 0, 1];
        let linear = polya_sequence_probability(&seq, &params).unwrap();
        let mut counts = [0usize; 3];
        for &o in &seq {
            counts[o] += 1;
        }
        let logp = log_polya_probability_from_counts(&counts, &params).unwrap();
        assert!((logp.exp() - linear).abs() < 1e-14);
    }

    #[test]
    fn sufficientness_reads_only_pooled_counts() {
        // equal (n_0, n) with different splits among the other outcomes
        let params = CarnapParams::new(vec![1.0, 2.0, 0.5]).unwrap();
        let a = carnap_predict(&counts_of(&[0, 1, 1, 2], 3), &params).unwrap();
        let b = carnap_predict(&counts_of(&[0, 2, 2, 1], 3), &params).unwrap();
        assert_eq!(a[0], b[0]);
    }

    #[test]
    fn reichenbach_convergence_on_iid_stream() {
        // |predict_i - n_i/n| <= C/n with C = max(alpha) + sum(alpha), and
        // the predictive is within 1e-2 of the stream frequency at n = 1e5.
        let params = CarnapParams::new(vec![2.0, 0.5, 1.0]).unwrap();
        let freq = [0.6, 0.3, 0.1];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = CountStatistics::zero(3, 1).unwrap();
        let n = 100_000usize;
        for _ in 0..n {
            let u: f64 = rng.random();
            let outcome = if u < freq[0] {
                0
            } else if u < freq[0] + freq[1] {
                1
            } else {
                2
            };
            counts.observe(outcome, 0).unwrap();
        }
        let p = carnap_predict(&counts, &params).unwrap();
        let c = 2.0 + params.total();
        for i in 0..3 {
            let empirical = counts.outcome_total(i) as f64 / n as f64;
            assert!((p[i] - empirical).abs() <= c / n as f64 + 1e-15);
            assert!((p[i] - freq[i]).abs() <= 1e-2);
        }
    }

    #[test]
    fn mc_prior_mean_with_no_data() {
        let params = CarnapParams::new(vec![2.0, 1.0, 1.0]).unwrap();
        let counts = CountStatistics::zero(3, 1).unwrap();
        let mc = dirichlet_mc_predictive(&params, &counts, 40_000, 7).unwrap();
        let prior = carnap_predict(&counts, &params).unwrap();
        assert!(mc.max_standardized_deviation(&prior) < 3.0);
    }

    #[test]
    fn mc_matches_closed_form_after_data() {
        let counts = counts_of(&[0, 0, 0], 2);
        let mc = dirichlet_mc_predictive(&flat2(), &counts, 100_000, 13).unwrap();
        let closed = carnap_predict(&counts, &flat2()).unwrap();
        assert!((closed[0] - 0.8).abs() < 1e-15);
        assert!(mc.max_standardized_deviation(&closed) < 3.0);
    }

    #[test]
    fn mc_is_reproducible() {
        let counts = counts_of(&[0, 1, 1], 2);
        let a = dirichlet_mc_predictive(&flat2(), &counts, 10_000, 99).unwrap();
        let b = dirichlet_mc_predictive(&flat2(), &counts, 10_000, 99).unwrap();
        assert_eq!(a.estimate.values(), b.estimate.values());
        assert_eq!(a.std_error, b.std_error);
    }

    #[test]
    fn mc_detects_degenerate_weights() {
        let params = CarnapParams::new(vec![1e-300, 1e-300]).unwrap();
        let counts = counts_of(&[0, 1], 2);
        let err = dirichlet_mc_predictive(&params, &counts, 64, 5).unwrap_err();
        assert!(matches!(err, InductiveError::NumericalDegeneracy(_)));
    }

    proptest! {
        #[test]
        fn lambda_gamma_round_trip(
            lambda in 0.05f64..50.0,
            raw in proptest::collection::vec(0.05f64..1.0, 2..5)
        ) {
            let total: f64 = raw.iter().sum();
            let gamma = SimplexVector::new(raw.iter().map(|v| v / total).collect()).unwrap();
            let lg = LambdaGamma::new(lambda, gamma).unwrap();
            let params = lambda_gamma_to_alpha(&lg);
            let back = alpha_to_lambda_gamma(&params);
            prop_assert!((back.lambda() - lambda).abs() < 1e-9 * lambda);
            for (a, b) in back.gamma().values().iter().zip(lg.gamma().values()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn polya_is_permutation_invariant(
            seq in proptest::collection::vec(0usize..3, 0..10),
            swap_a in 0usize..10,
            swap_b in 0usize..10,
        ) {
            let params = CarnapParams::new(vec![0.9, 1.7, 0.4]).unwrap();
            let p = polya_sequence_probability(&seq, &params).unwrap();
            let mut permuted = seq.clone();
            if !permuted.is_empty() {
                let a = swap_a % permuted.len();
                let b = swap_b % permuted.len();
                permuted.swap(a, b);
            }
            let q = polya_sequence_probability(&permuted, &params).unwrap();
            prop_assert!((p - q).abs() < 1e-12);
        }
    }
}
