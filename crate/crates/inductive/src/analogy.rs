//! An analogical inductive logic with persistent cross-type influence.
//!
//! For two types of observations, the rule predicts outcome `i` on a
//! type-0 trial with probability
//!
//! ```text
//! (n_i0 + β·n_i1 + α_i0) / (N_0 + β·N_1 + Σ_j α_j0)
//! ```
//!
//! and symmetrically with γ for type-1 trials. The constants β, γ ≥ 0 let
//! counts from the other type enter a type's rule of succession directly,
//! so the analogy between types never washes out: unlike mixture systems,
//! the cross influence survives in the limit, where predictions converge
//! to a convex combination of the per-type relative frequencies rather
//! than to the per-type frequencies themselves.
//!
//! Types are indexed 0 and 1 here; β weights type-1 counts inside type-0
//! predictions, γ the converse.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{InductiveError, Result};
use crate::history::{counts_from_history, CountStatistics, TypedHistory};
use crate::rule::PredictiveRule;
use crate::simplex::SimplexVector;

/// Parameters of the analogical rule: a k×2 matrix of positive prior
/// weights α (row = outcome, column = type) plus the analogy weights β, γ.
///
/// Exactly two types are supported; the matrix shape is the extension
/// point for more. Two outcomes are accepted even though the postulates
/// behind the rule only pin it down for three or more: with k = 2 the
/// formula stays well defined and is evaluated as given.
///
/// Under the analogy reading, β, γ ≤ 1 ("no type is more analogous to
/// another than to itself"); under the source-reliability reading values
/// above 1 are meaningful. The plain constructor allows them; use
/// [`AnalogyParams::with_self_analogy_bound`] to enforce the cap.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogyParams {
    alpha: Vec<[f64; 2]>,
    beta: f64,
    gamma: f64,
    self_analogy_bound: bool,
}

impl AnalogyParams {
    pub fn new(alpha: Vec<[f64; 2]>, beta: f64, gamma: f64) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(InductiveError::InvalidInput(
                "need at least two outcomes".into(),
            ));
        }
        for (i, row) in alpha.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if !a.is_finite() || a <= 0.0 {
                    return Err(InductiveError::InvalidInput(format!(
                        "prior weight alpha[{i}][{j}] = {a} must be positive and finite"
                    )));
                }
            }
        }
        for (name, v) in [("beta", beta), ("gamma", gamma)] {
            if !v.is_finite() || v < 0.0 {
                return Err(InductiveError::InvalidInput(format!(
                    "{name} = {v} must be nonnegative and finite"
                )));
            }
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            self_analogy_bound: false,
        })
    }

    /// Like [`AnalogyParams::new`] but additionally requires β ≤ 1 and
    /// γ ≤ 1.
    pub fn with_self_analogy_bound(alpha: Vec<[f64; 2]>, beta: f64, gamma: f64) -> Result<Self> {
        if beta > 1.0 || gamma > 1.0 {
            return Err(InductiveError::InvalidInput(format!(
                "self-analogy bound requires beta <= 1 and gamma <= 1 (got {beta}, {gamma})"
            )));
        }
        let mut params = Self::new(alpha, beta, gamma)?;
        params.self_analogy_bound = true;
        Ok(params)
    }

    pub fn outcome_count(&self) -> usize {
        self.alpha.len()
    }

    /// α_{ij} for outcome `i`, type `j`.
    pub fn alpha(&self, outcome: usize, ty: usize) -> f64 {
        self.alpha[outcome][ty]
    }

    /// Σ_i α_{ij} for type `j`.
    pub fn alpha_total(&self, ty: usize) -> f64 {
        self.alpha.iter().map(|row| row[ty]).sum()
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn self_analogy_bound(&self) -> bool {
        self.self_analogy_bound
    }

    /// The analogy weight applied to other-type counts when predicting
    /// `next_type`: β for type 0, γ for type 1.
    pub fn cross_weight(&self, next_type: usize) -> f64 {
        if next_type == 0 {
            self.beta
        } else {
            self.gamma
        }
    }

    /// Same α matrix and bound flag with different analogy weights.
    pub fn with_weights(&self, beta: f64, gamma: f64) -> Result<Self> {
        if self.self_analogy_bound {
            Self::with_self_analogy_bound(self.alpha.clone(), beta, gamma)
        } else {
            Self::new(self.alpha.clone(), beta, gamma)
        }
    }
}

fn check_two_types(counts: &CountStatistics) -> Result<()> {
    if counts.type_count() != 2 {
        return Err(InductiveError::InvalidInput(format!(
            "analogical rule needs exactly two types, counts have {}",
            counts.type_count()
        )));
    }
    Ok(())
}

/// The analogical predictive distribution for the next observation of
/// `next_type` (0 or 1), given count statistics over a two-type history.
pub fn analogical_predict(
    counts: &CountStatistics,
    params: &AnalogyParams,
    next_type: usize,
) -> Result<SimplexVector> {
    check_two_types(counts)?;
    if counts.outcome_count() != params.outcome_count() {
        return Err(InductiveError::InvalidInput(format!(
            "counts cover {} outcomes but parameters cover {}",
            counts.outcome_count(),
            params.outcome_count()
        )));
    }
    if next_type >= 2 {
        return Err(InductiveError::InvalidInput(format!(
            "type index {next_type} out of range (< 2)"
        )));
    }
    let other = 1 - next_type;
    let cross = params.cross_weight(next_type);
    let denom = counts.type_total(next_type) as f64
        + cross * counts.type_total(other) as f64
        + params.alpha_total(next_type);
    let values = (0..params.outcome_count())
        .map(|i| {
            (counts.count(i, next_type) as f64
                + cross * counts.count(i, other) as f64
                + params.alpha(i, next_type))
                / denom
        })
        .collect();
    SimplexVector::new(values)
}

/// The analogical rule as a [`PredictiveRule`] over two types.
#[derive(Debug, Clone)]
pub struct AnalogicalRule {
    params: AnalogyParams,
}

impl AnalogicalRule {
    pub fn new(params: AnalogyParams) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &AnalogyParams {
        &self.params
    }
}

impl PredictiveRule for AnalogicalRule {
    fn outcome_count(&self) -> usize {
        self.params.outcome_count()
    }

    fn type_count(&self) -> usize {
        2
    }

    fn predict(&self, history: &TypedHistory, next_type: usize) -> Result<SimplexVector> {
        if history.outcome_count() != self.outcome_count() || history.type_count() != 2 {
            return Err(InductiveError::InvalidInput(format!(
                "history over {} outcomes / {} types does not match rule ({} outcomes / 2 types)",
                history.outcome_count(),
                history.type_count(),
                self.outcome_count()
            )));
        }
        analogical_predict(&counts_from_history(history), &self.params, next_type)
    }
}

/// Samples an outcome sequence for the given type sequence from the
/// two-urn scheme that realizes the analogical rule.
///
/// Urn `j` starts with weight α_{ij} on label `i`. Drawing label `i` from
/// the urn of the current type adds weight 1 to that label in the same
/// urn, and reinforces the same label in the other urn with that urn's
/// analogy weight (β into urn 0 after a type-1 draw, γ into urn 1 after a
/// type-0 draw), so each urn's weights track the numerator of the
/// predictive formula. The induced law over outcome sequences equals the
/// chain of analogical predictions.
pub fn urn_simulate(params: &AnalogyParams, types: &[usize], seed: u64) -> Result<Vec<usize>> {
    if types.is_empty() {
        return Err(InductiveError::InvalidInput(
            "type sequence must be nonempty".into(),
        ));
    }
    if let Some(&bad) = types.iter().find(|&&t| t >= 2) {
        return Err(InductiveError::InvalidInput(format!(
            "type index {bad} out of range (< 2)"
        )));
    }
    let k = params.outcome_count();
    let mut weights = [
        (0..k).map(|i| params.alpha(i, 0)).collect::<Vec<f64>>(),
        (0..k).map(|i| params.alpha(i, 1)).collect::<Vec<f64>>(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::with_capacity(types.len());
    for &ty in types {
        let total: f64 = weights[ty].iter().sum();
        let mut draw = rng.random::<f64>() * total;
        let mut outcome = k - 1;
        for (i, &w) in weights[ty].iter().enumerate() {
            if draw < w {
                outcome = i;
                break;
            }
            draw -= w;
        }
        weights[ty][outcome] += 1.0;
        let other = 1 - ty;
        weights[other][outcome] += params.cross_weight(other);
        outcomes.push(outcome);
    }
    Ok(outcomes)
}

/// One outcome's entry in a [`BetaPositivityReport`].
#[derive(Debug, Clone)]
pub struct BetaPositivityEntry {
    pub outcome: usize,
    /// P[second observation = i | first = i of type 1, second of type 0].
    pub repeat_probability: f64,
    /// P[first observation = i | type 0], i.e. the prior predictive.
    pub prior_probability: f64,
    pub strictly_greater: bool,
    /// Whether (β > 0) ⇔ (repeat > prior) holds for this outcome.
    pub consistent: bool,
}

/// Diagnostic for the positivity of β: a cross-type observation of an
/// outcome raises that outcome's type-0 predictive probability exactly
/// when β is positive.
#[derive(Debug, Clone)]
pub struct BetaPositivityReport {
    pub beta: f64,
    pub entries: Vec<BetaPositivityEntry>,
    /// (β > 0) ⇔ strict increase, simultaneously for every outcome.
    pub equivalence_holds: bool,
    /// The β grid used for the monotonicity sweep.
    pub sweep_betas: Vec<f64>,
    /// Repeat probabilities per sweep point, one inner vector per β.
    pub sweep_repeat: Vec<Vec<f64>>,
    /// Whether the repeat probability strictly increases along the sweep
    /// for every outcome.
    pub monotone_in_beta: bool,
}

const BETA_SWEEP: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];

fn repeat_probabilities(params: &AnalogyParams) -> Result<Vec<f64>> {
    let k = params.outcome_count();
    let mut repeat = Vec::with_capacity(k);
    for i in 0..k {
        let mut counts = CountStatistics::zero(k, 2)?;
        counts.observe(i, 1)?;
        repeat.push(analogical_predict(&counts, params, 0)?[i]);
    }
    Ok(repeat)
}

/// Evaluates both sides of the β-positivity criterion from the predictive
/// rule itself and sweeps β to confirm the repeat probability grows with
/// it.
pub fn check_beta_positivity(params: &AnalogyParams) -> Result<BetaPositivityReport> {
    let prior = analogical_predict(
        &CountStatistics::zero(params.outcome_count(), 2)?,
        params,
        0,
    )?;
    let repeat = repeat_probabilities(params)?;
    let entries: Vec<BetaPositivityEntry> = repeat
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let strictly_greater = r > prior[i];
            BetaPositivityEntry {
                outcome: i,
                repeat_probability: r,
                prior_probability: prior[i],
                strictly_greater,
                consistent: (params.beta() > 0.0) == strictly_greater,
            }
        })
        .collect();
    let equivalence_holds = entries.iter().all(|e| e.consistent);

    let mut sweep_betas: Vec<f64> = BETA_SWEEP.to_vec();
    if !sweep_betas.contains(&params.beta()) {
        sweep_betas.push(params.beta());
        sweep_betas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    let mut sweep_repeat = Vec::with_capacity(sweep_betas.len());
    for &beta in &sweep_betas {
        let swept = params.with_weights(beta, params.gamma());
        // the self-analogy cap may exclude large sweep points; skip them
        let swept = match swept {
            Ok(p) => p,
            Err(_) => continue,
        };
        sweep_repeat.push(repeat_probabilities(&swept)?);
    }
    sweep_betas.truncate(sweep_repeat.len());
    let monotone_in_beta = (0..params.outcome_count())
        .all(|i| sweep_repeat.windows(2).all(|pair| pair[1][i] > pair[0][i]));

    Ok(BetaPositivityReport {
        beta: params.beta(),
        entries,
        equivalence_holds,
        sweep_betas,
        sweep_repeat,
        monotone_in_beta,
    })
}

/// The limiting predictive distribution along a stream where the per-type
/// relative frequencies converge to `freq_by_type` and the fraction of
/// type-0 observations converges to `type_ratio`.
///
/// For type 0 the limit is `(r·f_i0 + β(1−r)·f_i1) / (r + β(1−r))`; the
/// prior weights vanish. With a zero denominator (no observations of the
/// predicted type and no analogy inflow) the limit is undefined.
pub fn limiting_predictive(
    freq_by_type: &[SimplexVector],
    params: &AnalogyParams,
    type_ratio: f64,
    next_type: usize,
) -> Result<SimplexVector> {
    if freq_by_type.len() != 2 {
        return Err(InductiveError::InvalidInput(format!(
            "need one frequency vector per type (2), got {}",
            freq_by_type.len()
        )));
    }
    let k = params.outcome_count();
    if freq_by_type.iter().any(|f| f.len() != k) {
        return Err(InductiveError::InvalidInput(
            "frequency vectors must match the outcome count".into(),
        ));
    }
    if !(0.0..=1.0).contains(&type_ratio) {
        return Err(InductiveError::InvalidInput(format!(
            "type ratio {type_ratio} outside [0, 1]"
        )));
    }
    if next_type >= 2 {
        return Err(InductiveError::InvalidInput(format!(
            "type index {next_type} out of range (< 2)"
        )));
    }
    let cross = params.cross_weight(next_type);
    let own_share = if next_type == 0 {
        type_ratio
    } else {
        1.0 - type_ratio
    };
    let other_share = 1.0 - own_share;
    let denom = own_share + cross * other_share;
    if denom == 0.0 {
        return Err(InductiveError::UndefinedLimit(format!(
            "type {next_type} never observed and its analogy weight is zero"
        )));
    }
    let other = 1 - next_type;
    let values = (0..k)
        .map(|i| {
            (own_share * freq_by_type[next_type][i] + cross * other_share * freq_by_type[other][i])
                / denom
        })
        .collect();
    SimplexVector::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carnap::{carnap_predict, CarnapParams};
    use crate::rule::joint_probability;

    fn flat_params(k: usize, beta: f64, gamma: f64) -> AnalogyParams {
        AnalogyParams::new(vec![[1.0, 1.0]; k], beta, gamma).unwrap()
    }

    fn two_type_counts(obs: &[(usize, usize)], k: usize) -> CountStatistics {
        let mut counts = CountStatistics::zero(k, 2).unwrap();
        for &(o, t) in obs {
            counts.observe(o, t).unwrap();
        }
        counts
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(AnalogyParams::new(vec![[1.0, 0.0], [1.0, 1.0]], 0.5, 0.5).is_err());
        assert!(AnalogyParams::new(vec![[1.0, 1.0], [1.0, 1.0]], -0.1, 0.5).is_err());
        assert!(AnalogyParams::new(vec![[1.0, 1.0]], 0.5, 0.5).is_err());
        assert!(
            AnalogyParams::with_self_analogy_bound(vec![[1.0, 1.0], [1.0, 1.0]], 1.5, 0.5).is_err()
        );
        assert!(
            AnalogyParams::with_self_analogy_bound(vec![[1.0, 1.0], [1.0, 1.0]], 1.0, 1.0).is_ok()
        );
    }

    #[test]
    fn zero_counts_give_prior_column() {
        let params =
            AnalogyParams::new(vec![[2.0, 1.0], [1.0, 1.0], [1.0, 2.0]], 0.5, 0.5).unwrap();
        let p = analogical_predict(&CountStatistics::zero(3, 2).unwrap(), &params, 0).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15);
        assert!((p[1] - 0.25).abs() < 1e-15);
        let q = analogical_predict(&CountStatistics::zero(3, 2).unwrap(), &params, 1).unwrap();
        assert!((q[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn worked_example() {
        // n_01 = 2, n_02 = 4, N_1 = 3, N_2 = 5, alpha column 1 all ones,
        // beta = 0.5: (2 + 0.5*4 + 1)/(3 + 0.5*5 + 3) = 5/8.5
        let params = flat_params(3, 0.5, 0.25);
        let counts = two_type_counts(
            &[
                (0, 0),
                (0, 0),
                (1, 0),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (2, 1),
            ],
            3,
        );
        assert_eq!(counts.type_total(0), 3);
        assert_eq!(counts.type_total(1), 5);
        let p = analogical_predict(&counts, &params, 0).unwrap();
        assert!((p[0] - 5.0 / 8.5).abs() < 1e-15);
    }

    #[test]
    fn decoupled_weights_reduce_to_per_type_carnap() {
        let params =
            AnalogyParams::new(vec![[1.0, 2.0], [3.0, 1.0], [0.5, 1.0]], 0.0, 0.0).unwrap();
        let counts = two_type_counts(&[(0, 0), (1, 0), (1, 1), (2, 1), (2, 1)], 3);
        let p = analogical_predict(&counts, &params, 0).unwrap();

        // same prediction from a Carnap rule over the type-0 observations only
        let restricted = two_type_counts(&[(0, 0), (1, 0)], 3);
        let carnap = carnap_predict(
            &restricted,
            &CarnapParams::new(vec![1.0, 3.0, 0.5]).unwrap(),
        )
        .unwrap();
        assert!(p.sup_distance(&carnap) < 1e-15);
    }

    #[test]
    fn unit_weights_with_equal_columns_pool_the_types() {
        let params = flat_params(3, 1.0, 1.0);
        let counts = two_type_counts(&[(0, 0), (1, 1), (1, 1), (2, 0)], 3);
        let p = analogical_predict(&counts, &params, 0).unwrap();
        let pooled = carnap_predict(&counts, &CarnapParams::flat(3).unwrap()).unwrap();
        assert!(p.sup_distance(&pooled) < 1e-15);
        let q = analogical_predict(&counts, &params, 1).unwrap();
        assert!(q.sup_distance(&pooled) < 1e-15);
    }

    #[test]
    fn rejects_wrong_type_count() {
        let params = flat_params(3, 0.5, 0.5);
        let counts = CountStatistics::zero(3, 1).unwrap();
        assert!(analogical_predict(&counts, &params, 0).is_err());
        let counts = CountStatistics::zero(3, 2).unwrap();
        assert!(analogical_predict(&counts, &params, 2).is_err());
    }

    #[test]
    fn urn_is_deterministic_for_a_seed() {
        let params = flat_params(3, 0.5, 0.25);
        let types = [0, 1, 1, 0, 1, 0, 0, 1];
        let a = urn_simulate(&params, &types, 42).unwrap();
        let b = urn_simulate(&params, &types, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), types.len());
    }

    fn empirical_tv_against_chain(
        params: &AnalogyParams,
        types: &[usize],
        runs: usize,
        seed_base: u64,
    ) -> f64 {
        let k = params.outcome_count();
        let len = types.len();
        let cells = k.pow(len as u32);
        let mut histogram = vec![0usize; cells];
        for run in 0..runs {
            let outcomes = urn_simulate(params, types, seed_base + run as u64).unwrap();
            let mut cell = 0usize;
            for &o in &outcomes {
                cell = cell * k + o;
            }
            histogram[cell] += 1;
        }
        let rule = AnalogicalRule::new(params.clone());
        let mut tv = 0.0;
        for (cell, &count) in histogram.iter().enumerate() {
            let mut seq = vec![0usize; len];
            let mut rest = cell;
            for slot in seq.iter_mut().rev() {
                *slot = rest % k;
                rest /= k;
            }
            let joint = joint_probability(&rule, &seq, types).unwrap();
            tv += (count as f64 / runs as f64 - joint).abs();
        }
        tv / 2.0
    }

    #[test]
    fn urn_with_zero_weights_and_one_type_is_a_polya_urn() {
        // beta = gamma = 0, all draws of type 0: the urn law must match the
        // closed-form Polya sequence probability.
        let params =
            AnalogyParams::new(vec![[1.5, 1.0], [0.5, 1.0], [1.0, 1.0]], 0.0, 0.0).unwrap();
        let tv = empirical_tv_against_chain(&params, &[0, 0, 0], 50_000, 1000);
        assert!(tv < 0.02, "total variation {tv}");
    }

    #[test]
    fn urn_matches_analytic_joints_with_cross_influence() {
        let params =
            AnalogyParams::new(vec![[1.0, 0.5], [2.0, 1.0], [0.5, 1.5]], 0.7, 0.3).unwrap();
        let tv = empirical_tv_against_chain(&params, &[0, 1, 0], 50_000, 77);
        assert!(tv < 0.02, "total variation {tv}");
    }

    #[test]
    fn beta_positivity_boundary_and_hand_value() {
        // beta = 0: both sides equal for every outcome
        let report = check_beta_positivity(&flat_params(3, 0.0, 0.5)).unwrap();
        assert!(report.equivalence_holds);
        for e in &report.entries {
            assert_eq!(e.repeat_probability, e.prior_probability);
        }

        // beta = 0.5, flat alpha, k = 3: (0.5+1)/(0.5+3) vs 1/3
        let report = check_beta_positivity(&flat_params(3, 0.5, 0.5)).unwrap();
        assert!(report.equivalence_holds);
        for e in &report.entries {
            assert!((e.repeat_probability - 1.5 / 3.5).abs() < 1e-15);
            assert!((e.prior_probability - 1.0 / 3.0).abs() < 1e-15);
            assert!(e.strictly_greater);
        }
        assert!(report.monotone_in_beta);
        assert!(report.sweep_betas.len() >= 5);
    }

    #[test]
    fn limiting_reduces_and_interpolates() {
        let params = flat_params(3, 0.0, 0.0);
        let f0 = SimplexVector::new(vec![0.6, 0.3, 0.1]).unwrap();
        let f1 = SimplexVector::new(vec![0.2, 0.2, 0.6]).unwrap();
        // beta = 0: the per-type frequency exactly
        let p = limiting_predictive(&[f0.clone(), f1.clone()], &params, 0.4, 0).unwrap();
        assert!(p.sup_distance(&f0) < 1e-15);

        // common frequencies: fixed point for any weights and ratio
        let params = flat_params(3, 0.8, 1.7);
        let p = limiting_predictive(&[f0.clone(), f0.clone()], &params, 0.3, 0).unwrap();
        assert!(p.sup_distance(&f0) < 1e-15);

        // beta = 1, r = 1/2, f_00 = 0.8, f_01 = 0.2 -> 0.5
        let params = flat_params(2, 1.0, 1.0);
        let f0 = SimplexVector::new(vec![0.8, 0.2]).unwrap();
        let f1 = SimplexVector::new(vec![0.2, 0.8]).unwrap();
        let p = limiting_predictive(&[f0, f1], &params, 0.5, 0).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn limiting_is_undefined_without_mass_or_inflow() {
        let params = flat_params(2, 0.0, 0.5);
        let f = SimplexVector::new(vec![0.5, 0.5]).unwrap();
        let err = limiting_predictive(&[f.clone(), f.clone()], &params, 0.0, 0).unwrap_err();
        assert!(matches!(err, InductiveError::UndefinedLimit(_)));
        // the gamma side is fine at ratio 0
        assert!(limiting_predictive(&[f.clone(), f.clone()], &params, 0.0, 1).is_ok());
    }

    #[test]
    fn modified_sufficientness_is_structural() {
        // two histories agreeing on (n_i0, n_i1, N_0, N_1) for i = 0 but
        // differing elsewhere give the same prediction entry for 0
        let params =
            AnalogyParams::new(vec![[1.0, 0.5], [2.0, 1.0], [0.5, 1.5]], 0.7, 0.3).unwrap();
        let a = two_type_counts(&[(0, 0), (1, 0), (1, 1)], 3);
        let b = two_type_counts(&[(0, 0), (2, 0), (2, 1)], 3);
        let pa = analogical_predict(&a, &params, 0).unwrap();
        let pb = analogical_predict(&b, &params, 0).unwrap();
        assert_eq!(pa[0], pb[0]);
    }

    #[test]
    fn future_types_are_ignored() {
        let rule = AnalogicalRule::new(flat_params(3, 0.5, 0.25));
        let h = TypedHistory::from_indices(3, 2, vec![0, 1], vec![0, 1]).unwrap();
        let plain = rule.predict(&h, 0).unwrap();
        for futures in [vec![0], vec![1], vec![0, 1], vec![1, 1]] {
            let with = rule.predict_with_future(&h, 0, &futures).unwrap();
            assert_eq!(plain.values(), with.values());
        }
    }

    fn same_type_repeat(params: &AnalogyParams, i: usize, first_type: usize, next: usize) -> f64 {
        let mut counts = CountStatistics::zero(params.outcome_count(), 2).unwrap();
        counts.observe(i, first_type).unwrap();
        analogical_predict(&counts, params, next).unwrap()[i]
    }

    #[test]
    fn self_analogy_bound_characterizes_small_weights() {
        // beta, gamma <= 1: a same-type observation never helps less than a
        // cross-type one
        for (beta, gamma) in [(0.0, 0.0), (0.3, 0.9), (1.0, 1.0)] {
            let params =
                AnalogyParams::new(vec![[1.0, 0.5], [2.0, 1.0], [0.5, 1.5]], beta, gamma).unwrap();
            for i in 0..3 {
                for j in 0..2 {
                    let same = same_type_repeat(&params, i, j, j);
                    let cross = same_type_repeat(&params, i, 1 - j, j);
                    assert!(
                        same >= cross - 1e-15,
                        "beta={beta} gamma={gamma} i={i} j={j}: {same} < {cross}"
                    );
                }
            }
        }
        // beta > 1 violates the postulate for some outcome
        let params =
            AnalogyParams::new(vec![[1.0, 0.5], [2.0, 1.0], [0.5, 1.5]], 1.8, 0.5).unwrap();
        let violated =
            (0..3).any(|i| same_type_repeat(&params, i, 0, 0) < same_type_repeat(&params, i, 1, 0));
        assert!(violated);
    }

    #[test]
    fn ratio_form_matches_analogical_predict() {
        let rule = AnalogicalRule::new(flat_params(3, 0.5, 0.25));
        let h = TypedHistory::from_indices(
            3,
            2,
            vec![0, 0, 1, 0, 0, 0, 0, 2],
            vec![0, 0, 0, 1, 1, 1, 1, 1],
        )
        .unwrap();
        let direct = rule.predict(&h, 0).unwrap();
        let ratio = crate::rule::predictive_from_joint(&rule, &h, 0).unwrap();
        assert!(direct.sup_distance(&ratio) < 1e-12);
        assert!((direct[0] - 5.0 / 8.5).abs() < 1e-15);
    }
}
