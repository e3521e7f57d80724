//! Verification engine for probabilistic symmetry postulates.
//!
//! Every check exhaustively enumerates finite sequences up to a length
//! bound, compares joint probabilities (or predictions) that the postulate
//! under test requires to be equal, and returns a [`SymmetryReport`] with
//! the maximal violation and replayable witnesses. Conditional equalities
//! are tested on full-sequence joints, which is equivalent under
//! regularity. Empirical limit behavior (Reichenbach's axiom and its
//! analogical replacement) is estimated by seeded simulation.

use std::collections::HashMap;

use crate::error::{InductiveError, Result};
use crate::history::TypedHistory;
use crate::rule::{joint_probability, PredictiveRule};
use crate::simplex::SimplexVector;
use crate::stream::{sample_stream, StreamConfig};

/// Caps on exhaustive enumeration. The defaults keep the largest check at
/// a few seconds; they are configuration, not constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_outcomes: usize,
    pub max_sequence_length: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_outcomes: 4,
            max_sequence_length: 7,
        }
    }
}

fn check_budget(k: usize, max_len: usize, budget: &EnumerationBudget) -> Result<()> {
    if k > budget.max_outcomes {
        return Err(InductiveError::ResourceLimit(format!(
            "{k} outcomes exceed the enumeration budget of {}",
            budget.max_outcomes
        )));
    }
    if max_len > budget.max_sequence_length {
        return Err(InductiveError::ResourceLimit(format!(
            "sequence length {max_len} exceeds the enumeration budget of {}",
            budget.max_sequence_length
        )));
    }
    Ok(())
}

/// A recorded violation (or near-violation) that can be re-evaluated
/// against the rule that produced it.
#[derive(Debug, Clone)]
pub enum Witness {
    /// Two full sequences whose joints the postulate requires to be equal.
    JointPair {
        left_outcomes: Vec<usize>,
        left_types: Vec<usize>,
        left_probability: f64,
        right_outcomes: Vec<usize>,
        right_types: Vec<usize>,
        right_probability: f64,
    },
    /// Two histories whose predictions for one outcome the postulate
    /// requires to be equal.
    PredictionPair {
        left_outcomes: Vec<usize>,
        left_types: Vec<usize>,
        right_outcomes: Vec<usize>,
        right_types: Vec<usize>,
        outcome: usize,
        next_type: usize,
        left_probability: f64,
        right_probability: f64,
    },
    /// One history evaluated with two different stipulated future-type
    /// annotations.
    FutureTypePair {
        outcomes: Vec<usize>,
        types: Vec<usize>,
        next_type: usize,
        outcome: usize,
        left_futures: Vec<usize>,
        right_futures: Vec<usize>,
        left_probability: f64,
        right_probability: f64,
    },
}

impl Witness {
    /// |left − right| as recorded.
    pub fn violation(&self) -> f64 {
        let (l, r) = self.recorded();
        (l - r).abs()
    }

    /// The recorded probability pair.
    pub fn recorded(&self) -> (f64, f64) {
        match self {
            Witness::JointPair {
                left_probability,
                right_probability,
                ..
            }
            | Witness::PredictionPair {
                left_probability,
                right_probability,
                ..
            }
            | Witness::FutureTypePair {
                left_probability,
                right_probability,
                ..
            } => (*left_probability, *right_probability),
        }
    }

    /// Recomputes both probabilities from the rule. A sound witness
    /// reproduces the recorded pair.
    pub fn replay(&self, rule: &dyn PredictiveRule) -> Result<(f64, f64)> {
        match self {
            Witness::JointPair {
                left_outcomes,
                left_types,
                right_outcomes,
                right_types,
                ..
            } => Ok((
                joint_probability(rule, left_outcomes, left_types)?,
                joint_probability(rule, right_outcomes, right_types)?,
            )),
            Witness::PredictionPair {
                left_outcomes,
                left_types,
                right_outcomes,
                right_types,
                outcome,
                next_type,
                ..
            } => {
                let left = TypedHistory::from_indices(
                    rule.outcome_count(),
                    rule.type_count(),
                    left_outcomes.clone(),
                    left_types.clone(),
                )?;
                let right = TypedHistory::from_indices(
                    rule.outcome_count(),
                    rule.type_count(),
                    right_outcomes.clone(),
                    right_types.clone(),
                )?;
                Ok((
                    rule.predict(&left, *next_type)?[*outcome],
                    rule.predict(&right, *next_type)?[*outcome],
                ))
            }
            Witness::FutureTypePair {
                outcomes,
                types,
                next_type,
                outcome,
                left_futures,
                right_futures,
                ..
            } => {
                let history = TypedHistory::from_indices(
                    rule.outcome_count(),
                    rule.type_count(),
                    outcomes.clone(),
                    types.clone(),
                )?;
                Ok((
                    rule.predict_with_future(&history, *next_type, left_futures)?[*outcome],
                    rule.predict_with_future(&history, *next_type, right_futures)?[*outcome],
                ))
            }
        }
    }

    fn render(&self, out: &mut String) {
        use std::fmt::Write;
        match self {
            Witness::JointPair {
                left_outcomes,
                left_types,
                left_probability,
                right_outcomes,
                right_types,
                right_probability,
            } => {
                let _ = writeln!(
                    out,
                    "    left:  outcomes={left_outcomes:?} types={left_types:?} p={left_probability}"
                );
                let _ = writeln!(
                    out,
                    "    right: outcomes={right_outcomes:?} types={right_types:?} p={right_probability}"
                );
            }
            Witness::PredictionPair {
                left_outcomes,
                left_types,
                right_outcomes,
                right_types,
                outcome,
                next_type,
                left_probability,
                right_probability,
            } => {
                let _ = writeln!(
                    out,
                    "    prediction of outcome {outcome} for next type {next_type}:"
                );
                let _ = writeln!(
                    out,
                    "    left:  outcomes={left_outcomes:?} types={left_types:?} p={left_probability}"
                );
                let _ = writeln!(
                    out,
                    "    right: outcomes={right_outcomes:?} types={right_types:?} p={right_probability}"
                );
            }
            Witness::FutureTypePair {
                outcomes,
                types,
                next_type,
                outcome,
                left_futures,
                right_futures,
                left_probability,
                right_probability,
            } => {
                let _ = writeln!(
                    out,
                    "    history outcomes={outcomes:?} types={types:?}, outcome {outcome}, next type {next_type}:"
                );
                let _ = writeln!(
                    out,
                    "    futures {left_futures:?} give p={left_probability}; futures {right_futures:?} give p={right_probability}"
                );
            }
        }
    }
}

/// Result of one postulate check.
#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub postulate: String,
    pub tolerance: f64,
    pub max_violation: f64,
    pub passed: bool,
    /// Number of required equalities examined.
    pub comparisons: usize,
    /// Up to ten worst violations, sorted descending.
    pub witnesses: Vec<Witness>,
}

impl SymmetryReport {
    /// One structured-text record: name, tolerance, max violation,
    /// verdict, witness list.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "postulate: {}", self.postulate);
        let _ = writeln!(out, "tolerance: {}", self.tolerance);
        let _ = writeln!(out, "max_violation: {}", self.max_violation);
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "comparisons: {}", self.comparisons);
        let _ = writeln!(out, "witnesses: {}", self.witnesses.len());
        for (rank, witness) in self.witnesses.iter().enumerate() {
            let _ = writeln!(out, "  {}. violation = {}", rank + 1, witness.violation());
            witness.render(&mut out);
        }
        out
    }
}

const MAX_WITNESSES: usize = 10;

struct Collector {
    tolerance: f64,
    max_violation: f64,
    comparisons: usize,
    witnesses: Vec<Witness>,
}

impl Collector {
    fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            max_violation: 0.0,
            comparisons: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, violation: f64, witness: impl FnOnce() -> Witness) {
        self.comparisons += 1;
        if violation > self.max_violation {
            self.max_violation = violation;
        }
        if violation > self.tolerance {
            let worse_than_last = self
                .witnesses
                .last()
                .map(|w| violation > w.violation())
                .unwrap_or(true);
            if self.witnesses.len() < MAX_WITNESSES || worse_than_last {
                let w = witness();
                let position = self
                    .witnesses
                    .partition_point(|existing| existing.violation() >= violation);
                self.witnesses.insert(position, w);
                self.witnesses.truncate(MAX_WITNESSES);
            }
        }
    }

    fn finish(self, postulate: &str) -> SymmetryReport {
        SymmetryReport {
            postulate: postulate.to_string(),
            tolerance: self.tolerance,
            max_violation: self.max_violation,
            passed: self.max_violation <= self.tolerance,
            comparisons: self.comparisons,
            witnesses: self.witnesses,
        }
    }
}

fn decode_sequence(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut seq = vec![0usize; len];
    for slot in seq.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    seq
}

/// Joint probability of every outcome sequence for one fixed type
/// sequence, computed by sharing prefix predictions along a depth-first
/// walk. Index order: the first observation is the most significant
/// base-k digit.
fn joints_for_type_sequence(
    rule: &dyn PredictiveRule,
    k: usize,
    types: &[usize],
) -> Result<Vec<f64>> {
    struct Walk<'a> {
        rule: &'a dyn PredictiveRule,
        k: usize,
        types: &'a [usize],
        joints: Vec<f64>,
    }

    impl Walk<'_> {
        fn descend(
            &mut self,
            history: &TypedHistory,
            depth: usize,
            index: usize,
            probability: f64,
        ) -> Result<()> {
            if depth == self.types.len() {
                self.joints[index] = probability;
                return Ok(());
            }
            let prediction = self.rule.predict(history, self.types[depth])?;
            for outcome in 0..self.k {
                let extended = history.with_observation(outcome, self.types[depth])?;
                self.descend(
                    &extended,
                    depth + 1,
                    index * self.k + outcome,
                    probability * prediction[outcome],
                )?;
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        rule,
        k,
        types,
        joints: vec![0.0f64; k.pow(types.len() as u32)],
    };
    let root = TypedHistory::empty(rule.outcome_count(), rule.type_count())?;
    walk.descend(&root, 0, 0, 1.0)?;
    Ok(walk.joints)
}

fn require_outcome_count(rule: &dyn PredictiveRule, k: usize) -> Result<()> {
    if rule.outcome_count() != k {
        return Err(InductiveError::InvalidInput(format!(
            "rule predicts over {} outcomes, check was asked for {k}",
            rule.outcome_count()
        )));
    }
    Ok(())
}

fn require_type_count(rule: &dyn PredictiveRule, m: usize) -> Result<()> {
    if rule.type_count() != m {
        return Err(InductiveError::InvalidInput(format!(
            "check needs a rule over {m} type(s), rule has {}",
            rule.type_count()
        )));
    }
    Ok(())
}

/// Exchangeability: the joint probability of every outcome sequence of
/// length ≤ `max_len` is invariant under permutations. Single-type rules
/// only. Sequences are grouped by their outcome multiset and the extremal
/// joints within each group are compared.
pub fn check_exchangeability(
    rule: &dyn PredictiveRule,
    k: usize,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport> {
    require_outcome_count(rule, k)?;
    require_type_count(rule, 1)?;
    check_budget(k, max_len, budget)?;
    let mut collector = Collector::new(tolerance);
    for len in 1..=max_len {
        let types = vec![0usize; len];
        let joints = joints_for_type_sequence(rule, k, &types)?;
        let mut groups: HashMap<Vec<usize>, (f64, usize, f64, usize)> = HashMap::new();
        for (index, &p) in joints.iter().enumerate() {
            let mut key = decode_sequence(index, k, len);
            key.sort_unstable();
            groups
                .entry(key)
                .and_modify(|(min, min_i, max, max_i)| {
                    if p < *min {
                        *min = p;
                        *min_i = index;
                    }
                    if p > *max {
                        *max = p;
                        *max_i = index;
                    }
                })
                .or_insert((p, index, p, index));
        }
        for (min, min_index, max, max_index) in groups.into_values() {
            let types = types.clone();
            collector.record(max - min, || Witness::JointPair {
                left_outcomes: decode_sequence(max_index, k, len),
                left_types: types.clone(),
                left_probability: max,
                right_outcomes: decode_sequence(min_index, k, len),
                right_types: types,
                right_probability: min,
            });
        }
    }
    Ok(collector.finish("exchangeability"))
}

/// Partial exchangeability: for every type sequence, the joint is
/// invariant under permutations of the outcomes occupying positions of
/// the same type. Two-type rules.
pub fn check_partial_exchangeability(
    rule: &dyn PredictiveRule,
    k: usize,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport> {
    require_outcome_count(rule, k)?;
    require_type_count(rule, 2)?;
    check_budget(k, max_len, budget)?;
    let mut collector = Collector::new(tolerance);
    for len in 1..=max_len {
        for type_index in 0..2usize.pow(len as u32) {
            let types = decode_sequence(type_index, 2, len);
            let joints = joints_for_type_sequence(rule, k, &types)?;
            // key: the outcome multiset at each type's positions
            let mut groups: HashMap<[Vec<usize>; 2], (f64, usize, f64, usize)> = HashMap::new();
            for (index, &p) in joints.iter().enumerate() {
                let seq = decode_sequence(index, k, len);
                let mut key = [Vec::new(), Vec::new()];
                for (&outcome, &ty) in seq.iter().zip(&types) {
                    key[ty].push(outcome);
                }
                key[0].sort_unstable();
                key[1].sort_unstable();
                groups
                    .entry(key)
                    .and_modify(|(min, min_i, max, max_i)| {
                        if p < *min {
                            *min = p;
                            *min_i = index;
                        }
                        if p > *max {
                            *max = p;
                            *max_i = index;
                        }
                    })
                    .or_insert((p, index, p, index));
            }
            for (min, min_index, max, max_index) in groups.into_values() {
                let types = types.clone();
                collector.record(max - min, || Witness::JointPair {
                    left_outcomes: decode_sequence(max_index, k, len),
                    left_types: types.clone(),
                    left_probability: max,
                    right_outcomes: decode_sequence(min_index, k, len),
                    right_types: types,
                    right_probability: min,
                });
            }
        }
    }
    Ok(collector.finish("partial-exchangeability"))
}

fn for_each_typed_history(
    k: usize,
    len: usize,
    mut f: impl FnMut(&[usize], &[usize]) -> Result<()>,
) -> Result<()> {
    let base = 2 * k;
    let cells = base.pow(len as u32);
    for index in 0..cells {
        let digits = decode_sequence(index, base, len);
        let outcomes: Vec<usize> = digits.iter().map(|d| d % k).collect();
        let types: Vec<usize> = digits.iter().map(|d| d / k).collect();
        f(&outcomes, &types)?;
    }
    Ok(())
}

/// Generalized partial exchangeability, the weakening that admits
/// persistent analogy: after any history,
///
/// - the three-step extensions (i,k,j) and (j,k,i) with types (s,t,s) have
///   equal probability whenever the interleaved outcome k differs from
///   both i and j, and
/// - the two-step same-type extensions (i,j) and (j,i) have equal
///   probability.
///
/// `max_len` bounds the total sequence length, history included.
pub fn check_generalized_partial_exchangeability(
    rule: &dyn PredictiveRule,
    k: usize,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport> {
    require_outcome_count(rule, k)?;
    require_type_count(rule, 2)?;
    check_budget(k, max_len, budget)?;
    let mut collector = Collector::new(tolerance);

    // three-step swap condition
    for hist_len in 0..=max_len.saturating_sub(3) {
        for_each_typed_history(k, hist_len, |outcomes, types| {
            for s in 0..2usize {
                for t in 0..2usize {
                    for i in 0..k {
                        for j in (i + 1)..k {
                            for mid in (0..k).filter(|&m| m != i && m != j) {
                                let mut left_o = outcomes.to_vec();
                                left_o.extend([i, mid, j]);
                                let mut right_o = outcomes.to_vec();
                                right_o.extend([j, mid, i]);
                                let mut ext_t = types.to_vec();
                                ext_t.extend([s, t, s]);
                                let left = joint_probability(rule, &left_o, &ext_t)?;
                                let right = joint_probability(rule, &right_o, &ext_t)?;
                                collector.record((left - right).abs(), || Witness::JointPair {
                                    left_outcomes: left_o.clone(),
                                    left_types: ext_t.clone(),
                                    left_probability: left,
                                    right_outcomes: right_o.clone(),
                                    right_types: ext_t.clone(),
                                    right_probability: right,
                                });
                            }
                        }
                    }
                }
            }
            Ok(())
        })?;
    }

    // two-step same-type swap condition
    for hist_len in 0..=max_len.saturating_sub(2) {
        for_each_typed_history(k, hist_len, |outcomes, types| {
            for s in 0..2usize {
                for i in 0..k {
                    for j in (i + 1)..k {
                        let mut left_o = outcomes.to_vec();
                        left_o.extend([i, j]);
                        let mut right_o = outcomes.to_vec();
                        right_o.extend([j, i]);
                        let mut ext_t = types.to_vec();
                        ext_t.extend([s, s]);
                        let left = joint_probability(rule, &left_o, &ext_t)?;
                        let right = joint_probability(rule, &right_o, &ext_t)?;
                        collector.record((left - right).abs(), || Witness::JointPair {
                            left_outcomes: left_o.clone(),
                            left_types: ext_t.clone(),
                            left_probability: left,
                            right_outcomes: right_o.clone(),
                            right_types: ext_t.clone(),
                            right_probability: right,
                        });
                    }
                }
            }
            Ok(())
        })?;
    }

    Ok(collector.finish("generalized-partial-exchangeability"))
}

/// Which sufficientness postulate to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SufficientnessVariant {
    /// Predictions for outcome i depend only on (n_i, n). Single-type.
    Classic,
    /// Predictions for outcome i of a given next type depend only on
    /// (n_i0, n_i1, N_0, N_1). Two-type.
    Modified,
}

/// Groups histories by the statistic the postulate allows the rule to see
/// and checks that predictions agree within each group.
pub fn check_sufficientness(
    rule: &dyn PredictiveRule,
    variant: SufficientnessVariant,
    k: usize,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport> {
    require_outcome_count(rule, k)?;
    check_budget(k, max_len, budget)?;
    type Extrema = (f64, (Vec<usize>, Vec<usize>), f64, (Vec<usize>, Vec<usize>));
    let mut collector = Collector::new(tolerance);

    match variant {
        SufficientnessVariant::Classic => {
            require_type_count(rule, 1)?;
            let mut groups: HashMap<(usize, usize, usize), Extrema> = HashMap::new();
            for len in 0..=max_len {
                for index in 0..k.pow(len as u32) {
                    let outcomes = decode_sequence(index, k, len);
                    let types = vec![0usize; len];
                    let history =
                        TypedHistory::from_indices(k, 1, outcomes.clone(), types.clone())?;
                    let prediction = rule.predict(&history, 0)?;
                    for i in 0..k {
                        let n_i = outcomes.iter().filter(|&&o| o == i).count();
                        let key = (i, n_i, len);
                        let p = prediction[i];
                        let at = (outcomes.clone(), types.clone());
                        groups
                            .entry(key)
                            .and_modify(|(min, min_h, max, max_h)| {
                                if p < *min {
                                    *min = p;
                                    *min_h = at.clone();
                                }
                                if p > *max {
                                    *max = p;
                                    *max_h = at.clone();
                                }
                            })
                            .or_insert_with(|| (p, at.clone(), p, at));
                    }
                }
            }
            for ((i, _, _), (min, min_h, max, max_h)) in groups {
                collector.record(max - min, || Witness::PredictionPair {
                    left_outcomes: max_h.0,
                    left_types: max_h.1,
                    right_outcomes: min_h.0,
                    right_types: min_h.1,
                    outcome: i,
                    next_type: 0,
                    left_probability: max,
                    right_probability: min,
                });
            }
        }
        SufficientnessVariant::Modified => {
            require_type_count(rule, 2)?;
            type Key = (usize, usize, usize, usize, usize, usize);
            let mut groups: HashMap<Key, Extrema> = HashMap::new();
            for len in 0..=max_len {
                for_each_typed_history(k, len, |outcomes, types| {
                    let history =
                        TypedHistory::from_indices(k, 2, outcomes.to_vec(), types.to_vec())?;
                    let n0 = types.iter().filter(|&&t| t == 0).count();
                    let n1 = len - n0;
                    for next_type in 0..2usize {
                        let prediction = rule.predict(&history, next_type)?;
                        for i in 0..k {
                            let n_i0 = outcomes
                                .iter()
                                .zip(types)
                                .filter(|&(&o, &t)| o == i && t == 0)
                                .count();
                            let n_i1 = outcomes
                                .iter()
                                .zip(types)
                                .filter(|&(&o, &t)| o == i && t == 1)
                                .count();
                            let key = (i, next_type, n_i0, n_i1, n0, n1);
                            let p = prediction[i];
                            let at = (outcomes.to_vec(), types.to_vec());
                            groups
                                .entry(key)
                                .and_modify(|(min, min_h, max, max_h)| {
                                    if p < *min {
                                        *min = p;
                                        *min_h = at.clone();
                                    }
                                    if p > *max {
                                        *max = p;
                                        *max_h = at.clone();
                                    }
                                })
                                .or_insert_with(|| (p, at.clone(), p, at));
                        }
                    }
                    Ok(())
                })?;
            }
            for ((i, next_type, ..), (min, min_h, max, max_h)) in groups {
                collector.record(max - min, || Witness::PredictionPair {
                    left_outcomes: max_h.0,
                    left_types: max_h.1,
                    right_outcomes: min_h.0,
                    right_types: min_h.1,
                    outcome: i,
                    next_type,
                    left_probability: max,
                    right_probability: min,
                });
            }
        }
    }

    let name = match variant {
        SufficientnessVariant::Classic => "sufficientness-classic",
        SufficientnessVariant::Modified => "sufficientness-modified",
    };
    Ok(collector.finish(name))
}

/// Future types carry no information about the next outcome: predictions
/// must be unchanged when one or two additional future types are
/// stipulated beyond the next one. Two-type rules.
pub fn check_future_type_independence(
    rule: &dyn PredictiveRule,
    k: usize,
    max_len: usize,
    tolerance: f64,
    budget: &EnumerationBudget,
) -> Result<SymmetryReport> {
    require_outcome_count(rule, k)?;
    require_type_count(rule, 2)?;
    check_budget(k, max_len, budget)?;
    let stipulations: [&[usize]; 6] = [&[0], &[1], &[0, 0], &[0, 1], &[1, 0], &[1, 1]];
    let mut collector = Collector::new(tolerance);
    for len in 0..=max_len {
        for_each_typed_history(k, len, |outcomes, types| {
            let history = TypedHistory::from_indices(k, 2, outcomes.to_vec(), types.to_vec())?;
            for next_type in 0..2usize {
                let baseline = rule.predict_with_future(&history, next_type, &[])?;
                for futures in stipulations {
                    let stipulated = rule.predict_with_future(&history, next_type, futures)?;
                    let mut worst = 0.0;
                    let mut worst_outcome = 0;
                    for i in 0..k {
                        let gap = (baseline[i] - stipulated[i]).abs();
                        if gap > worst {
                            worst = gap;
                            worst_outcome = i;
                        }
                    }
                    collector.record(worst, || Witness::FutureTypePair {
                        outcomes: outcomes.to_vec(),
                        types: types.to_vec(),
                        next_type,
                        outcome: worst_outcome,
                        left_futures: Vec::new(),
                        right_futures: futures.to_vec(),
                        left_probability: baseline[worst_outcome],
                        right_probability: stipulated[worst_outcome],
                    });
                }
            }
            Ok(())
        })?;
    }
    Ok(collector.finish("future-type-independence"))
}

/// A named candidate limit for the predictive trajectory, one
/// distribution per type.
#[derive(Debug, Clone)]
pub struct CandidateLimit {
    pub name: String,
    pub per_type: Vec<SimplexVector>,
}

/// The predictive trajectory of one type at one checkpoint.
#[derive(Debug, Clone)]
pub struct TypeTrajectory {
    pub next_type: usize,
    pub prediction: SimplexVector,
    /// Empirical outcome frequency within this type so far; `None` until
    /// the type has been observed.
    pub empirical_frequency: Option<SimplexVector>,
    /// Sup distance between prediction and empirical frequency.
    pub distance_to_frequency: Option<f64>,
    /// Sup distances to each supplied candidate limit, in order.
    pub candidate_distances: Vec<f64>,
}

/// Trajectory snapshot after `step` observations.
#[derive(Debug, Clone)]
pub struct ConvergencePoint {
    pub step: usize,
    pub per_type: Vec<TypeTrajectory>,
}

/// Result of a convergence study along a simulated stream.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub horizon: usize,
    pub candidate_names: Vec<String>,
    pub points: Vec<ConvergencePoint>,
}

impl ConvergenceReport {
    pub fn final_point(&self) -> &ConvergencePoint {
        self.points.last().expect("at least one checkpoint")
    }

    /// Name of the closest limit for a type at the horizon, among the
    /// empirical per-type frequency and the supplied candidates.
    pub fn approached(&self, next_type: usize) -> Option<(String, f64)> {
        let trajectory = &self.final_point().per_type[next_type];
        let mut best: Option<(String, f64)> = trajectory
            .distance_to_frequency
            .map(|d| ("empirical-frequency".to_string(), d));
        for (name, &d) in self
            .candidate_names
            .iter()
            .zip(&trajectory.candidate_distances)
        {
            if best.as_ref().map(|(_, b)| d < *b).unwrap_or(true) {
                best = Some((name.clone(), d));
            }
        }
        best
    }
}

fn checkpoint_steps(horizon: usize) -> Vec<usize> {
    let mut steps = Vec::new();
    let mut decade = 1usize;
    loop {
        for mult in [1usize, 2, 5] {
            let step = mult.saturating_mul(decade);
            if step < horizon {
                steps.push(step);
            }
        }
        match decade.checked_mul(10) {
            Some(next) if next <= horizon => decade = next,
            _ => break,
        }
    }
    steps.push(horizon);
    steps
}

/// Simulates an i.i.d. stream and records, at geometric checkpoints, the
/// rule's per-type predictions against the empirical per-type frequencies
/// (Reichenbach's candidate limit) and any supplied alternatives, such as
/// the convex-combination limit of the analogical rule.
pub fn estimate_reichenbach_limit(
    rule: &dyn PredictiveRule,
    stream: &StreamConfig,
    horizon: usize,
    seed: u64,
    candidates: &[CandidateLimit],
) -> Result<ConvergenceReport> {
    if horizon == 0 {
        return Err(InductiveError::InvalidInput(
            "horizon must be positive".into(),
        ));
    }
    if stream.type_count() != rule.type_count() || stream.outcome_count() != rule.outcome_count() {
        return Err(InductiveError::InvalidInput(format!(
            "stream over {} outcomes / {} types does not match rule ({} / {})",
            stream.outcome_count(),
            stream.type_count(),
            rule.outcome_count(),
            rule.type_count()
        )));
    }
    let k = rule.outcome_count();
    let m = rule.type_count();
    for candidate in candidates {
        if candidate.per_type.len() != m || candidate.per_type.iter().any(|p| p.len() != k) {
            return Err(InductiveError::InvalidInput(format!(
                "candidate limit {:?} does not match the rule's dimensions",
                candidate.name
            )));
        }
    }

    let sample = sample_stream(stream, horizon, seed);
    let mut per_type_counts = vec![vec![0usize; k]; m];
    let mut type_totals = vec![0usize; m];
    let checkpoints = checkpoint_steps(horizon);
    let mut points = Vec::with_capacity(checkpoints.len());
    let mut next_checkpoint = 0usize;

    for step in 1..=horizon {
        let (outcome, ty) = (sample.outcomes[step - 1], sample.types[step - 1]);
        per_type_counts[ty][outcome] += 1;
        type_totals[ty] += 1;
        if step == checkpoints[next_checkpoint] {
            next_checkpoint += 1;
            let history = TypedHistory::from_indices(
                k,
                m,
                sample.outcomes[..step].to_vec(),
                sample.types[..step].to_vec(),
            )?;
            let mut per_type = Vec::with_capacity(m);
            for next_type in 0..m {
                let prediction = rule.predict(&history, next_type)?;
                let empirical = if type_totals[next_type] > 0 {
                    let total = type_totals[next_type] as f64;
                    Some(SimplexVector::new(
                        per_type_counts[next_type]
                            .iter()
                            .map(|&c| c as f64 / total)
                            .collect(),
                    )?)
                } else {
                    None
                };
                let distance_to_frequency = empirical.as_ref().map(|f| prediction.sup_distance(f));
                let candidate_distances = candidates
                    .iter()
                    .map(|c| prediction.sup_distance(&c.per_type[next_type]))
                    .collect();
                per_type.push(TypeTrajectory {
                    next_type,
                    prediction,
                    empirical_frequency: empirical,
                    distance_to_frequency,
                    candidate_distances,
                });
            }
            points.push(ConvergencePoint { step, per_type });
        }
    }

    Ok(ConvergenceReport {
        horizon,
        candidate_names: candidates.iter().map(|c| c.name.clone()).collect(),
        points,
    })
}
