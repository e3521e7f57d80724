//! Observation histories and their sufficient statistics.
//!
//! A [`TypedHistory`] is the universal input to every predictive rule: a
//! finite record of (outcome, type) pairs. Histories keep the full ordered
//! sequences rather than just counts, so order-sensitivity of a rule can be
//! tested instead of assumed. [`CountStatistics`] extracts the count table
//! `n_ij` (outcome `i` of type `j`) along with its marginals.

use crate::error::{InductiveError, Result};

/// An immutable record of paired outcome and type observations.
///
/// Appending produces a new history; existing values are never mutated.
/// Indices are validated against the declared outcome/type counts at
/// construction, so downstream code can treat a history as well formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedHistory {
    outcome_count: usize,
    type_count: usize,
    outcomes: Vec<usize>,
    types: Vec<usize>,
}

impl TypedHistory {
    /// An empty history over `outcome_count` outcomes and `type_count` types.
    pub fn empty(outcome_count: usize, type_count: usize) -> Result<Self> {
        if outcome_count < 2 {
            return Err(InductiveError::InvalidInput(
                "history needs at least two outcomes".into(),
            ));
        }
        if type_count < 1 {
            return Err(InductiveError::InvalidInput(
                "history needs at least one type".into(),
            ));
        }
        Ok(Self {
            outcome_count,
            type_count,
            outcomes: Vec::new(),
            types: Vec::new(),
        })
    }

    /// Builds a history from parallel index sequences.
    pub fn from_indices(
        outcome_count: usize,
        type_count: usize,
        outcomes: Vec<usize>,
        types: Vec<usize>,
    ) -> Result<Self> {
        if outcomes.len() != types.len() {
            return Err(InductiveError::InvalidInput(format!(
                "outcome sequence has length {} but type sequence has length {}",
                outcomes.len(),
                types.len()
            )));
        }
        let mut h = Self::empty(outcome_count, type_count)?;
        for (&o, &t) in outcomes.iter().zip(&types) {
            check_indices(outcome_count, type_count, o, t)?;
        }
        h.outcomes = outcomes;
        h.types = types;
        Ok(h)
    }

    /// A new history extending this one by a single observation.
    pub fn with_observation(&self, outcome: usize, ty: usize) -> Result<Self> {
        check_indices(self.outcome_count, self.type_count, outcome, ty)?;
        let mut next = self.clone();
        next.outcomes.push(outcome);
        next.types.push(ty);
        Ok(next)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcome_count(&self) -> usize {
        self.outcome_count
    }

    pub fn type_count(&self) -> usize {
        self.type_count
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    /// Iterates over (outcome, type) pairs in observation order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.outcomes
            .iter()
            .copied()
            .zip(self.types.iter().copied())
    }
}

fn check_indices(outcome_count: usize, type_count: usize, outcome: usize, ty: usize) -> Result<()> {
    if outcome >= outcome_count {
        return Err(InductiveError::InvalidInput(format!(
            "outcome index {outcome} out of range (< {outcome_count})"
        )));
    }
    if ty >= type_count {
        return Err(InductiveError::InvalidInput(format!(
            "type index {ty} out of range (< {type_count})"
        )));
    }
    Ok(())
}

/// The sufficient statistics of a history: the table `n_ij` of outcome `i`
/// observations of type `j`, per-type totals `N_j`, per-outcome totals
/// `n_i`, and the grand total `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountStatistics {
    counts: Vec<Vec<usize>>, // counts[i][j] = n_ij
    type_totals: Vec<usize>,
    outcome_totals: Vec<usize>,
    total: usize,
}

impl CountStatistics {
    /// All-zero statistics for the given dimensions.
    pub fn zero(outcome_count: usize, type_count: usize) -> Result<Self> {
        if outcome_count < 2 || type_count < 1 {
            return Err(InductiveError::InvalidInput(
                "count table needs at least two outcomes and one type".into(),
            ));
        }
        Ok(Self {
            counts: vec![vec![0; type_count]; outcome_count],
            type_totals: vec![0; type_count],
            outcome_totals: vec![0; outcome_count],
            total: 0,
        })
    }

    /// Tallies a history.
    pub fn from_history(history: &TypedHistory) -> Self {
        let mut stats = Self::zero(history.outcome_count(), history.type_count())
            .expect("history dimensions are valid");
        for (outcome, ty) in history.iter() {
            stats
                .observe(outcome, ty)
                .expect("history indices are valid");
        }
        stats
    }

    /// Adds one observation in place. Used to maintain statistics
    /// incrementally instead of re-tallying a growing history.
    pub fn observe(&mut self, outcome: usize, ty: usize) -> Result<()> {
        check_indices(self.outcome_count(), self.type_count(), outcome, ty)?;
        self.counts[outcome][ty] += 1;
        self.type_totals[ty] += 1;
        self.outcome_totals[outcome] += 1;
        self.total += 1;
        Ok(())
    }

    pub fn outcome_count(&self) -> usize {
        self.counts.len()
    }

    pub fn type_count(&self) -> usize {
        self.type_totals.len()
    }

    /// `n_ij`: observations of outcome `i` with type `j`.
    pub fn count(&self, outcome: usize, ty: usize) -> usize {
        self.counts[outcome][ty]
    }

    /// `N_j`: total observations of type `j`.
    pub fn type_total(&self, ty: usize) -> usize {
        self.type_totals[ty]
    }

    /// `n_i`: total observations of outcome `i`, pooled over types.
    pub fn outcome_total(&self, outcome: usize) -> usize {
        self.outcome_totals[outcome]
    }

    /// `n`: total number of observations.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Verifies the marginal identities; used by tests.
    pub fn is_consistent(&self) -> bool {
        let k = self.outcome_count();
        let m = self.type_count();
        for j in 0..m {
            if (0..k).map(|i| self.counts[i][j]).sum::<usize>() != self.type_totals[j] {
                return false;
            }
        }
        for i in 0..k {
            if self.counts[i].iter().sum::<usize>() != self.outcome_totals[i] {
                return false;
            }
        }
        self.type_totals.iter().sum::<usize>() == self.total
    }
}

/// Tallies the sufficient statistics of a history.
pub fn counts_from_history(history: &TypedHistory) -> CountStatistics {
    CountStatistics::from_history(history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_history_has_zero_counts() {
        let h = TypedHistory::empty(3, 2).unwrap();
        let stats = counts_from_history(&h);
        assert_eq!(stats.total(), 0);
        assert!(stats.is_consistent());
        for i in 0..3 {
            assert_eq!(stats.outcome_total(i), 0);
            for j in 0..2 {
                assert_eq!(stats.count(i, j), 0);
            }
        }
    }

    #[test]
    fn direct_count_example() {
        // outcomes (0,1,0), types (0,0,1)
        let h = TypedHistory::from_indices(2, 2, vec![0, 1, 0], vec![0, 0, 1]).unwrap();
        let stats = counts_from_history(&h);
        assert_eq!(stats.count(0, 0), 1);
        assert_eq!(stats.count(1, 0), 1);
        assert_eq!(stats.count(0, 1), 1);
        assert_eq!(stats.count(1, 1), 0);
        assert_eq!(stats.type_total(0), 2);
        assert_eq!(stats.type_total(1), 1);
        assert_eq!(stats.total(), 3);
        assert!(stats.is_consistent());
    }

    #[test]
    fn appending_is_a_new_value() {
        let h = TypedHistory::empty(2, 1).unwrap();
        let h2 = h.with_observation(1, 0).unwrap();
        assert_eq!(h.len(), 0);
        assert_eq!(h2.len(), 1);
        assert_eq!(h2.outcomes(), &[1]);
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let h = TypedHistory::empty(2, 2).unwrap();
        assert!(h.with_observation(2, 0).is_err());
        assert!(h.with_observation(0, 2).is_err());
        assert!(TypedHistory::from_indices(2, 1, vec![0, 1], vec![0]).is_err());
    }

    proptest! {
        // Σ_j N_j = length(h), and incremental tallying matches batch tallying.
        #[test]
        fn totals_partition_history_length(
            obs in proptest::collection::vec((0usize..3, 0usize..2), 0..40)
        ) {
            let outcomes: Vec<usize> = obs.iter().map(|p| p.0).collect();
            let types: Vec<usize> = obs.iter().map(|p| p.1).collect();
            let h = TypedHistory::from_indices(3, 2, outcomes, types).unwrap();
            let stats = counts_from_history(&h);
            prop_assert!(stats.is_consistent());
            prop_assert_eq!(
                (0..2).map(|j| stats.type_total(j)).sum::<usize>(),
                h.len()
            );

            let mut incremental = CountStatistics::zero(3, 2).unwrap();
            for (o, t) in h.iter() {
                incremental.observe(o, t).unwrap();
            }
            prop_assert_eq!(incremental, stats);
        }
    }
}
