//! Probability vectors over a finite outcome set.

use crate::error::{InductiveError, Result};

/// Tolerance for the sum-to-one check when validating a [`SimplexVector`].
pub const SIMPLEX_SUM_TOLERANCE: f64 = 1e-12;

/// A probability vector: entries in [0, 1] summing to one within
/// [`SIMPLEX_SUM_TOLERANCE`]. Values are stored exactly as given,
/// never renormalized, so identical inputs stay bit-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector {
    values: Vec<f64>,
}

impl SimplexVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(InductiveError::InvalidInput(
                "simplex vector must have at least one entry".into(),
            ));
        }
        let admissible = -SIMPLEX_SUM_TOLERANCE..=1.0 + SIMPLEX_SUM_TOLERANCE;
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || !admissible.contains(&v) {
                return Err(InductiveError::InvalidInput(format!(
                    "simplex entry {i} = {v} outside [0, 1]"
                )));
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_SUM_TOLERANCE {
            return Err(InductiveError::InvalidInput(format!(
                "simplex entries sum to {sum}, not 1"
            )));
        }
        Ok(Self { values })
    }

    /// The uniform distribution over `len` outcomes.
    pub fn uniform(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(InductiveError::InvalidInput(
                "uniform simplex needs at least one entry".into(),
            ));
        }
        Ok(Self {
            values: vec![1.0 / len as f64; len],
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sup-norm distance to another vector of the same length.
    pub fn sup_distance(&self, other: &SimplexVector) -> f64 {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for SimplexVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.values[index]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_vectors() {
        let s = SimplexVector::new(vec![0.25, 0.75]).unwrap();
        assert_eq!(s.values(), &[0.25, 0.75]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn rejects_bad_sums_and_entries() {
        assert!(SimplexVector::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexVector::new(vec![-0.1, 1.1]).is_err());
        assert!(SimplexVector::new(vec![f64::NAN, 1.0]).is_err());
        assert!(SimplexVector::new(vec![]).is_err());
    }

    #[test]
    fn uniform_is_uniform() {
        let s = SimplexVector::uniform(4).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.25));
    }

    #[test]
    fn sup_distance() {
        let a = SimplexVector::new(vec![0.5, 0.5]).unwrap();
        let b = SimplexVector::new(vec![0.2, 0.8]).unwrap();
        assert!((a.sup_distance(&b) - 0.3).abs() < 1e-15);
    }
}
