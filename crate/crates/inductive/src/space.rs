//! Labelled outcome and type spaces.
//!
//! Rules and histories work with integer indices; spaces attach labels for
//! serialization and the CLI. Outcomes need at least two values (with a
//! single value there is nothing to predict); a single type recovers the
//! type-free setting.

use crate::error::{InductiveError, Result};

fn check_distinct(labels: &[String], what: &str) -> Result<()> {
    for i in 0..labels.len() {
        for j in (i + 1)..labels.len() {
            if labels[i] == labels[j] {
                return Err(InductiveError::InvalidInput(format!(
                    "duplicate {what} label {:?}",
                    labels[i]
                )));
            }
        }
    }
    Ok(())
}

/// The finite set of values an observation can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSpace {
    labels: Vec<String>,
}

impl OutcomeSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(InductiveError::InvalidInput(
                "outcome space needs at least two outcomes".into(),
            ));
        }
        check_distinct(&labels, "outcome")?;
        Ok(Self { labels })
    }

    /// Space with default labels `o0..o{k-1}`.
    pub fn indexed(count: usize) -> Result<Self> {
        Self::new((0..count).map(|i| format!("o{i}")).collect())
    }

    pub fn count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Result<&str> {
        self.labels.get(index).map(String::as_str).ok_or_else(|| {
            InductiveError::InvalidInput(format!("outcome index {index} out of range"))
        })
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The finite set of types an observation can carry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSpace {
    labels: Vec<String>,
}

impl TypeSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(InductiveError::InvalidInput(
                "type space needs at least one type".into(),
            ));
        }
        check_distinct(&labels, "type")?;
        Ok(Self { labels })
    }

    /// Space with default labels `t0..t{m-1}`.
    pub fn indexed(count: usize) -> Result<Self> {
        Self::new((0..count).map(|i| format!("t{i}")).collect())
    }

    pub fn count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Result<&str> {
        self.labels
            .get(index)
            .map(String::as_str)
            .ok_or_else(|| InductiveError::InvalidInput(format!("type index {index} out of range")))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
