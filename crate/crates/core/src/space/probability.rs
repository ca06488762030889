use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Event, RandomVariable, SpaceError};
use crate::ext::ExtReal;

/// Labeled atoms with strictly positive rational masses summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilitySpace {
    labels: Vec<String>,
    probs: Vec<BigRational>,
}

impl ProbabilitySpace {
    pub fn new(labels: Vec<String>, probs: Vec<BigRational>) -> Result<Self, SpaceError> {
        if labels.is_empty() {
            return Err(SpaceError::Empty);
        }
        if labels.len() != probs.len() {
            return Err(SpaceError::Mismatch(labels.len(), probs.len()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SpaceError::DuplicateLabel(l.clone()));
            }
        }
        for (l, p) in labels.iter().zip(&probs) {
            if !p.is_positive() {
                return Err(SpaceError::NullAtom(l.clone()));
            }
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return Err(SpaceError::NotNormalized(total.to_string()));
        }
        Ok(ProbabilitySpace { labels, probs })
    }

    /// `n` atoms labeled `a, b, c, …` (then `w26, w27, …`) with mass `1/n` each.
    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform space needs at least one atom");
        let p = BigRational::new(BigInt::one(), BigInt::from(n));
        ProbabilitySpace { labels: (0..n).map(default_label).collect(), probs: vec![p; n] }
    }

    /// Space with default labels and the given (validated) masses.
    pub fn with_probs(probs: Vec<BigRational>) -> Result<Self, SpaceError> {
        let labels = (0..probs.len()).map(default_label).collect();
        Self::new(labels, probs)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn prob_of_atom(&self, i: usize) -> &BigRational {
        &self.probs[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn prob(&self, event: &Event) -> BigRational {
        event.atoms().map(|i| self.probs[i].clone()).sum()
    }

    /// Probability-weighted sum under the extended-real conventions: a single
    /// infinite atom makes the sum infinite (opposite infinities cancel to 0).
    pub fn expectation(&self, x: &RandomVariable) -> ExtReal {
        x.values()
            .iter()
            .zip(&self.probs)
            .fold(ExtReal::Finite(BigRational::zero()), |acc, (v, p)| acc + v * &ExtReal::Finite(p.clone()))
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("w{i}")
    }
}
