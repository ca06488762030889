//! Conditional indicators: maps from random variables to ℋ-measurable random
//! variables whose value sits between the conditional essential infimum and
//! supremum and which fix every ℋ-measurable input.
//!
//! An [`Indicator`] is data: a target partition, a domain predicate, an
//! evaluation closure and a set of *declared* structural [`Flag`]s. Nothing is
//! verified at construction; the `check_*` functions in [`checks`] produce
//! [`CheckReport`](crate::report::CheckReport)s instead.

mod builtins;
pub mod checks;
mod combinators;

pub use builtins::{condexp, condexp_ext, essinf, essinf_cond, esssup, esssup_cond, linear, weighted};
pub use combinators::{
    dual, family_inf, family_sup, lower_extension, lower_extension_indicator, mix_self_dual, upper_extension,
    upper_extension_indicator,
};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::space::{Partition, RandomVariable};

pub type EvalFn = dyn Fn(&RandomVariable) -> RandomVariable + Send + Sync;
pub type DomainFn = dyn Fn(&RandomVariable) -> bool + Send + Sync;

/// Structural properties an indicator may declare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Increasing,
    TranslationInvariant,
    PosHomogeneous,
    Linear,
    Additive,
    Subadditive,
    Superadditive,
    Convex,
    Regular,
    SelfDual,
    Fatou,
}

impl Flag {
    pub const ALL: [Flag; 11] = [
        Flag::Increasing,
        Flag::TranslationInvariant,
        Flag::PosHomogeneous,
        Flag::Linear,
        Flag::Additive,
        Flag::Subadditive,
        Flag::Superadditive,
        Flag::Convex,
        Flag::Regular,
        Flag::SelfDual,
        Flag::Fatou,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Increasing => "increasing",
            Flag::TranslationInvariant => "translation_invariant",
            Flag::PosHomogeneous => "pos_homogeneous",
            Flag::Linear => "linear",
            Flag::Additive => "additive",
            Flag::Subadditive => "subadditive",
            Flag::Superadditive => "superadditive",
            Flag::Convex => "convex",
            Flag::Regular => "regular",
            Flag::SelfDual => "self_dual",
            Flag::Fatou => "fatou",
        }
    }

    pub fn parse(s: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == s.replace('-', "_"))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Flags = BTreeSet<Flag>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndicatorError {
    #[error("input is outside the domain of `{0}`")]
    DomainViolation(String),
    #[error("indicator `{0}` is not declared increasing")]
    NotMonotone(String),
    #[error("indicators in the family target different σ-algebras")]
    MixedTargets,
    #[error("empty family or empty domain intersection")]
    EmptyDomain,
    #[error("variable has {0} atoms, indicator expects {1}")]
    Mismatch(usize, usize),
}

/// A conditional indicator with respect to its target partition.
#[derive(Clone)]
pub struct Indicator {
    name: String,
    target: Partition,
    domain: Arc<DomainFn>,
    eval: Arc<EvalFn>,
    flags: Flags,
}

impl fmt::Debug for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Indicator")
            .field("name", &self.name)
            .field("target", &self.target)
            .field("flags", &self.flags)
            .finish()
    }
}

impl Indicator {
    /// An indicator defined on every random variable.
    pub fn new<F>(name: impl Into<String>, target: Partition, flags: Flags, eval: F) -> Self
    where
        F: Fn(&RandomVariable) -> RandomVariable + Send + Sync + 'static,
    {
        Indicator { name: name.into(), target, domain: Arc::new(|_| true), eval: Arc::new(eval), flags }
    }

    pub fn with_domain<D>(mut self, domain: D) -> Self
    where
        D: Fn(&RandomVariable) -> bool + Send + Sync + 'static,
    {
        self.domain = Arc::new(domain);
        self
    }

    pub(crate) fn from_parts(
        name: String,
        target: Partition,
        domain: Arc<DomainFn>,
        eval: Arc<EvalFn>,
        flags: Flags,
    ) -> Self {
        Indicator { name, target, domain, eval, flags }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn target(&self) -> &Partition {
        &self.target
    }

    pub fn flags(&self) -> &Flags {
        &self.flags
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn num_atoms(&self) -> usize {
        self.target.num_atoms()
    }

    pub fn contains(&self, x: &RandomVariable) -> bool {
        x.len() == self.num_atoms() && (self.domain)(x)
    }

    pub(crate) fn domain_fn(&self) -> Arc<DomainFn> {
        Arc::clone(&self.domain)
    }

    pub(crate) fn eval_fn(&self) -> Arc<EvalFn> {
        Arc::clone(&self.eval)
    }

    /// Evaluates without a domain check.
    pub fn eval(&self, x: &RandomVariable) -> RandomVariable {
        (self.eval)(x)
    }

    /// Evaluates after checking size and domain membership.
    pub fn apply(&self, x: &RandomVariable) -> Result<RandomVariable, IndicatorError> {
        if x.len() != self.num_atoms() {
            return Err(IndicatorError::Mismatch(x.len(), self.num_atoms()));
        }
        if !(self.domain)(x) {
            return Err(IndicatorError::DomainViolation(self.name.clone()));
        }
        Ok((self.eval)(x))
    }
}

pub(crate) fn flags(list: &[Flag]) -> Flags {
    list.iter().copied().collect()
}
