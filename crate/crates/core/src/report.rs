//! Verdicts produced by the property checkers.

use serde::Serialize;

use crate::space::RandomVariable;

/// A concrete violation: the named inputs and the two sides that differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<(String, RandomVariable)>,
    pub lhs: RandomVariable,
    pub rhs: RandomVariable,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Verified { cases: usize },
    Counterexample(Counterexample),
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub verdict: Verdict,
    /// Set when a result contradicts an implication that must always hold.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub alarm: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    pub fn verified(property: impl Into<String>, cases: usize) -> Self {
        Self::with_verdict(property, Verdict::Verified { cases })
    }

    pub fn skipped(property: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::with_verdict(property, Verdict::Skipped { reason: reason.into() })
    }

    pub fn refuted(property: impl Into<String>, cx: Counterexample) -> Self {
        Self::with_verdict(property, Verdict::Counterexample(cx))
    }

    pub fn with_verdict(property: impl Into<String>, verdict: Verdict) -> Self {
        CheckReport { property: property.into(), verdict, alarm: false, notes: Vec::new(), children: Vec::new() }
    }

    /// Aggregates children: the first counterexample wins, otherwise the
    /// verified case counts add up; all-skipped stays skipped.
    pub fn composite(property: impl Into<String>, children: Vec<CheckReport>) -> Self {
        let verdict = if let Some(cx) = children.iter().find_map(|c| c.counterexample()) {
            Verdict::Counterexample(cx.clone())
        } else if children.iter().all(CheckReport::is_skipped) {
            Verdict::Skipped { reason: "all sub-checks skipped".into() }
        } else {
            Verdict::Verified { cases: children.iter().map(CheckReport::cases).sum() }
        };
        let alarm = children.iter().any(|c| c.alarm);
        CheckReport { property: property.into(), verdict, alarm, notes: Vec::new(), children }
    }

    /// Re-labels a refuted premise as skipped, keeping the witness in a note,
    /// so that only violated conclusions surface as counterexamples.
    pub fn as_premise(self) -> Self {
        let Verdict::Counterexample(cx) = &self.verdict else { return self };
        let inputs: Vec<String> = cx.inputs.iter().map(|(n, v)| format!("{n}={v}")).collect();
        let note = format!("witness: {} vs {} at {}", cx.lhs, cx.rhs, inputs.join(", "));
        let reason = format!("premise refuted: {}", cx.detail);
        CheckReport { verdict: Verdict::Skipped { reason }, children: Vec::new(), ..self }.with_note(note)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped { .. })
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self.verdict, Verdict::Counterexample(_))
    }

    /// No counterexample at this node and no alarm anywhere in the tree.
    /// Children are not inspected for counterexamples: a node may override
    /// them, as implication checks do when only a premise fails.
    pub fn passed(&self) -> bool {
        !self.is_counterexample() && !self.any_alarm()
    }

    pub fn any_alarm(&self) -> bool {
        self.alarm || self.children.iter().any(CheckReport::any_alarm)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.verdict {
            Verdict::Counterexample(cx) => Some(cx),
            _ => None,
        }
    }

    pub fn cases(&self) -> usize {
        match self.verdict {
            Verdict::Verified { cases } => cases,
            _ => 0,
        }
    }

    pub fn child(&self, property: &str) -> Option<&CheckReport> {
        self.children.iter().find(|c| c.property == property)
    }
}

/// Counts cases for one property and keeps the first violation.
pub(crate) struct Tally {
    property: String,
    cases: usize,
    failure: Option<Counterexample>,
}

impl Tally {
    pub fn new(property: impl Into<String>) -> Self {
        Tally { property: property.into(), cases: 0, failure: None }
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Records one case. `witness` is only built on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        if self.failure.is_some() {
            return;
        }
        self.cases += 1;
        if !ok {
            self.failure = Some(witness());
        }
    }

    /// Compares two variables, recording a counterexample with the given inputs on mismatch.
    pub fn expect_eq(
        &mut self,
        lhs: RandomVariable,
        rhs: RandomVariable,
        inputs: impl FnOnce() -> Vec<(String, RandomVariable)>,
        detail: &str,
    ) {
        let ok = lhs == rhs;
        self.record(ok, || Counterexample { inputs: inputs(), lhs, rhs, detail: detail.into() });
    }

    pub fn expect_le(
        &mut self,
        lhs: RandomVariable,
        rhs: RandomVariable,
        inputs: impl FnOnce() -> Vec<(String, RandomVariable)>,
        detail: &str,
    ) {
        let ok = lhs.le(&rhs);
        self.record(ok, || Counterexample { inputs: inputs(), lhs, rhs, detail: detail.into() });
    }

    pub fn finish(self) -> CheckReport {
        match self.failure {
            Some(cx) => CheckReport::refuted(self.property, cx),
            None if self.cases == 0 => CheckReport::skipped(self.property, "no admissible cases in the domain"),
            None => CheckReport::verified(self.property, self.cases),
        }
    }
}

/// Shorthand for witness lists.
pub(crate) fn named(pairs: &[(&str, &RandomVariable)]) -> Vec<(String, RandomVariable)> {
    pairs.iter().map(|(n, v)| (n.to_string(), (*v).clone())).collect()
}
