//! Risk measures induced by conditional indicators.
//!
//! `ρ_I(X)` is the least ℋ-measurable `Y` with `I(X + Y) ≥ 0`. The set of such
//! `Y` is never built: translation-invariant indicators give `ρ_I = −I`
//! exactly, and otherwise regularity lets each cell be solved on its own by
//! bisection over cell-constant shifts. Inputs are restricted to finite-valued
//! variables.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::ext::ExtReal;
use crate::indicators::checks::check_structural;
use crate::indicators::{Flag, Indicator, IndicatorError};
use crate::report::{named, CheckReport, Counterexample, Tally};
use crate::sampling::{CheckConfig, Sampler};
use crate::space::{Partition, RandomVariable};

/// `2⁻⁴⁰`.
pub fn default_tol() -> BigRational {
    BigRational::new(1.into(), num_bigint::BigInt::from(1u64 << 40))
}

const MAX_DOUBLINGS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RiskError {
    #[error("indicator `{0}` is not declared increasing")]
    NotIncreasing(String),
    #[error("indicator `{0}` is neither translation invariant nor regular")]
    NotRegular(String),
    #[error("risk measures are evaluated on finite-valued variables only")]
    NonFinite,
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

/// `I(X) ≥ 0` atomwise.
pub fn acceptance_contains(ind: &Indicator, x: &RandomVariable) -> Result<bool, IndicatorError> {
    Ok(ind.apply(x)?.is_nonneg())
}

fn require_increasing(ind: &Indicator) -> Result<(), RiskError> {
    if ind.has(Flag::Increasing) {
        Ok(())
    } else {
        Err(RiskError::NotIncreasing(ind.name().to_string()))
    }
}

/// `ρ_I(X)`: `−I(X)` for translation-invariant indicators, cellwise bisection
/// for regular ones.
pub fn rho(ind: &Indicator, x: &RandomVariable, tol: &BigRational) -> Result<RandomVariable, RiskError> {
    require_increasing(ind)?;
    if !x.is_finite() {
        return Err(RiskError::NonFinite);
    }
    if ind.has(Flag::TranslationInvariant) {
        return Ok(-ind.apply(x)?);
    }
    rho_bisection(ind, x, tol)
}

/// Per cell, the smallest feasible shift to within `tol`, bracketed by
/// `[−esssup X, −essinf X]`; `+∞` if no finite shift is acceptable.
pub fn rho_bisection(ind: &Indicator, x: &RandomVariable, tol: &BigRational) -> Result<RandomVariable, RiskError> {
    require_increasing(ind)?;
    if !ind.has(Flag::Regular) && !ind.has(Flag::TranslationInvariant) {
        return Err(RiskError::NotRegular(ind.name().to_string()));
    }
    if !x.is_finite() {
        return Err(RiskError::NonFinite);
    }
    if x.len() != ind.num_atoms() {
        return Err(IndicatorError::Mismatch(x.len(), ind.num_atoms()).into());
    }
    let h = ind.target();
    let per_cell: Vec<ExtReal> = (0..h.num_cells()).map(|c| solve_cell(ind, x, h, c, tol)).collect();
    Ok(h.lift(&per_cell))
}

fn solve_cell(ind: &Indicator, x: &RandomVariable, h: &Partition, c: usize, tol: &BigRational) -> ExtReal {
    let cell = h.cell_event(c);
    let atom = h.cells()[c][0];
    let feasible = |y: &BigRational| {
        let shifted = x + &cell.indicator().scale(&ExtReal::Finite(y.clone()));
        ind.contains(&shifted) && *ind.eval(&shifted).get(atom) >= ExtReal::zero()
    };
    let finite = |v: &ExtReal| v.as_finite().cloned().expect("finite input");
    let values: Vec<BigRational> = h.cells()[c].iter().map(|&a| finite(x.get(a))).collect();
    let mut lo = -values.iter().max().unwrap().clone();
    let mut hi = -values.iter().min().unwrap().clone();
    if feasible(&lo) {
        return ExtReal::Finite(lo);
    }
    if !feasible(&hi) {
        let mut step = (&hi - &lo).max(BigRational::one());
        let mut found = false;
        for _ in 0..MAX_DOUBLINGS {
            lo = hi.clone();
            hi += &step;
            step = &step + &step;
            if feasible(&hi) {
                found = true;
                break;
            }
        }
        if !found {
            return ExtReal::PosInf;
        }
    }
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if feasible(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    ExtReal::Finite(hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `ρ(X) = I(−X)`.
    NegArgument,
    /// `ρ(X) = −I(X)`.
    NegValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Acceptance { indicator: String },
    Negation { indicator: String, side: Side },
    Custom,
}

type RiskFn = dyn Fn(&RandomVariable) -> RandomVariable + Send + Sync;
type RiskDomain = dyn Fn(&RandomVariable) -> bool + Send + Sync;

/// A map into ℋ-measurable variables, tested against the risk-measure axioms.
#[derive(Clone)]
pub struct RiskMeasureSpec {
    name: String,
    target: Partition,
    domain: Arc<RiskDomain>,
    eval: Arc<RiskFn>,
    provenance: Provenance,
    /// Comparisons in the checks allow this slack (bisection path only).
    tol: Option<BigRational>,
}

impl fmt::Debug for RiskMeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RiskMeasureSpec")
            .field("name", &self.name)
            .field("provenance", &self.provenance)
            .field("tol", &self.tol)
            .finish()
    }
}

impl RiskMeasureSpec {
    /// A custom risk measure on finite-valued variables.
    pub fn custom<F>(name: impl Into<String>, target: Partition, eval: F) -> Self
    where
        F: Fn(&RandomVariable) -> RandomVariable + Send + Sync + 'static,
    {
        RiskMeasureSpec {
            name: name.into(),
            target,
            domain: Arc::new(RandomVariable::is_finite),
            eval: Arc::new(eval),
            provenance: Provenance::Custom,
            tol: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn target(&self) -> &Partition {
        &self.target
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn tol(&self) -> Option<&BigRational> {
        self.tol.as_ref()
    }

    pub fn contains(&self, x: &RandomVariable) -> bool {
        x.len() == self.target.num_atoms() && (self.domain)(x)
    }

    pub fn eval(&self, x: &RandomVariable) -> RandomVariable {
        (self.eval)(x)
    }
}

/// `ρ_I` through the acceptance set. Exact when `I` is translation invariant.
pub fn rho_measure(ind: &Indicator, tol: BigRational) -> Result<RiskMeasureSpec, RiskError> {
    require_increasing(ind)?;
    if !ind.has(Flag::TranslationInvariant) && !ind.has(Flag::Regular) {
        return Err(RiskError::NotRegular(ind.name().to_string()));
    }
    let exact = ind.has(Flag::TranslationInvariant);
    let (i1, i2) = (ind.clone(), ind.clone());
    let t = tol.clone();
    Ok(RiskMeasureSpec {
        name: format!("rho:{}", ind.name()),
        target: ind.target().clone(),
        domain: Arc::new(move |x| x.is_finite() && (!exact || i1.contains(x))),
        eval: Arc::new(move |x| rho(&i2, x, &t).expect("domain checked")),
        provenance: Provenance::Acceptance { indicator: ind.name().to_string() },
        tol: (!exact).then_some(tol),
    })
}

/// `ρ(X) = I(−X)` or `ρ(X) = −I(X)`.
pub fn rho_from_indicator(ind: &Indicator, side: Side) -> RiskMeasureSpec {
    let (i1, i2) = (ind.clone(), ind.clone());
    let (domain, eval): (Arc<RiskDomain>, Arc<RiskFn>) = match side {
        Side::NegArgument => (
            Arc::new(move |x: &RandomVariable| x.is_finite() && i1.contains(&-x)),
            Arc::new(move |x: &RandomVariable| i2.eval(&-x)),
        ),
        Side::NegValue => (
            Arc::new(move |x: &RandomVariable| x.is_finite() && i1.contains(x)),
            Arc::new(move |x: &RandomVariable| -i2.eval(x)),
        ),
    };
    let tag = match side {
        Side::NegArgument => "neg-arg",
        Side::NegValue => "neg-value",
    };
    RiskMeasureSpec {
        name: format!("{tag}:{}", ind.name()),
        target: ind.target().clone(),
        domain,
        eval,
        provenance: Provenance::Negation { indicator: ind.name().to_string(), side },
        tol: None,
    }
}

/// Comparison slack: twice the tolerance, since both sides carry bisection error.
fn slack(r: &RiskMeasureSpec) -> ExtReal {
    r.tol.as_ref().map_or_else(ExtReal::zero, |t| ExtReal::Finite(t + t))
}

fn within(lhs: &RandomVariable, rhs: &RandomVariable, eps: &ExtReal) -> bool {
    lhs.values().iter().zip(rhs.values()).all(|(a, b)| {
        if a.is_finite() && b.is_finite() {
            (a.clone() - b.clone()).abs() <= *eps
        } else {
            a == b
        }
    })
}

fn below(lhs: &RandomVariable, rhs: &RandomVariable, eps: &ExtReal) -> bool {
    lhs.values().iter().zip(rhs.values()).all(|(a, b)| *a <= b.clone() + eps.clone())
}

fn draw_in(r: &RiskMeasureSpec, s: &mut Sampler) -> Option<RandomVariable> {
    (0..64).map(|_| s.variable(r.target.num_atoms(), true)).find(|x| r.contains(x))
}

/// Normalization, monotonicity and cash invariance.
pub fn check_rm_axioms(r: &RiskMeasureSpec, cfg: &CheckConfig) -> CheckReport {
    let n = r.target.num_atoms();
    let h = &r.target;
    let eps = slack(r);
    let zero = RandomVariable::zeros(n);

    let mut p1 = Tally::new("normalization");
    if r.contains(&zero) {
        let v = r.eval(&zero);
        p1.record(v == zero, || Counterexample {
            inputs: vec![],
            lhs: v.clone(),
            rhs: zero.clone(),
            detail: "ρ(0) = 0".into(),
        });
    }

    let mut s = cfg.sampler("rm/monotonicity");
    let mut p2 = Tally::new("monotonicity");
    for _ in 0..cfg.samples {
        let Some(x2) = draw_in(r, &mut s) else { break };
        let x1 = &x2 + &s.nonneg_variable(n, true);
        if !r.contains(&x1) {
            continue;
        }
        let (a, b) = (r.eval(&x1), r.eval(&x2));
        let ok = below(&a, &b, &eps);
        p2.record(ok, || Counterexample {
            inputs: named(&[("X1", &x1), ("X2", &x2)]),
            lhs: a.clone(),
            rhs: b.clone(),
            detail: "X1 ≥ X2 ⇒ ρ(X1) ≤ ρ(X2)".into(),
        });
        if p2.failed() {
            break;
        }
    }

    let mut s = cfg.sampler("rm/cash_invariance");
    let mut p3 = Tally::new("cash_invariance");
    for _ in 0..cfg.samples {
        let Some(x) = draw_in(r, &mut s) else { break };
        let a = s.measurable(h, true);
        let shifted = &x + &a;
        if !r.contains(&shifted) {
            continue;
        }
        let (lhs, rhs) = (r.eval(&shifted), &r.eval(&x) - &a);
        let ok = within(&lhs, &rhs, &eps);
        p3.record(ok, || Counterexample {
            inputs: named(&[("X", &x), ("alpha", &a)]),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            detail: "ρ(X + α) = ρ(X) − α".into(),
        });
        if p3.failed() {
            break;
        }
    }
    CheckReport::composite("rm_axioms", vec![p1.finish(), p2.finish(), p3.finish()])
}

pub fn check_rm_convexity(r: &RiskMeasureSpec, cfg: &CheckConfig) -> CheckReport {
    let eps = slack(r);
    let mut s = cfg.sampler("rm/convexity");
    let mut t = Tally::new("rm_convexity");
    for _ in 0..cfg.samples {
        let (Some(x1), Some(x2)) = (draw_in(r, &mut s), draw_in(r, &mut s)) else { break };
        let a = s.unit_alpha(&r.target);
        let b = a.map(|v| ExtReal::one() - v);
        let mix = &(&a * &x1) + &(&b * &x2);
        let ok_domain = r.contains(&mix);
        let lhs = if ok_domain { r.eval(&mix) } else { mix.clone() };
        let rhs = &(&a * &r.eval(&x1)) + &(&b * &r.eval(&x2));
        let ok = ok_domain && below(&lhs, &rhs, &eps);
        t.record(ok, || Counterexample {
            inputs: named(&[("X1", &x1), ("X2", &x2), ("alpha", &a)]),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            detail: "ρ(αX1 + (1−α)X2) ≤ αρ(X1) + (1−α)ρ(X2) with the mixture in the domain".into(),
        });
        if t.failed() {
            break;
        }
    }
    t.finish()
}

pub fn check_rm_pos_hom(r: &RiskMeasureSpec, cfg: &CheckConfig) -> CheckReport {
    let eps = slack(r);
    let mut s = cfg.sampler("rm/pos_hom");
    let mut t = Tally::new("rm_pos_homogeneity");
    for _ in 0..cfg.samples {
        let Some(x) = draw_in(r, &mut s) else { break };
        let a = s.pos_alpha(&r.target);
        let ax = &a * &x;
        let ok_domain = r.contains(&ax);
        let lhs = if ok_domain { r.eval(&ax) } else { ax.clone() };
        let rhs = &a * &r.eval(&x);
        // the bisection error scales with α
        let top = a.values().iter().cloned().max().unwrap_or_else(ExtReal::zero);
        let scaled = eps.clone() * ExtReal::max_of(&top, &ExtReal::one());
        let ok = ok_domain && within(&lhs, &rhs, &scaled);
        t.record(ok, || Counterexample {
            inputs: named(&[("X", &x), ("alpha", &a)]),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            detail: "ρ(αX) = αρ(X) with αX in the domain".into(),
        });
        if t.failed() {
            break;
        }
    }
    t.finish()
}

pub fn check_rm_subadditive(r: &RiskMeasureSpec, cfg: &CheckConfig) -> CheckReport {
    let eps = slack(r);
    let mut s = cfg.sampler("rm/subadditive");
    let mut t = Tally::new("rm_subadditivity");
    for _ in 0..cfg.samples {
        let (Some(x), Some(y)) = (draw_in(r, &mut s), draw_in(r, &mut s)) else { break };
        let sum = &x + &y;
        if !r.contains(&sum) {
            continue;
        }
        let (lhs, rhs) = (r.eval(&sum), &r.eval(&x) + &r.eval(&y));
        let ok = below(&lhs, &rhs, &eps);
        t.record(ok, || Counterexample {
            inputs: named(&[("X", &x), ("Y", &y)]),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            detail: "ρ(X + Y) ≤ ρ(X) + ρ(Y)".into(),
        });
        if t.failed() {
            break;
        }
    }
    t.finish()
}

/// Convex and positively homogeneous.
pub fn check_rm_coherent(r: &RiskMeasureSpec, cfg: &CheckConfig) -> CheckReport {
    CheckReport::composite("rm_coherent", vec![check_rm_convexity(r, cfg), check_rm_pos_hom(r, cfg)])
}

/// `ρ(X) = I(−X)` (or `−I(X)`) is a risk measure iff `I` is increasing and
/// translation invariant: both directions on the same sample budget.
pub fn check_rho_correspondence(ind: &Indicator, side: Side, cfg: &CheckConfig) -> CheckReport {
    let axioms = check_rm_axioms(&rho_from_indicator(ind, side), cfg);
    let inc = check_structural(ind, Flag::Increasing, cfg);
    let ti = check_structural(ind, Flag::TranslationInvariant, cfg);
    let flags_hold = inc.is_verified() && ti.is_verified();
    let agree = axioms.is_verified() == flags_hold;
    let mut r = CheckReport::with_verdict("rho_correspondence", axioms.verdict.clone());
    r.children = vec![axioms, inc, ti];
    if !agree {
        r.alarm = true;
        r.notes.push("risk-measure axioms and the increasing/translation-invariant flags disagree".into());
    }
    r
}

/// Members of `Dom ρ_I`: finite variables with finite `ρ_I`.
fn in_dom(ind: &Indicator, x: &RandomVariable, tol: &BigRational) -> bool {
    matches!(rho(ind, x, tol), Ok(v) if v.is_finite())
}

fn gate(report: CheckReport, premise: bool, what: &str) -> CheckReport {
    if premise || !report.is_counterexample() {
        return report;
    }
    let name = report.property.clone();
    CheckReport::skipped(name, format!("premise absent: {what}; the conclusion fails without it"))
        .with_note(format!("{:?}", report.counterexample().map(|c| &c.detail)))
}

/// Sampled `ℋ`-convexity of the acceptance set `{X : I(X) ≥ 0}`.
pub fn check_acceptance_convex(ind: &Indicator, cfg: &CheckConfig) -> CheckReport {
    let mut s = cfg.sampler("acceptance_convex");
    let mut t = Tally::new("acceptance_convex");
    let n = ind.num_atoms();
    let accepted = |s: &mut Sampler| {
        (0..64)
            .map(|i| if i % 4 == 3 { s.nonneg_variable(n, true) } else { s.variable(n, true) })
            .find(|x| ind.contains(x) && ind.eval(x).is_nonneg())
    };
    for _ in 0..cfg.samples {
        let (Some(x1), Some(x2)) = (accepted(&mut s), accepted(&mut s)) else { break };
        let a = s.unit_alpha(ind.target());
        let mix = &(&a * &x1) + &(&a.map(|v| ExtReal::one() - v) * &x2);
        let ok = ind.contains(&mix) && ind.eval(&mix).is_nonneg();
        t.record(ok, || Counterexample {
            inputs: named(&[("X1", &x1), ("X2", &x2), ("alpha", &a)]),
            lhs: if ind.contains(&mix) { ind.eval(&mix) } else { mix.clone() },
            rhs: RandomVariable::zeros(n),
            detail: "acceptable X1, X2 must give an acceptable ℋ-mixture".into(),
        });
        if t.failed() {
            break;
        }
    }
    t.finish()
}

/// The four closure properties of `Dom ρ_I`. A claim whose premise is absent
/// is still exercised: it reports verified if it happens to hold and skipped
/// otherwise.
pub fn check_dom_closure(ind: &Indicator, cfg: &CheckConfig) -> CheckReport {
    const NAME: &str = "dom_closure";
    if let Err(e) = rho(ind, &RandomVariable::zeros(ind.num_atoms()), &default_tol()) {
        return CheckReport::skipped(NAME, format!("ρ_I undefined: {e}"));
    }
    let tol = default_tol();
    let h = ind.target();
    let n = ind.num_atoms();
    let member = |s: &mut Sampler| (0..64).map(|_| s.variable(n, true)).find(|x| in_dom(ind, x, &tol));
    let mut s = cfg.sampler(NAME);
    let mut scaling = Tally::new("scaling");
    let mut addition = Tally::new("addition");
    let mut upward = Tally::new("upward");
    let mut convex = Tally::new("h_convexity");
    for _ in 0..cfg.samples {
        let (Some(x1), Some(x2)) = (member(&mut s), member(&mut s)) else { break };
        let witness = |y: &RandomVariable, what: &str| Counterexample {
            inputs: named(&[("X1", &x1), ("X2", &x2), ("Y", y)]),
            lhs: y.clone(),
            rhs: y.clone(),
            detail: format!("{what} must stay in Dom ρ_I"),
        };
        let a = s.pos_alpha(h);
        let y = &a * &x1;
        scaling.record(in_dom(ind, &y, &tol), || witness(&y, "α_ℋX"));
        let y = &x1 + &x2;
        addition.record(in_dom(ind, &y, &tol), || witness(&y, "X1 + X2"));
        let y = &x2 + &s.nonneg_variable(n, true);
        upward.record(in_dom(ind, &y, &tol), || witness(&y, "X ≥ X2"));
        let u = s.unit_alpha(h);
        let y = &(&u * &x1) + &(&u.map(|v| ExtReal::one() - v) * &x2);
        convex.record(in_dom(ind, &y, &tol), || witness(&y, "αX1 + (1−α)X2"));
    }
    let sub = |f: Flag| check_structural(ind, f, cfg).is_verified();
    let acceptance_convex = check_acceptance_convex(ind, cfg).is_verified();
    let children = vec![
        gate(scaling.finish(), ind.has(Flag::PosHomogeneous) && sub(Flag::PosHomogeneous), "ℋ-positive homogeneity"),
        gate(addition.finish(), ind.has(Flag::Superadditive) && sub(Flag::Superadditive), "superadditivity"),
        gate(upward.finish(), true, "monotonicity"),
        gate(convex.finish(), acceptance_convex, "ℋ-convex acceptance set"),
    ];
    let mut r = CheckReport::composite(NAME, children);
    if r.cases() == 0 && r.is_verified() {
        r = r.with_note("vacuous: no members of Dom ρ_I were drawn");
    }
    r
}

/// `ρ_I` is a risk measure; it inherits convexity from an ℋ-convex acceptance
/// set, positive homogeneity and (from superadditivity of `I`) subadditivity.
pub fn check_risk_inheritance(ind: &Indicator, cfg: &CheckConfig) -> Result<CheckReport, RiskError> {
    let r = rho_measure(ind, default_tol())?;
    let mut alarm = false;
    let mut inherit = |premise: CheckReport, conclusion: &dyn Fn() -> CheckReport, name: &str, what: &str| {
        if premise.is_verified() {
            let c = conclusion();
            alarm |= c.is_counterexample();
            c.with_note(format!("premise verified: {what}"))
        } else {
            CheckReport::skipped(name, format!("premise absent: {what}"))
        }
    };
    let verified_flag = |f: Flag| {
        if ind.has(f) {
            check_structural(ind, f, cfg)
        } else {
            CheckReport::skipped(f.name(), "flag absent")
        }
    };
    let convexity = inherit(
        check_acceptance_convex(ind, cfg),
        &|| check_rm_convexity(&r, cfg),
        "rm_convexity",
        "ℋ-convex acceptance set",
    );
    let pos_hom = inherit(
        verified_flag(Flag::PosHomogeneous),
        &|| check_rm_pos_hom(&r, cfg),
        "rm_pos_homogeneity",
        "pos_homogeneous",
    );
    let subadd = inherit(
        verified_flag(Flag::Superadditive),
        &|| check_rm_subadditive(&r, cfg),
        "rm_subadditivity",
        "superadditive",
    );
    let axioms = check_rm_axioms(&r, cfg);
    alarm |= axioms.is_counterexample();
    let mut report = CheckReport::composite("risk_inheritance", vec![axioms, convexity, pos_hom, subadd]);
    report.alarm |= alarm;
    Ok(report)
}

/// A conditional indicator that is not increasing: on each cell, the minimum
/// when the cell's first atom is nonnegative and the maximum otherwise.
pub fn sign_switch(h: &Partition) -> Indicator {
    let target = h.clone();
    Indicator::new("sign-switch", h.clone(), Default::default(), move |x| {
        target.reduce_cells(x, |cell, x| {
            let vals = cell.iter().map(|&a| x.get(a).clone());
            if *x.get(cell[0]) >= ExtReal::zero() {
                vals.min().unwrap()
            } else {
                vals.max().unwrap()
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expectation::cond_exp_extended;
    use crate::indicators::checks::check_axioms;
    use crate::indicators::{condexp, essinf, esssup, flags, mix_self_dual};
    use crate::space::ProbabilitySpace;

    fn h4() -> Partition {
        Partition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::with_seed(13).samples(250)
    }

    #[test]
    fn acceptance_examples() {
        let s = ProbabilitySpace::uniform(4);
        let x = RandomVariable::from_ints(&[-1, 3, 2, 6]);
        assert!(acceptance_contains(&condexp(&s, &h4()), &x).unwrap());
        assert!(!acceptance_contains(&essinf(&h4()), &x).unwrap());
        assert!(acceptance_contains(&essinf(&h4()), &RandomVariable::from_ints(&[0, 1, 2, 0])).unwrap());
    }

    #[test]
    fn rho_examples() {
        let s = ProbabilitySpace::uniform(4);
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let tol = default_tol();
        assert_eq!(rho(&condexp(&s, &h4()), &x, &tol).unwrap(), RandomVariable::from_ints(&[-2, -2, -4, -4]));
        assert_eq!(rho(&esssup(&h4()), &x, &tol).unwrap(), RandomVariable::from_ints(&[-3, -3, -6, -6]));
        let m = RandomVariable::from_ints(&[4, 4, -1, -1]);
        assert_eq!(rho(&essinf(&h4()), &m, &tol).unwrap(), -&m);
        assert!(matches!(rho(&sign_switch(&h4()), &x, &tol), Err(RiskError::NotIncreasing(_))));
        let inf = RandomVariable::new(vec![ExtReal::PosInf, ExtReal::zero(), ExtReal::zero(), ExtReal::zero()]);
        assert_eq!(rho(&esssup(&h4()), &inf, &tol), Err(RiskError::NonFinite));
    }

    #[test]
    fn bisection_matches_fast_path() {
        let s = ProbabilitySpace::uniform(4);
        let tol = default_tol();
        let mut sm = cfg().sampler("bisect");
        for ind in [condexp(&s, &h4()), esssup(&h4()), essinf(&h4())] {
            for _ in 0..40 {
                let x = sm.variable(4, true);
                let fast = rho(&ind, &x, &tol).unwrap();
                let slow = rho_bisection(&ind, &x, &tol).unwrap();
                assert!(fast.le(&slow));
                assert!(within(&fast, &slow, &ExtReal::Finite(tol.clone())), "{} {x}", ind.name());
                // one-sided optimality: slow is acceptable, slow − tol is not
                assert!(ind.eval(&(&x + &slow)).is_nonneg());
                let below = &slow - &RandomVariable::constant(4, ExtReal::Finite(tol.clone()));
                let v = ind.eval(&(&x + &below));
                for cell in h4().cells() {
                    assert!(*v.get(cell[0]) < ExtReal::zero());
                }
            }
        }
    }

    #[test]
    fn bisection_on_a_non_translation_invariant_indicator() {
        // the self-dual mix of esssup is regular and increasing but not TI-declared here
        let mix = mix_self_dual(&esssup(&h4())).unwrap().with_flags(flags(&[Flag::Increasing, Flag::Regular]));
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let r = rho(&mix, &x, &default_tol()).unwrap();
        // the mid-range is translation invariant, so the answer is −(min+max)/2 up to tol
        let exact = RandomVariable::from_ints(&[-2, -2, -4, -4]);
        assert!(within(&r, &exact, &ExtReal::Finite(default_tol())));
        let spec = rho_measure(&mix, default_tol()).unwrap();
        assert!(check_rm_axioms(&spec, &CheckConfig::with_seed(2).samples(60)).is_verified());
    }

    #[test]
    fn axioms_for_builtins_and_custom() {
        let s = ProbabilitySpace::uniform(4);
        let ce = rho_measure(&condexp(&s, &h4()), default_tol()).unwrap();
        assert!(check_rm_axioms(&ce, &cfg()).is_verified());
        assert!(check_rm_coherent(&ce, &cfg()).is_verified());
        let sup = rho_from_indicator(&esssup(&h4()), Side::NegArgument);
        assert!(check_rm_axioms(&sup, &cfg()).is_verified());
        assert!(check_rm_coherent(&sup, &cfg()).is_verified());

        let (sp, h) = (s.clone(), h4());
        let shifted = RiskMeasureSpec::custom("shifted", h4(), move |x| {
            -&cond_exp_extended(&sp, x, &h) + &RandomVariable::from_ints(&[1; 4])
        });
        let r = check_rm_axioms(&shifted, &cfg());
        assert!(r.child("normalization").unwrap().is_counterexample());

        let (sp, h) = (s.clone(), h4());
        let square = RiskMeasureSpec::custom("neg-square", h4(), move |x| {
            let e = cond_exp_extended(&sp, x, &h);
            -&(&e * &e)
        });
        assert!(check_rm_convexity(&square, &cfg()).is_counterexample());
    }

    #[test]
    fn correspondence() {
        let r = check_rho_correspondence(&esssup(&h4()), Side::NegArgument, &cfg());
        assert!(r.is_verified() && !r.alarm);
        let bad = sign_switch(&h4());
        assert!(check_axioms(&bad, &cfg()).passed());
        let r = check_rho_correspondence(&bad, Side::NegArgument, &cfg());
        assert!(r.is_counterexample() && !r.alarm);
        let zero = RandomVariable::zeros(4);
        for side in [Side::NegArgument, Side::NegValue] {
            assert_eq!(rho_from_indicator(&essinf(&h4()), side).eval(&zero), zero);
        }
    }

    #[test]
    fn domain_closure() {
        let s = ProbabilitySpace::uniform(4);
        let ce = check_dom_closure(&condexp(&s, &h4()), &cfg());
        assert!(ce.is_verified() && ce.children.iter().all(CheckReport::is_verified), "{ce:#?}");
        let sup = check_dom_closure(&esssup(&h4()), &cfg());
        for claim in ["scaling", "addition", "upward"] {
            assert!(sup.child(claim).unwrap().is_verified());
        }
        assert!(check_dom_closure(&sign_switch(&h4()), &cfg()).is_skipped());
    }

    #[test]
    fn risk_inheritance_examples() {
        let s = ProbabilitySpace::uniform(4);
        let ce = check_risk_inheritance(&condexp(&s, &h4()), &cfg()).unwrap();
        assert!(ce.children.iter().all(CheckReport::is_verified), "{ce:#?}");
        let sup = check_risk_inheritance(&esssup(&h4()), &cfg()).unwrap();
        assert!(sup.child("rm_axioms").unwrap().is_verified());
        assert!(sup.child("rm_pos_homogeneity").unwrap().is_verified());
        assert!(sup.child("rm_subadditivity").unwrap().is_skipped());
        assert!(sup.child("rm_convexity").unwrap().is_skipped());
        assert!(!sup.alarm);
        let inf = check_risk_inheritance(&essinf(&h4()), &cfg()).unwrap();
        assert!(inf.child("rm_subadditivity").unwrap().is_verified());
        assert!(inf.passed());
        assert!(check_risk_inheritance(&sign_switch(&h4()), &cfg()).is_err());
    }
}
