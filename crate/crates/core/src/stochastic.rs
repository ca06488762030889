//! Families of indicators along a filtration.
//!
//! Covers the tower and projection properties, projection uniqueness by
//! exhaustive candidate search, indicator-martingales and backward envelopes.
//! The envelope recursion `V_t = I_t(V_{t+1})` is a plain backward induction
//! chosen for this library; superhedging theory motivates it but it is not a
//! formula taken from elsewhere.
//!
//! On an infinite space the projection equality for `esssup` can have several
//! solutions (a negative variable with supremum zero). Finite spaces attain
//! their suprema, so for nonnegative bounded `X` the search always finds one.

use serde::Serialize;
use thiserror::Error;

use crate::ext::ExtReal;
use crate::indicators::checks::{check_structural, draw, events_for};
use crate::indicators::{condexp, essinf, esssup, esssup_cond, Flag, Indicator};
use crate::report::{named, CheckReport, Counterexample, Tally};
use crate::sampling::{grid_variables, CheckConfig};
use crate::space::{Event, Filtration, Partition, ProbabilitySpace, RandomVariable};

pub const DEFAULT_CANDIDATE_BUDGET: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StochasticError {
    #[error("indicator at {time} does not target the filtration's partition")]
    TargetMismatch { time: String },
    #[error("{expected} indicators expected, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("value at {time} is not measurable at that date")]
    NotAdapted { time: String },
    #[error("time index {s} is after {t}")]
    BadTimes { s: usize, t: usize },
    #[error("{candidates} candidates exceed the budget of {budget}")]
    GridTooLarge { candidates: u128, budget: usize },
    #[error("{0} cells exceed the event-enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("variable has {0} atoms, filtration has {1}")]
    Mismatch(usize, usize),
}

/// One indicator per date, each targeting the partition at that date.
#[derive(Clone, Debug)]
pub struct StochasticIndicator {
    filtration: Filtration,
    indicators: Vec<Indicator>,
}

impl StochasticIndicator {
    pub fn new(filtration: Filtration, indicators: Vec<Indicator>) -> Result<Self, StochasticError> {
        if indicators.len() != filtration.len() {
            return Err(StochasticError::WrongLength { expected: filtration.len(), got: indicators.len() });
        }
        for (t, ind) in indicators.iter().enumerate() {
            if ind.target() != filtration.at(t) {
                return Err(StochasticError::TargetMismatch { time: filtration.times()[t].clone() });
            }
        }
        Ok(StochasticIndicator { filtration, indicators })
    }

    pub fn esssup_family(f: &Filtration) -> Self {
        Self::build(f, esssup)
    }

    pub fn essinf_family(f: &Filtration) -> Self {
        Self::build(f, essinf)
    }

    pub fn condexp_family(space: &ProbabilitySpace, f: &Filtration) -> Self {
        Self::build(f, |h| condexp(space, h))
    }

    fn build(f: &Filtration, make: impl Fn(&Partition) -> Indicator) -> Self {
        StochasticIndicator { filtration: f.clone(), indicators: f.partitions().iter().map(make).collect() }
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn at(&self, t: usize) -> &Indicator {
        &self.indicators[t]
    }

    pub fn len(&self) -> usize {
        self.indicators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indicators.is_empty()
    }
}

/// One random variable per date, measurable at that date.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdaptedProcess {
    times: Vec<String>,
    values: Vec<RandomVariable>,
}

impl AdaptedProcess {
    pub fn new(f: &Filtration, values: Vec<RandomVariable>) -> Result<Self, StochasticError> {
        if values.len() != f.len() {
            return Err(StochasticError::WrongLength { expected: f.len(), got: values.len() });
        }
        for (t, v) in values.iter().enumerate() {
            if v.len() != f.num_atoms() {
                return Err(StochasticError::Mismatch(v.len(), f.num_atoms()));
            }
            if !f.at(t).is_measurable(v) {
                return Err(StochasticError::NotAdapted { time: f.times()[t].clone() });
            }
        }
        Ok(AdaptedProcess { times: f.times().to_vec(), values })
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn values(&self) -> &[RandomVariable] {
        &self.values
    }

    pub fn at(&self, t: usize) -> &RandomVariable {
        &self.values[t]
    }
}

/// `I_s(I_t(X)) = I_s(X)` with the domain nesting `I_t(𝔻_s) ⊆ 𝔻_s ⊆ 𝔻_t`.
pub fn check_tower(
    si: &StochasticIndicator,
    s: usize,
    t: usize,
    cfg: &CheckConfig,
) -> Result<CheckReport, StochasticError> {
    if s > t {
        return Err(StochasticError::BadTimes { s, t });
    }
    let (is, it) = (si.at(s), si.at(t));
    let times = si.filtration().times();
    let name = format!("tower_{}_{}", times[s], times[t]);
    let mut sm = cfg.sampler(&name);
    let mut cases = grid_variables(is.num_atoms(), &cfg.grid, cfg.exhaustive_limit).unwrap_or_default();
    cases.extend((0..cfg.samples).filter_map(|_| draw(is, &mut sm, false)));

    let mut tower = Tally::new("iterated");
    let mut nesting = Tally::new("domain_nesting");
    for x in cases.iter().filter(|x| is.contains(x)) {
        let inner = it.eval(x);
        let nested = it.contains(x) && is.contains(&inner);
        nesting.record(nested, || Counterexample {
            inputs: named(&[("X", x)]),
            lhs: inner.clone(),
            rhs: x.clone(),
            detail: "X ∈ 𝔻_s must give X ∈ 𝔻_t and I_t(X) ∈ 𝔻_s".into(),
        });
        if nested {
            tower.expect_eq(is.eval(&inner), is.eval(x), || named(&[("X", x)]), "I_s(I_t(X)) = I_s(X)");
        }
        if tower.failed() {
            break;
        }
    }
    Ok(CheckReport::composite(name, vec![tower.finish(), nesting.finish()]))
}

/// Every pair `s ≤ t` of the family.
pub fn check_tower_all(si: &StochasticIndicator, cfg: &CheckConfig) -> CheckReport {
    let mut children = Vec::new();
    for t in 0..si.len() {
        for s in 0..=t {
            children.push(check_tower(si, s, t, cfg).expect("s ≤ t"));
        }
    }
    CheckReport::composite("tower", children)
}

/// Events of `ft` ordered with single cells first, so that a wrong
/// candidate is usually rejected after a few evaluations.
fn projection_events(ft: &Partition, cap: usize) -> Result<Vec<Event>, StochasticError> {
    let all = ft.enumerate_events(cap).map_err(|_| StochasticError::CapExceeded(ft.num_cells(), cap))?;
    let singles: Vec<Event> = (0..ft.num_cells()).map(|k| ft.cell_event(k)).collect();
    let rest = all.into_iter().filter(|e| !singles.contains(e));
    Ok(singles.clone().into_iter().chain(rest).collect())
}

fn first_projection_failure(
    i0: &Indicator,
    z: &RandomVariable,
    x: &RandomVariable,
    events: &[Event],
) -> Option<Counterexample> {
    events.iter().find_map(|e| {
        let (lhs, rhs) = (i0.eval(&x.restrict(e)), i0.eval(&z.restrict(e)));
        (lhs != rhs).then(|| Counterexample {
            inputs: named(&[("X", x), ("Z", z), ("1_F", &e.indicator())]),
            lhs,
            rhs,
            detail: "I_0(X1_F) = I_0(Z1_F)".into(),
        })
    })
}

/// The projection equality `I_0(X1_F) = I_0(Z1_F)` for every event `F` of `ft`.
/// Falls back to sampled events (with a note) above the cap.
pub fn check_projection(
    i0: &Indicator,
    z: &RandomVariable,
    x: &RandomVariable,
    ft: &Partition,
    cfg: &CheckConfig,
) -> CheckReport {
    const NAME: &str = "projection";
    if !ft.is_measurable(z) {
        return CheckReport::refuted(
            NAME,
            Counterexample {
                inputs: named(&[("Z", z)]),
                lhs: z.clone(),
                rhs: esssup_cond(z, ft),
                detail: "Z must be measurable at date t".into(),
            },
        );
    }
    let mut s = cfg.sampler(NAME);
    let (events, note) = match projection_events(ft, cfg.cap) {
        Ok(events) => (events, None),
        Err(_) => events_for(ft, cfg, &mut s),
    };
    let report = match first_projection_failure(i0, z, x, &events) {
        Some(cx) => CheckReport::refuted(NAME, cx),
        None => CheckReport::verified(NAME, events.len()),
    };
    match note {
        Some(n) => report.with_note(n),
        None => report,
    }
}

/// Every cell-constant `Z` over `grid ∪ {per-cell maxima of X}` satisfying
/// the projection equality, in lexicographic order of cell values.
///
/// A single-cell event only sees `Z` on that cell, so candidates are filtered
/// per cell before the product is checked against every event.
pub fn projection_solve(
    i0: &Indicator,
    x: &RandomVariable,
    ft: &Partition,
    grid: &[ExtReal],
    cap: usize,
    budget: usize,
) -> Result<Vec<RandomVariable>, StochasticError> {
    if x.len() != ft.num_atoms() {
        return Err(StochasticError::Mismatch(x.len(), ft.num_atoms()));
    }
    let mut values: Vec<ExtReal> = grid.to_vec();
    values.extend(ft.cell_values(&esssup_cond(x, ft)));
    values.sort();
    values.dedup();

    let events = projection_events(ft, cap)?;
    let k = ft.num_cells();
    let per_cell: Vec<Vec<ExtReal>> = (0..k)
        .map(|c| {
            let cell = ft.cell_event(c);
            let target = i0.eval(&x.restrict(&cell));
            values
                .iter()
                .filter(|v| i0.eval(&RandomVariable::constant(x.len(), (*v).clone()).restrict(&cell)) == target)
                .cloned()
                .collect()
        })
        .collect();
    let candidates = per_cell.iter().try_fold(1u128, |acc, v| acc.checked_mul(v.len() as u128)).unwrap_or(u128::MAX);
    if candidates > budget as u128 {
        return Err(StochasticError::GridTooLarge { candidates, budget });
    }
    if per_cell.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let choice: Vec<ExtReal> = idx.iter().enumerate().map(|(c, &i)| per_cell[c][i].clone()).collect();
        let z = ft.lift(&choice);
        if first_projection_failure(i0, &z, x, &events).is_none() {
            out.push(z);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < per_cell[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Premises of the projection uniqueness statement for `I_0`: superadditivity
/// and `I_0(Y) ≤ 0 ⇔ Y = 0` for `Y ≥ 0`.
pub fn check_projection_uniqueness_premises(i0: &Indicator, cfg: &CheckConfig) -> CheckReport {
    let superadditive = check_structural(i0, Flag::Superadditive, cfg);

    let n = i0.num_atoms();
    let nonneg: Vec<ExtReal> = cfg.grid.iter().filter(|v| **v >= ExtReal::zero()).cloned().collect();
    let mut s = cfg.sampler("degeneracy");
    let mut cases = grid_variables(n, &nonneg, cfg.exhaustive_limit).unwrap_or_default();
    cases.extend((0..cfg.samples).map(|_| s.nonneg_variable(n, false)));
    cases.extend((0..n).map(|a| Event::from_atoms(n, [a]).indicator()));
    let mut t = Tally::new("degeneracy");
    let zero = RandomVariable::zeros(n);
    for y in cases.iter().filter(|y| i0.contains(y)) {
        let v = i0.eval(y);
        let ok = v.le(&zero) == (*y == zero);
        t.record(ok, || Counterexample {
            inputs: named(&[("Y", y)]),
            lhs: v.clone(),
            rhs: zero.clone(),
            detail: "for Y ≥ 0, I_0(Y) ≤ 0 iff Y = 0".into(),
        });
        if t.failed() {
            break;
        }
    }
    CheckReport::composite("projection_uniqueness_premises", vec![superadditive, t.finish()])
}

/// `I_s(M_t) = M_s` for every `s ≤ t`.
pub fn is_indicator_martingale(si: &StochasticIndicator, m: &AdaptedProcess) -> CheckReport {
    let mut t = Tally::new("indicator_martingale");
    for later in 0..si.len() {
        for s in 0..=later {
            let (ms, mt) = (m.at(s), m.at(later));
            let ind = si.at(s);
            if !ind.contains(mt) {
                t.record(false, || Counterexample {
                    inputs: named(&[("M_t", mt)]),
                    lhs: mt.clone(),
                    rhs: ms.clone(),
                    detail: format!("M_{} is outside the domain of I_{}", m.times()[later], m.times()[s]),
                });
                continue;
            }
            t.expect_eq(
                ind.eval(mt),
                ms.clone(),
                || named(&[("M_s", ms), ("M_t", mt)]),
                &format!("I_{}(M_{}) = M_{}", m.times()[s], m.times()[later], m.times()[s]),
            );
        }
    }
    t.finish()
}

/// Backward induction from the terminal payoff: `V_t = I_t(V_{t+1})`, or
/// `max(intermediate_t, I_t(V_{t+1}))` with early exercise. The terminal
/// value is the payoff; an intermediate value at the last date is ignored.
pub fn backward_envelope(
    si: &StochasticIndicator,
    payoff: &RandomVariable,
    american: Option<&AdaptedProcess>,
) -> Result<AdaptedProcess, StochasticError> {
    let f = si.filtration();
    let last = f.len() - 1;
    if payoff.len() != f.num_atoms() {
        return Err(StochasticError::Mismatch(payoff.len(), f.num_atoms()));
    }
    if !f.at(last).is_measurable(payoff) {
        return Err(StochasticError::NotAdapted { time: f.times()[last].clone() });
    }
    let mut values = vec![payoff.clone()];
    for t in (0..last).rev() {
        let mut v = si.at(t).eval(values.last().unwrap());
        if let Some(ex) = american {
            v = v.max(ex.at(t));
        }
        values.push(v);
    }
    values.reverse();
    AdaptedProcess::new(f, values)
}

/// `esssup_{F_0}(X − ε1_F) = esssup_{F_0}(X)` must force `ε = 0` when
/// `X = X1_F` is finite with `esssup_{F_0}(X) ≠ 0`.
pub fn check_essup_shift(f0: &Partition, x: &RandomVariable, f: &Event, eps: &[ExtReal]) -> CheckReport {
    const NAME: &str = "essup_shift";
    let zero = RandomVariable::zeros(x.len());
    let sup = esssup_cond(x, f0);
    if f.is_empty() || !x.is_finite() || x.restrict(f) != *x || sup == zero {
        return CheckReport::skipped(NAME, "hypotheses not met");
    }
    shift_check(NAME, x, f, eps, &sup, |e| esssup_cond(&(x - &f.indicator().scale(e)), f0))
}

/// `esssup_{F_0}((X − ε)1_F) = esssup_{F_0}(X1_F)` must force `ε = 0` when
/// `X` is finite with `esssup_{F_0}(X1_F) ≠ 0`.
pub fn check_essup_shift_restricted(f0: &Partition, x: &RandomVariable, f: &Event, eps: &[ExtReal]) -> CheckReport {
    const NAME: &str = "essup_shift_restricted";
    let zero = RandomVariable::zeros(x.len());
    let sup = esssup_cond(&x.restrict(f), f0);
    if f.is_empty() || !x.is_finite() || sup == zero {
        return CheckReport::skipped(NAME, "hypotheses not met");
    }
    shift_check(NAME, x, f, eps, &sup, |e| {
        let shifted = x - &RandomVariable::constant(x.len(), e.clone());
        esssup_cond(&shifted.restrict(f), f0)
    })
}

fn shift_check(
    name: &str,
    x: &RandomVariable,
    f: &Event,
    eps: &[ExtReal],
    sup: &RandomVariable,
    shifted: impl Fn(&ExtReal) -> RandomVariable,
) -> CheckReport {
    let mut t = Tally::new(name);
    for e in eps.iter().filter(|e| e.is_finite() && **e >= ExtReal::zero()) {
        let lhs = shifted(e);
        let ok = lhs != *sup || e.is_zero();
        t.record(ok, || Counterexample {
            inputs: named(&[("X", x), ("1_F", &f.indicator()), ("eps", &RandomVariable::new(vec![e.clone()]))]),
            lhs: lhs.clone(),
            rhs: sup.clone(),
            detail: "equality of suprema must force ε = 0".into(),
        });
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filtration() -> Filtration {
        Filtration::from_partitions(vec![
            Partition::trivial(4),
            Partition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap(),
            Partition::discrete(4),
        ])
        .unwrap()
    }

    fn two_dates() -> Filtration {
        Filtration::from_partitions(vec![
            Partition::trivial(4),
            Partition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap(),
        ])
        .unwrap()
    }

    fn cfg() -> CheckConfig {
        CheckConfig::with_seed(11).samples(300)
    }

    #[test]
    fn tower_for_standard_families() {
        let f = filtration();
        assert!(check_tower_all(&StochasticIndicator::esssup_family(&f), &cfg()).is_verified());
        assert!(check_tower_all(&StochasticIndicator::essinf_family(&f), &cfg()).is_verified());
        let s = ProbabilitySpace::uniform(4);
        assert!(check_tower_all(&StochasticIndicator::condexp_family(&s, &f), &cfg()).is_verified());
    }

    #[test]
    fn mixed_family_breaks_the_tower() {
        let f = two_dates();
        let si = StochasticIndicator::new(f.clone(), vec![esssup(f.at(0)), essinf(f.at(1))]).unwrap();
        let r = check_tower(&si, 0, 1, &cfg()).unwrap();
        assert!(r.is_counterexample());
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        assert_ne!(si.at(0).eval(&si.at(1).eval(&x)), si.at(0).eval(&x));
        assert!(check_tower(&si, 1, 0, &cfg()).is_err());
    }

    #[test]
    fn family_targets_are_validated() {
        let f = two_dates();
        assert!(StochasticIndicator::new(f.clone(), vec![esssup(f.at(1)), esssup(f.at(1))]).is_err());
        assert!(StochasticIndicator::new(f.clone(), vec![esssup(f.at(0))]).is_err());
    }

    #[test]
    fn projection_examples() {
        let f = two_dates();
        let i0 = esssup(f.at(0));
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let z = RandomVariable::from_ints(&[3, 3, 6, 6]);
        assert!(check_projection(&i0, &z, &x, f.at(1), &cfg()).is_verified());
        let measurable = RandomVariable::from_ints(&[4, 4, 1, 1]);
        assert!(check_projection(&i0, &measurable, &measurable, f.at(1), &cfg()).is_verified());
        let wrong = &z + &RandomVariable::from_ints(&[1, 1, 1, 1]);
        let r = check_projection(&i0, &wrong, &x, f.at(1), &cfg());
        assert!(r.is_counterexample());
        assert!(check_projection(&i0, &x, &x, f.at(1), &cfg()).is_counterexample());
    }

    #[test]
    fn projection_solutions() {
        let f = two_dates();
        let i0 = esssup(f.at(0));
        let grid: Vec<ExtReal> = (0..=6).map(ExtReal::from_int).collect();
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let sols = projection_solve(&i0, &x, f.at(1), &grid, 20, DEFAULT_CANDIDATE_BUDGET).unwrap();
        assert_eq!(sols, vec![RandomVariable::from_ints(&[3, 3, 6, 6])]);
        let zero = RandomVariable::zeros(4);
        assert_eq!(
            projection_solve(&i0, &zero, f.at(1), &grid, 20, DEFAULT_CANDIDATE_BUDGET).unwrap(),
            vec![zero.clone()]
        );
        let m = RandomVariable::from_ints(&[2, 2, 5, 5]);
        assert_eq!(projection_solve(&i0, &m, f.at(1), &grid, 20, DEFAULT_CANDIDATE_BUDGET).unwrap(), vec![m]);
        // signed grids lose uniqueness even here
        let signed: Vec<ExtReal> = (-1..=1).map(ExtReal::from_int).collect();
        let sols = projection_solve(&i0, &zero, f.at(1), &signed, 20, DEFAULT_CANDIDATE_BUDGET).unwrap();
        assert!(sols.len() > 1);
        assert!(matches!(
            projection_solve(&i0, &zero, &Partition::discrete(4), &signed, 20, 10),
            Err(StochasticError::GridTooLarge { .. })
        ));
    }

    #[test]
    fn uniqueness_premises() {
        let h0 = Partition::trivial(4);
        let sup = check_projection_uniqueness_premises(&esssup(&h0), &cfg());
        assert!(sup.child("degeneracy").unwrap().is_verified());
        assert!(sup.child("superadditive").unwrap().is_counterexample());
        let inf = check_projection_uniqueness_premises(&essinf(&h0), &cfg());
        assert!(inf.child("degeneracy").unwrap().is_counterexample());
        let s = ProbabilitySpace::uniform(4);
        assert!(check_projection_uniqueness_premises(&condexp(&s, &h0), &cfg()).is_verified());
    }

    #[test]
    fn martingales() {
        let f = filtration();
        let x = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let sup = StochasticIndicator::esssup_family(&f);
        let m = AdaptedProcess::new(&f, f.partitions().iter().map(|h| esssup_cond(&x, h)).collect()).unwrap();
        assert!(is_indicator_martingale(&sup, &m).is_verified());

        let s = ProbabilitySpace::uniform(4);
        let ce = StochasticIndicator::condexp_family(&s, &f);
        let m = AdaptedProcess::new(&f, (0..3).map(|t| ce.at(t).eval(&x)).collect()).unwrap();
        assert!(is_indicator_martingale(&ce, &m).is_verified());

        let f2 = two_dates();
        let mixed = StochasticIndicator::new(f2.clone(), vec![essinf(f2.at(0)), esssup(f2.at(1))]).unwrap();
        let c = RandomVariable::from_ints(&[3, 3, 6, 6]);
        let m = AdaptedProcess::new(&f2, vec![RandomVariable::from_ints(&[6; 4]), c]).unwrap();
        assert!(is_indicator_martingale(&mixed, &m).is_counterexample());
        assert!(AdaptedProcess::new(&f2, vec![x.clone(), x]).is_err());
    }

    #[test]
    fn envelope_examples() {
        let f = two_dates();
        let f3 = Filtration::from_partitions(vec![f.at(0).clone(), f.at(1).clone(), Partition::discrete(4)]).unwrap();
        let payoff = RandomVariable::from_ints(&[1, 3, 2, 6]);
        let v = backward_envelope(&StochasticIndicator::esssup_family(&f3), &payoff, None).unwrap();
        assert_eq!(v.at(1), &RandomVariable::from_ints(&[3, 3, 6, 6]));
        assert_eq!(v.at(0), &RandomVariable::from_ints(&[6; 4]));
        let s = ProbabilitySpace::uniform(4);
        let v = backward_envelope(&StochasticIndicator::condexp_family(&s, &f3), &payoff, None).unwrap();
        assert_eq!(v.at(1), &RandomVariable::from_ints(&[2, 2, 4, 4]));
        assert_eq!(v.at(0), &RandomVariable::from_ints(&[3; 4]));

        let ex = AdaptedProcess::new(
            &f3,
            vec![RandomVariable::zeros(4), RandomVariable::from_ints(&[5; 4]), RandomVariable::zeros(4)],
        )
        .unwrap();
        let v = backward_envelope(&StochasticIndicator::esssup_family(&f3), &payoff, Some(&ex)).unwrap();
        assert_eq!(v.at(1), &RandomVariable::from_ints(&[5, 5, 6, 6]));
        assert_eq!(v.at(0), &RandomVariable::from_ints(&[6; 4]));
        assert!(backward_envelope(&StochasticIndicator::esssup_family(&f), &payoff, None).is_err());
    }

    #[test]
    fn shift_properties() {
        let f0 = Partition::trivial(4);
        let f = Event::from_atoms(4, [0, 1]);
        let eps: Vec<ExtReal> = vec![ExtReal::zero(), ExtReal::ratio(1, 2), ExtReal::from_int(1), ExtReal::from_int(3)];
        let x = RandomVariable::from_ints(&[2, -1, 0, 0]);
        assert!(check_essup_shift(&f0, &x, &f, &eps).is_verified());
        assert!(check_essup_shift_restricted(&f0, &x, &f, &eps).is_verified());
        // sup = 0 is excluded: every ε then leaves it unchanged
        let y = RandomVariable::from_ints(&[-2, -1, 0, 0]);
        assert!(check_essup_shift(&f0, &y, &f, &eps).is_skipped());
    }
}
