//! Conditional expectation on the extended reals and density recovery.
//!
//! `E(X|ℋ) := E(X⁺|ℋ) − E(X⁻|ℋ)` with `∞ − ∞ = 0`, so every random variable
//! has a conditional expectation. An additive self-dual indicator on a finite
//! space is always a weighted conditional expectation: linearity forces
//! `I(X) = Σ_{ω∈C} w(ω)X(ω)` on each cell with nonnegative weights summing to
//! one, and `ρ(ω) = P(C)w(ω)/P(ω)` reproduces it. The infinite-space
//! counterexamples (Banach limits, shift-type constructions) have no finite
//! analogue, which is why [`recover_density`] only fails on its hypotheses.

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::ext::ExtReal;
use crate::indicators::checks::{check_structural, events_for};
use crate::indicators::{Flag, Indicator};
use crate::report::{named, CheckReport, Counterexample, Tally};
use crate::sampling::{grid_variables, CheckConfig};
use crate::space::{Event, Partition, ProbabilitySpace, RandomVariable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpectationError {
    #[error("invalid density: {0}")]
    BadDensity(String),
    #[error("hypotheses falsified: additivity={additivity}, self_duality={self_duality}")]
    HypothesisFailed { additivity: bool, self_duality: bool },
    #[error("{0} cells exceed the event-enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("variable has {0} atoms, space has {1}")]
    Mismatch(usize, usize),
}

/// Per-cell `E(X|ℋ)` of a nonnegative variable.
fn cond_exp_nonneg(space: &ProbabilitySpace, x: &RandomVariable, h: &Partition) -> Vec<ExtReal> {
    h.cells()
        .iter()
        .map(|cell| {
            let mass: BigRational = cell.iter().map(|&a| space.prob_of_atom(a).clone()).sum();
            let total = cell
                .iter()
                .fold(ExtReal::zero(), |acc, &a| acc + ExtReal::Finite(space.prob_of_atom(a).clone()) * x.get(a));
            total * ExtReal::Finite(mass.recip())
        })
        .collect()
}

/// `E(X⁺|ℋ)` and `E(X⁻|ℋ)`, one entry per cell.
pub fn cond_exp_parts(space: &ProbabilitySpace, x: &RandomVariable, h: &Partition) -> (Vec<ExtReal>, Vec<ExtReal>) {
    (cond_exp_nonneg(space, &x.pos_part(), h), cond_exp_nonneg(space, &x.neg_part(), h))
}

pub fn cond_exp_extended(space: &ProbabilitySpace, x: &RandomVariable, h: &Partition) -> RandomVariable {
    let (plus, minus) = cond_exp_parts(space, x, h);
    let per_cell: Vec<ExtReal> = plus.into_iter().zip(minus).map(|(p, m)| p - m).collect();
    h.lift(&per_cell)
}

/// A density must be finite, nonnegative and have conditional mean one.
pub fn validate_density(
    space: &ProbabilitySpace,
    h: &Partition,
    density: &RandomVariable,
) -> Result<(), ExpectationError> {
    if density.len() != space.len() {
        return Err(ExpectationError::Mismatch(density.len(), space.len()));
    }
    if !density.is_finite() || !density.is_nonneg() {
        return Err(ExpectationError::BadDensity("density must be finite and nonnegative".into()));
    }
    let mean = cond_exp_extended(space, density, h);
    if mean != RandomVariable::constant(space.len(), ExtReal::one()) {
        return Err(ExpectationError::BadDensity(format!("E(ρ|ℋ) = {mean}, expected 1")));
    }
    Ok(())
}

/// `E(ρX|ℋ)`.
pub fn weighted_expectation(
    space: &ProbabilitySpace,
    x: &RandomVariable,
    h: &Partition,
    density: &RandomVariable,
) -> Result<RandomVariable, ExpectationError> {
    validate_density(space, h, density)?;
    if x.len() != space.len() {
        return Err(ExpectationError::Mismatch(x.len(), space.len()));
    }
    Ok(cond_exp_extended(space, &(density * x), h))
}

/// Restriction to events, multiplication by finite ℋ-measurable factors and
/// translation off the doubly-infinite set.
pub fn check_lemm_cond_exp(
    space: &ProbabilitySpace,
    h: &Partition,
    cfg: &CheckConfig,
) -> Result<CheckReport, ExpectationError> {
    if h.num_cells() > cfg.cap {
        return Err(ExpectationError::CapExceeded(h.num_cells(), cfg.cap));
    }
    let n = space.len();
    let e = |x: &RandomVariable| cond_exp_extended(space, x, h);
    let mut s = cfg.sampler("cond_exp_locality");
    let (events, _) = events_for(h, cfg, &mut s);

    let mut rest = Tally::new("restriction");
    let mut mult = Tally::new("ℋ_multiplication");
    let mut shift = Tally::new("ℋ_translation");
    for _ in 0..cfg.samples {
        let x = s.variable(n, false);
        let ex = e(&x);
        for ev in &events {
            rest.expect_eq(
                ex.restrict(ev),
                e(&x.restrict(ev)),
                || named(&[("X", &x), ("1_H", &ev.indicator())]),
                "1_H E(X|ℋ) = E(X1_H|ℋ)",
            );
        }

        let alpha = s.signed_alpha(h);
        mult.expect_eq(e(&(&alpha * &x)), &alpha * &ex, || named(&[("X", &x), ("alpha", &alpha)]), "E(αX|ℋ) = αE(X|ℋ)");

        let a = s.measurable(h, true);
        let (plus, minus) = cond_exp_parts(space, &x, h);
        let off: Vec<bool> = (0..n)
            .map(|i| {
                let k = h.cell_of(i);
                !(plus[k] == ExtReal::PosInf && minus[k] == ExtReal::PosInf)
            })
            .collect();
        let off = Event::from_mask(off);
        shift.expect_eq(
            e(&(&x + &a)).restrict(&off),
            (&ex + &a).restrict(&off),
            || named(&[("X", &x), ("alpha", &a), ("1_checked", &off.indicator())]),
            "E(X + α|ℋ) = E(X|ℋ) + α where E(X⁺|ℋ), E(X⁻|ℋ) are not both +∞",
        );
    }
    Ok(CheckReport::composite("cond_exp_locality", vec![rest.finish(), mult.finish(), shift.finish()]))
}

/// The five finiteness patterns under which `E(·|ℋ)` is additive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FTag {
    F1,
    F2,
    F3,
    F4,
    F5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditivitySet {
    /// Union of the classified cells.
    pub event: Event,
    /// Tags of each cell; a cell may satisfy several patterns or none.
    pub tags: Vec<Vec<FTag>>,
}

pub fn additivity_set(
    space: &ProbabilitySpace,
    x: &RandomVariable,
    y: &RandomVariable,
    h: &Partition,
) -> AdditivitySet {
    let (xp, xm) = cond_exp_parts(space, x, h);
    let (yp, ym) = cond_exp_parts(space, y, h);
    let inf = |v: &ExtReal| *v == ExtReal::PosInf;
    let tags: Vec<Vec<FTag>> = (0..h.num_cells())
        .map(|k| {
            let (xp, xm, yp, ym) = (&xp[k], &xm[k], &yp[k], &ym[k]);
            let mut t = Vec::new();
            if xp.is_finite() && xm.is_finite() && yp.is_finite() && ym.is_finite() {
                t.push(FTag::F1);
            }
            if inf(xp) && xm.is_finite() && ym.is_finite() {
                t.push(FTag::F2);
            }
            if inf(xm) && xp.is_finite() && yp.is_finite() {
                t.push(FTag::F3);
            }
            if inf(yp) && xm.is_finite() && ym.is_finite() {
                t.push(FTag::F4);
            }
            if inf(ym) && xp.is_finite() && yp.is_finite() {
                t.push(FTag::F5);
            }
            t
        })
        .collect();
    let event = Event::from_mask((0..space.len()).map(|a| !tags[h.cell_of(a)].is_empty()).collect());
    AdditivitySet { event, tags }
}

/// Asserts `E(X+Y|ℋ) = E(X|ℋ) + E(Y|ℋ)` on the additivity set only. Cells off
/// the set are observed and noted, never asserted.
pub fn check_additivity_on_f(
    space: &ProbabilitySpace,
    x: &RandomVariable,
    y: &RandomVariable,
    h: &Partition,
) -> CheckReport {
    const NAME: &str = "additivity_on_F";
    let f = additivity_set(space, x, y, h);
    let lhs = cond_exp_extended(space, &(x + y), h);
    let rhs = cond_exp_extended(space, x, h) + cond_exp_extended(space, y, h);

    let mut notes = Vec::new();
    for (k, cell) in h.cells().iter().enumerate().filter(|(k, _)| f.tags[*k].is_empty()) {
        let a = cell[0];
        let rel = if lhs.get(a) == rhs.get(a) { "equal" } else { "differ" };
        notes.push(format!("off F, cell {k}: E(X+Y|ℋ) = {} and E(X|ℋ)+E(Y|ℋ) = {} ({rel})", lhs.get(a), rhs.get(a)));
    }
    let report = if f.event.is_empty() {
        CheckReport::skipped(NAME, "off-F: no cell satisfies any of the additivity patterns")
    } else {
        let (l, r) = (lhs.restrict(&f.event), rhs.restrict(&f.event));
        if l == r {
            CheckReport::verified(NAME, f.event.count())
        } else {
            CheckReport::refuted(
                NAME,
                Counterexample {
                    inputs: named(&[("X", x), ("Y", y), ("1_F", &f.event.indicator())]),
                    lhs: l,
                    rhs: r,
                    detail: "E(X+Y|ℋ) = E(X|ℋ) + E(Y|ℋ) on F".into(),
                },
            )
        }
    };
    notes.into_iter().fold(report, CheckReport::with_note)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    /// `ρ = dμ/dP`.
    pub density: RandomVariable,
    /// `μ({ω}) = E(I(1_{ω}))` per atom.
    pub mu: Vec<ExtReal>,
    pub conditional_mean_one: bool,
    pub reconstruction_ok: bool,
    pub mismatch_witness: Option<Counterexample>,
}

/// Builds `μ(A) = E(I(1_A))` on atoms and checks `I(X) = E(ρX|ℋ)` on the
/// finite grid and on sampled variables.
pub fn recover_density(
    space: &ProbabilitySpace,
    ind: &Indicator,
    cfg: &CheckConfig,
) -> Result<DensityReport, ExpectationError> {
    let n = space.len();
    if ind.num_atoms() != n {
        return Err(ExpectationError::Mismatch(ind.num_atoms(), n));
    }
    let additivity = check_structural(ind, Flag::Additive, cfg).is_counterexample();
    let self_duality = check_structural(ind, Flag::SelfDual, cfg).is_counterexample();
    if additivity || self_duality {
        return Err(ExpectationError::HypothesisFailed { additivity, self_duality });
    }

    let h = ind.target();
    let mu: Vec<ExtReal> =
        (0..n).map(|a| space.expectation(&ind.eval(&Event::from_atoms(n, [a]).indicator()))).collect();
    let density = RandomVariable::new(
        mu.iter().enumerate().map(|(a, m)| m.clone() * ExtReal::Finite(space.prob_of_atom(a).recip())).collect(),
    );
    let conditional_mean_one = validate_density(space, h, &density).is_ok();

    let mut s = cfg.sampler("recover_density");
    let mut cases = grid_variables(n, &cfg.finite_grid(), cfg.exhaustive_limit).unwrap_or_default();
    cases.extend((0..cfg.samples).map(|_| s.variable(n, true)));
    let mismatch_witness = cases.iter().filter(|x| ind.contains(x)).find_map(|x| {
        let (lhs, rhs) = (ind.eval(x), cond_exp_extended(space, &(&density * x), h));
        (lhs != rhs).then(|| Counterexample {
            inputs: named(&[("X", x), ("rho", &density)]),
            lhs,
            rhs,
            detail: "I(X) = E(ρX|ℋ)".into(),
        })
    });
    Ok(DensityReport {
        density,
        mu,
        conditional_mean_one,
        reconstruction_ok: conditional_mean_one && mismatch_witness.is_none(),
        mismatch_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionalExpectationEvidence {
    pub holds: bool,
    pub density: Option<DensityReport>,
    pub failure: Option<String>,
    /// Sampled `E(|I(X)|) ≤ E(|X|)`.
    pub contractivity: CheckReport,
    /// Contractive, self-dual and subadditive on the samples, yet not `E(·|ℋ)`.
    pub alarm: bool,
}

/// Evidence for `I = E(·|ℋ)`: recovery must give `ρ ≡ 1`.
pub fn is_conditional_expectation(
    space: &ProbabilitySpace,
    ind: &Indicator,
    cfg: &CheckConfig,
) -> ConditionalExpectationEvidence {
    let n = space.len();
    let mut s = cfg.sampler("contractivity");
    let mut t = Tally::new("contractivity");
    for _ in 0..cfg.samples {
        let x = s.variable(n, true);
        if !ind.contains(&x) {
            continue;
        }
        let (lhs, rhs) = (space.expectation(&ind.eval(&x).abs()), space.expectation(&x.abs()));
        let ok = lhs <= rhs;
        t.record(ok, || Counterexample {
            inputs: named(&[("X", &x)]),
            lhs: RandomVariable::new(vec![lhs.clone()]),
            rhs: RandomVariable::new(vec![rhs.clone()]),
            detail: "E(|I(X)|) ≤ E(|X|)".into(),
        });
    }
    let contractivity = t.finish();

    let recovered = recover_density(space, ind, cfg);
    let one = RandomVariable::constant(n, ExtReal::one());
    let holds = matches!(&recovered, Ok(r) if r.reconstruction_ok && r.density == one);
    let premises = contractivity.is_verified()
        && check_structural(ind, Flag::SelfDual, cfg).is_verified()
        && check_structural(ind, Flag::Subadditive, cfg).is_verified();
    let (density, failure) = match recovered {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ConditionalExpectationEvidence { holds, density, failure, contractivity, alarm: premises && !holds }
}

/// A density with `E(ρ|ℋ) = 1`: per cell, a random point of the rational
/// simplex rescaled by `P(C)/P(ω)`.
pub fn sample_density(space: &ProbabilitySpace, h: &Partition, s: &mut crate::sampling::Sampler) -> RandomVariable {
    let mut rho = vec![ExtReal::zero(); space.len()];
    for cell in h.cells() {
        let mut raw: Vec<i64> = cell.iter().map(|_| if s.coin(0.2) { 0 } else { s.index(7) as i64 + 1 }).collect();
        if raw.iter().all(|&w| w == 0) {
            let i = s.index(raw.len());
            raw[i] = 1;
        }
        let total: i64 = raw.iter().sum();
        let mass: BigRational = cell.iter().map(|&a| space.prob_of_atom(a).clone()).sum();
        for (&a, &w) in cell.iter().zip(&raw) {
            rho[a] = ExtReal::Finite(BigRational::new(w.into(), total.into()) * &mass / space.prob_of_atom(a));
        }
    }
    RandomVariable::new(rho)
}
