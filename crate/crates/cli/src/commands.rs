//! One function per subcommand. Each returns an [`Outcome`]: a JSON result
//! plus any check reports, which decide the exit status.

use std::collections::BTreeMap;

use condind::battery::{indicator_section, verify_all, BatteryInput};
use condind::expectation::{
    additivity_set, check_additivity_on_f, cond_exp_extended, cond_exp_parts, recover_density, ExpectationError,
};
use condind::indicators::checks::{
    check_additive_implies_regular, check_additive_self_dual_linear, check_axioms, check_convex_implies_regular,
    check_dual_involution, check_extension_duality, check_extension_sandwich, check_hplus_decomposition, check_regular,
    check_structural,
};
use condind::risk::{acceptance_contains, check_risk_inheritance, rho, rho_bisection};
use condind::stochastic::{
    backward_envelope, check_projection, check_tower, check_tower_all, projection_solve, AdaptedProcess,
    StochasticError, StochasticIndicator, DEFAULT_CANDIDATE_BUDGET,
};
use condind::{CheckConfig, CheckReport, Filtration, Flag, Indicator, Partition, RandomVariable};
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::names::{lookup, resolve, NameError};
use crate::scenario::Scenario;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Name(#[from] NameError),
    #[error("validation error: {0}")]
    Validation(String),
}

pub struct Outcome {
    pub result: Value,
    pub checks: Vec<CheckReport>,
    /// Set when the command found a violation outside the check reports.
    pub failed: bool,
}

impl Outcome {
    fn value(result: Value) -> Self {
        Outcome { result, checks: Vec::new(), failed: false }
    }

    pub fn passed(&self) -> bool {
        !self.failed && self.checks.iter().all(CheckReport::passed)
    }
}

/// Shared inputs resolved from the global flags.
pub struct Context<'a> {
    pub scenario: &'a Scenario,
    pub sigma: Partition,
    pub cfg: CheckConfig,
    pub tol: BigRational,
}

impl Context<'_> {
    fn indicator(&self, name: &str) -> Result<Indicator, CommandError> {
        Ok(resolve(name, self.scenario, &self.sigma)?)
    }

    fn var(&self, name: &str) -> Result<RandomVariable, CommandError> {
        Ok(lookup(self.scenario, name)?.clone())
    }

    fn labeled(&self, x: &RandomVariable) -> Value {
        json!(self.scenario.labeled(x))
    }

    fn filtration(&self) -> Result<&Filtration, CommandError> {
        self.scenario
            .filtration
            .as_ref()
            .ok_or_else(|| CommandError::Validation("the scenario has no filtration".into()))
    }

    fn time(&self, f: &Filtration, label: &str) -> Result<usize, CommandError> {
        f.index_of(label).ok_or_else(|| CommandError::Validation(format!("unknown filtration time `{label}`")))
    }
}

fn stochastic(e: StochasticError) -> CommandError {
    CommandError::Validation(e.to_string())
}

fn family(ctx: &Context<'_>, f: &Filtration, name: &str) -> Result<StochasticIndicator, CommandError> {
    match name {
        "esssup" => Ok(StochasticIndicator::esssup_family(f)),
        "essinf" => Ok(StochasticIndicator::essinf_family(f)),
        "condexp" => Ok(StochasticIndicator::condexp_family(&ctx.scenario.space, f)),
        other => Err(CommandError::Validation(format!("unknown family `{other}` (esssup, essinf, condexp)"))),
    }
}

pub fn apply(ctx: &Context<'_>, indicator: &str, var: &str) -> Result<Outcome, CommandError> {
    let ind = ctx.indicator(indicator)?;
    let y = ind.apply(&ctx.var(var)?).map_err(|e| CommandError::Validation(e.to_string()))?;
    Ok(Outcome::value(json!({ "value": ctx.labeled(&y) })))
}

pub fn check(ctx: &Context<'_>, indicator: &str, property: &str, evars: &[String]) -> Result<Outcome, CommandError> {
    let ind = ctx.indicator(indicator)?;
    let cfg = &ctx.cfg;
    let e_list = evars.iter().map(|v| ctx.var(v)).collect::<Result<Vec<_>, _>>()?;
    let report = match property {
        "all" => {
            let vars: Vec<RandomVariable> = ctx.scenario.variables.values().cloned().collect();
            indicator_section(&ind, &vars, cfg)
        }
        "axioms" => check_axioms(&ind, cfg),
        "regular" => check_regular(&ind, cfg),
        "hplus" => check_hplus_decomposition(&ind, cfg),
        "dual-involution" => check_dual_involution(&ind, cfg),
        "convex-implies-regular" => check_convex_implies_regular(&ind, cfg),
        "additive-implies-regular" => check_additive_implies_regular(&ind, cfg),
        "additive-self-dual-linear" => check_additive_self_dual_linear(&ind, cfg),
        "extension" => CheckReport::composite(
            "extension",
            vec![check_extension_sandwich(&ind, &e_list, cfg), check_extension_duality(&ind, &e_list, cfg)],
        ),
        other => match Flag::parse(other) {
            Some(flag) => check_structural(&ind, flag, cfg),
            None => return Err(CommandError::Validation(format!("unknown property `{other}`"))),
        },
    };
    Ok(Outcome { result: json!({ "indicator": ind.name() }), checks: vec![report], failed: false })
}

pub fn tower(ctx: &Context<'_>, fam: &str, from: Option<&str>, to: Option<&str>) -> Result<Outcome, CommandError> {
    let f = ctx.filtration()?;
    let si = family(ctx, f, fam)?;
    let report = match (from, to) {
        (Some(s), Some(t)) => check_tower(&si, ctx.time(f, s)?, ctx.time(f, t)?, &ctx.cfg).map_err(stochastic)?,
        (None, None) => check_tower_all(&si, &ctx.cfg),
        _ => return Err(CommandError::Validation("give both --from and --to, or neither".into())),
    };
    Ok(Outcome { result: json!({ "family": fam }), checks: vec![report], failed: false })
}

pub fn project(ctx: &Context<'_>, fam: &str, var: &str, time: &str) -> Result<Outcome, CommandError> {
    let f = ctx.filtration()?;
    let si = family(ctx, f, fam)?;
    let t = ctx.time(f, time)?;
    let x = ctx.var(var)?;
    let i0 = si.at(0);
    let ft = f.at(t);
    let solutions =
        projection_solve(i0, &x, ft, &ctx.cfg.grid, ctx.cfg.cap, DEFAULT_CANDIDATE_BUDGET).map_err(stochastic)?;
    let checks = solutions.iter().map(|z| check_projection(i0, z, &x, ft, &ctx.cfg)).collect();
    let rendered: Vec<Value> = solutions.iter().map(|z| ctx.labeled(z)).collect();
    Ok(Outcome {
        result: json!({ "time": time, "solutions": rendered, "unique": solutions.len() == 1 }),
        checks,
        failed: false,
    })
}

pub fn envelope(ctx: &Context<'_>, fam: &str, var: &str, exercise: &[String]) -> Result<Outcome, CommandError> {
    let f = ctx.filtration()?;
    let si = family(ctx, f, fam)?;
    let payoff = ctx.var(var)?;
    let american = if exercise.is_empty() {
        None
    } else {
        let values = exercise.iter().map(|v| ctx.var(v)).collect::<Result<Vec<_>, _>>()?;
        Some(AdaptedProcess::new(f, values).map_err(stochastic)?)
    };
    let v = backward_envelope(&si, &payoff, american.as_ref()).map_err(stochastic)?;
    let by_time: BTreeMap<&str, Value> =
        v.times().iter().zip(v.values()).map(|(t, x)| (t.as_str(), ctx.labeled(x))).collect();
    Ok(Outcome::value(json!({ "V": by_time })))
}

pub fn risk(
    ctx: &Context<'_>,
    indicator: &str,
    var: &str,
    method: &str,
    verify: bool,
) -> Result<Outcome, CommandError> {
    let ind = ctx.indicator(indicator)?;
    let x = ctx.var(var)?;
    let invalid = |e: &dyn std::fmt::Display| CommandError::Validation(e.to_string());
    let value = match method {
        "auto" => rho(&ind, &x, &ctx.tol),
        "bisection" => rho_bisection(&ind, &x, &ctx.tol),
        other => return Err(CommandError::Validation(format!("unknown method `{other}` (auto, bisection)"))),
    }
    .map_err(|e| invalid(&e))?;
    let accepted = acceptance_contains(&ind, &x).map_err(|e| invalid(&e))?;
    let checks =
        if verify { vec![check_risk_inheritance(&ind, &ctx.cfg).map_err(|e| invalid(&e))?] } else { Vec::new() };
    Ok(Outcome {
        result: json!({ "rho": ctx.labeled(&value), "accepted": accepted, "tol": ctx.tol.to_string() }),
        checks,
        failed: false,
    })
}

pub fn condexp_ext(ctx: &Context<'_>, var: &str) -> Result<Outcome, CommandError> {
    let x = ctx.var(var)?;
    let space = &ctx.scenario.space;
    let (pos, neg) = cond_exp_parts(space, &x, &ctx.sigma);
    Ok(Outcome::value(json!({
        "value": ctx.labeled(&cond_exp_extended(space, &x, &ctx.sigma)),
        "positive_part": ctx.labeled(&ctx.sigma.lift(&pos)),
        "negative_part": ctx.labeled(&ctx.sigma.lift(&neg)),
    })))
}

pub fn additivity(ctx: &Context<'_>, x: &str, y: &str) -> Result<Outcome, CommandError> {
    let (xv, yv) = (ctx.var(x)?, ctx.var(y)?);
    let space = &ctx.scenario.space;
    let set = additivity_set(space, &xv, &yv, &ctx.sigma);
    let labels = space.labels();
    let event: Vec<&str> = set.event.atoms().map(|a| labels[a].as_str()).collect();
    let cells: Vec<Value> = ctx
        .sigma
        .cells()
        .iter()
        .zip(&set.tags)
        .map(|(cell, tags)| {
            let atoms: Vec<&str> = cell.iter().map(|&a| labels[a].as_str()).collect();
            json!({ "atoms": atoms, "tags": tags })
        })
        .collect();
    Ok(Outcome {
        result: json!({ "event": event, "cells": cells }),
        checks: vec![check_additivity_on_f(space, &xv, &yv, &ctx.sigma)],
        failed: false,
    })
}

pub fn recover(ctx: &Context<'_>, indicator: &str) -> Result<Outcome, CommandError> {
    let ind = ctx.indicator(indicator)?;
    match recover_density(&ctx.scenario.space, &ind, &ctx.cfg) {
        Ok(d) => {
            let failed = !d.reconstruction_ok;
            let mu: Vec<String> = d.mu.iter().map(ToString::to_string).collect();
            let mu: BTreeMap<&String, String> = ctx.scenario.space.labels().iter().zip(mu).collect();
            Ok(Outcome {
                result: json!({
                    "density": ctx.labeled(&d.density),
                    "mu": mu,
                    "conditional_mean_one": d.conditional_mean_one,
                    "reconstruction_ok": d.reconstruction_ok,
                    "mismatch": d.mismatch_witness,
                }),
                checks: Vec::new(),
                failed,
            })
        }
        Err(ExpectationError::HypothesisFailed { additivity, self_duality }) => Ok(Outcome {
            result: json!({ "hypothesis_failed": { "additivity": additivity, "self_duality": self_duality } }),
            checks: Vec::new(),
            failed: true,
        }),
        Err(e) => Err(CommandError::Validation(e.to_string())),
    }
}

pub fn verify(ctx: &Context<'_>) -> Result<Outcome, CommandError> {
    let input = BatteryInput {
        space: &ctx.scenario.space,
        h: &ctx.sigma,
        filtration: ctx.scenario.filtration.as_ref(),
        variables: ctx.scenario.variables.values().cloned().collect(),
    };
    let report = verify_all(&input, &ctx.cfg);
    Ok(Outcome {
        result: json!({ "samples": ctx.cfg.samples, "passed": report.passed() }),
        checks: vec![report],
        failed: false,
    })
}
