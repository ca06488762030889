//! The full verification battery run by `verify-all`.
//!
//! Every item here is a conclusion that must hold on any scenario, so the
//! battery passes iff no counterexample and no alarm occurs. Checks whose
//! premises are known to fail for some built-ins (such as the premises for
//! unique projections) are left out.

use crate::expectation::{check_additivity_on_f, check_lemm_cond_exp, recover_density, sample_density};
use crate::ext::ExtReal;
use crate::indicators::checks::{
    check_additive_implies_regular, check_additive_self_dual_linear, check_axioms, check_convex_implies_regular,
    check_dual_involution, check_extension_duality, check_extension_sandwich, check_hplus_decomposition, check_regular,
    check_structural,
};
use crate::indicators::{condexp, condexp_ext, essinf, esssup, esssup_cond, mix_self_dual, weighted};
use crate::indicators::{Flag, Indicator};
use crate::report::{CheckReport, Counterexample};
use crate::risk::{check_dom_closure, check_rho_correspondence, check_risk_inheritance, Side};
use crate::sampling::CheckConfig;
use crate::space::{Filtration, Partition, ProbabilitySpace, RandomVariable};
use crate::stochastic::{
    check_essup_shift, check_essup_shift_restricted, check_projection, check_tower_all, StochasticIndicator,
};

/// What the battery runs on. Without a filtration, `{Ω} ⊆ ℋ ⊆ 2^Ω` is used.
pub struct BatteryInput<'a> {
    pub space: &'a ProbabilitySpace,
    pub h: &'a Partition,
    pub filtration: Option<&'a Filtration>,
    pub variables: Vec<RandomVariable>,
}

pub fn verify_all(input: &BatteryInput<'_>, cfg: &CheckConfig) -> CheckReport {
    let space = input.space;
    let n = space.len();
    let filtration = match input.filtration {
        Some(f) => f.clone(),
        None => {
            let parts = vec![Partition::trivial(n), input.h.clone(), Partition::discrete(n)];
            Filtration::new(vec!["t0".into(), "t1".into(), "t2".into()], parts).expect("chain of refinements")
        }
    };

    let mut sections = Vec::new();
    for ind in builtin_indicators(space, input.h, cfg) {
        sections.push(indicator_section(&ind, &input.variables, cfg));
    }
    sections.push(tower_section(space, &filtration, cfg));
    sections.push(projection_section(&filtration, &input.variables, cfg));
    sections.push(expectation_section(space, input.h, &input.variables, cfg));
    sections.push(risk_section(space, input.h, cfg));
    CheckReport::composite("verify_all", sections)
}

fn builtin_indicators(space: &ProbabilitySpace, h: &Partition, cfg: &CheckConfig) -> Vec<Indicator> {
    let sup = esssup(h);
    let mut out = vec![sup.clone(), essinf(h), condexp(space, h), condexp_ext(space, h)];
    if let Ok(mix) = mix_self_dual(&sup) {
        out.push(mix);
    }
    let rho = sample_density(space, h, &mut cfg.sampler("battery_density"));
    if let Ok(w) = weighted(space, h, &rho) {
        out.push(w);
    }
    out
}

/// Every indicator-level check that applies given the declared flags. The
/// scenario variables join the extension list `E`.
pub fn indicator_section(ind: &Indicator, variables: &[RandomVariable], cfg: &CheckConfig) -> CheckReport {
    let mut children = vec![check_axioms(ind, cfg), check_regular(ind, cfg)];
    for flag in Flag::ALL {
        if ind.has(flag) && !matches!(flag, Flag::Regular | Flag::Fatou) {
            children.push(check_structural(ind, flag, cfg));
        }
    }
    children.push(check_hplus_decomposition(ind, cfg));
    children.push(check_dual_involution(ind, cfg));
    if ind.has(Flag::Convex) {
        children.push(check_convex_implies_regular(ind, cfg));
    }
    if ind.has(Flag::Additive) || ind.has(Flag::Subadditive) {
        children.push(check_additive_implies_regular(ind, cfg));
    }
    children.push(check_additive_self_dual_linear(ind, cfg));
    if ind.has(Flag::Increasing) {
        let e_list = extension_list(ind, variables, cfg);
        children.push(check_extension_sandwich(ind, &e_list, cfg));
        children.push(check_extension_duality(ind, &e_list, cfg));
    }
    CheckReport::composite(ind.name(), children)
}

/// Scenario variables in the domain plus a few sampled finite ones.
fn extension_list(ind: &Indicator, variables: &[RandomVariable], cfg: &CheckConfig) -> Vec<RandomVariable> {
    let mut s = cfg.sampler("extension_list");
    let mut e: Vec<RandomVariable> = variables.iter().filter(|x| ind.contains(x)).cloned().collect();
    e.extend((0..4).map(|_| s.variable(ind.num_atoms(), true)));
    e
}

fn tower_section(space: &ProbabilitySpace, f: &Filtration, cfg: &CheckConfig) -> CheckReport {
    let families = [
        ("esssup", StochasticIndicator::esssup_family(f)),
        ("essinf", StochasticIndicator::essinf_family(f)),
        ("condexp", StochasticIndicator::condexp_family(space, f)),
    ];
    let children = families
        .iter()
        .map(|(name, si)| {
            let mut r = check_tower_all(si, cfg);
            r.property = format!("tower_{name}");
            r
        })
        .collect();
    CheckReport::composite("tower", children)
}

/// `Z_t = esssup_{F_t}(X)` projects `X` for the esssup family, and the esssup
/// shift properties hold on sampled instances.
fn projection_section(f: &Filtration, variables: &[RandomVariable], cfg: &CheckConfig) -> CheckReport {
    let n = f.num_atoms();
    let i0 = esssup(f.at(0));
    let mut s = cfg.sampler("projection");
    let mut xs: Vec<RandomVariable> = variables.to_vec();
    xs.extend((0..8).map(|_| s.variable(n, false)));
    let mut children = Vec::new();
    for t in 1..f.len() {
        let ft = f.at(t);
        let per_x: Vec<CheckReport> =
            xs.iter().map(|x| check_projection(&i0, &esssup_cond(x, ft), x, ft, cfg)).collect();
        children.push(CheckReport::composite(format!("projection_{}", f.times()[t]), per_x));
    }

    let eps: Vec<ExtReal> = cfg.finite_grid().into_iter().chain([ExtReal::ratio(1, 3), ExtReal::from_int(5)]).collect();
    let mut plain = Vec::new();
    let mut restricted = Vec::new();
    for _ in 0..cfg.samples {
        let f0 = f.at(s.index(f.len()));
        let event = s.event(&Partition::discrete(n));
        let x = s.variable(n, true);
        restricted.push(check_essup_shift_restricted(f0, &x, &event, &eps));
        plain.push(check_essup_shift(f0, &x.restrict(&event), &event, &eps));
    }
    children.push(CheckReport::composite("essup_shift", plain));
    children.push(CheckReport::composite("essup_shift_restricted", restricted));
    CheckReport::composite("projection", children)
}

fn expectation_section(
    space: &ProbabilitySpace,
    h: &Partition,
    variables: &[RandomVariable],
    cfg: &CheckConfig,
) -> CheckReport {
    let locality = match check_lemm_cond_exp(space, h, cfg) {
        Ok(r) => r,
        Err(e) => CheckReport::skipped("cond_exp_locality", e.to_string()),
    };
    let mut s = cfg.sampler("additivity_pairs");
    let mut pool: Vec<RandomVariable> = variables.to_vec();
    pool.extend((0..16).map(|_| s.variable(space.len(), false)));
    let pairs: Vec<CheckReport> =
        pool.iter().zip(pool.iter().skip(1)).map(|(x, y)| check_additivity_on_f(space, x, y, h)).collect();
    let additivity = CheckReport::composite("additivity_on_F", pairs);

    let mut rounds = Vec::new();
    for k in 0..8 {
        let rho = sample_density(space, h, &mut s);
        let property = format!("density_round_trip_{k}");
        let report = match weighted(space, h, &rho) {
            Err(e) => CheckReport::skipped(property, e.to_string()),
            Ok(ind) => match recover_density(space, &ind, &cfg.clone().samples(cfg.samples.min(64))) {
                Ok(d) if d.reconstruction_ok && d.density == rho => CheckReport::verified(property, 1),
                Ok(d) => CheckReport::refuted(
                    property,
                    d.mismatch_witness.unwrap_or(Counterexample {
                        inputs: vec![("rho".into(), rho.clone())],
                        lhs: d.density,
                        rhs: rho,
                        detail: "recovered density must equal the original".into(),
                    }),
                ),
                Err(e) => CheckReport::skipped(property, e.to_string()),
            },
        };
        rounds.push(report);
    }
    let density = CheckReport::composite("density_recovery", rounds);
    CheckReport::composite("expectation", vec![locality, additivity, density])
}

fn risk_section(space: &ProbabilitySpace, h: &Partition, cfg: &CheckConfig) -> CheckReport {
    let mut children = Vec::new();
    for ind in [esssup(h), essinf(h), condexp(space, h)] {
        let prop = match check_risk_inheritance(&ind, cfg) {
            Ok(r) => r,
            Err(e) => CheckReport::skipped("risk_inheritance", e.to_string()),
        };
        let sides = [Side::NegArgument, Side::NegValue].map(|side| {
            let mut r = check_rho_correspondence(&ind, side, cfg);
            r.property = format!("rho_correspondence_{side:?}");
            r
        });
        let mut group = vec![prop, check_dom_closure(&ind, cfg)];
        group.extend(sides);
        children.push(CheckReport::composite(format!("risk_{}", ind.name()), group));
    }
    CheckReport::composite("risk", children)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scenario_passes() {
        let space = ProbabilitySpace::uniform(4);
        let h = Partition::from_cells(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let input = BatteryInput {
            space: &space,
            h: &h,
            filtration: None,
            variables: vec![RandomVariable::from_ints(&[1, 3, 2, 6])],
        };
        let r = verify_all(&input, &CheckConfig::with_seed(7).samples(60));
        let failing: Vec<String> = failures(&r);
        assert!(r.passed(), "{failing:?}");
    }

    fn failures(r: &CheckReport) -> Vec<String> {
        if r.passed() {
            return Vec::new();
        }
        let mut out: Vec<String> =
            r.children.iter().flat_map(failures).map(|f| format!("{}/{f}", r.property)).collect();
        if out.is_empty() {
            out.push(format!("{}: {:?} alarm={}", r.property, r.counterexample().map(|c| &c.detail), r.alarm));
        }
        out
    }
}
