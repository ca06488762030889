use std::sync::Arc;

use super::builtins::{essinf_cond, esssup_cond};
use super::{Flag, Flags, Indicator, IndicatorError};
use crate::ext::ExtReal;
use crate::space::RandomVariable;

/// `I*(X) = −I(−X)` on `−𝔻_I`.
pub fn dual(ind: &Indicator) -> Indicator {
    let (inner_dom, inner_eval) = (ind.domain_fn(), ind.eval_fn());
    let flags: Flags = ind
        .flags()
        .iter()
        .filter_map(|f| match f {
            Flag::Subadditive => Some(Flag::Superadditive),
            Flag::Superadditive => Some(Flag::Subadditive),
            // the dual of a convex indicator is concave
            Flag::Convex => None,
            other => Some(*other),
        })
        .collect();
    Indicator::from_parts(
        format!("dual:{}", ind.name()),
        ind.target().clone(),
        Arc::new(move |x| inner_dom(&-x)),
        Arc::new(move |x| -inner_eval(&-x)),
        flags,
    )
}

/// `T = ½I + ½I*` on `𝔻_I ∩ 𝔻_{I*}`; always self-dual.
pub fn mix_self_dual(ind: &Indicator) -> Result<Indicator, IndicatorError> {
    let star = dual(ind);
    let zero = RandomVariable::zeros(ind.num_atoms());
    if !(ind.contains(&zero) && star.contains(&zero)) {
        return Err(IndicatorError::EmptyDomain);
    }
    let half = ExtReal::ratio(1, 2);
    let mut flags: Flags = ind
        .flags()
        .intersection(star.flags())
        .copied()
        .filter(|f| {
            matches!(
                f,
                Flag::Increasing
                    | Flag::TranslationInvariant
                    | Flag::PosHomogeneous
                    | Flag::Linear
                    | Flag::Additive
                    | Flag::Regular
            )
        })
        .collect();
    // ½(+∞) + ½(−∞) = 0 absorbs ℋ-translations on cells where I and I* diverge
    if !ind.has(Flag::SelfDual) {
        flags.remove(&Flag::TranslationInvariant);
    }
    flags.insert(Flag::SelfDual);
    let (a_dom, b_dom) = (ind.domain_fn(), star.domain_fn());
    let (a, b) = (ind.eval_fn(), star.eval_fn());
    Ok(Indicator::from_parts(
        format!("mix:{}", ind.name()),
        ind.target().clone(),
        Arc::new(move |x| a_dom(x) && b_dom(x)),
        Arc::new(move |x| a(x).scale(&half) + b(x).scale(&half)),
        flags,
    ))
}

fn family(
    members: &[Indicator],
    label: &str,
    combine: fn(&RandomVariable, &RandomVariable) -> RandomVariable,
) -> Result<Indicator, IndicatorError> {
    let first = members.first().ok_or(IndicatorError::EmptyDomain)?;
    if members.iter().any(|m| m.target() != first.target()) {
        return Err(IndicatorError::MixedTargets);
    }
    if members.len() == 1 {
        return Ok(first.clone());
    }
    let zero = RandomVariable::zeros(first.num_atoms());
    if !members.iter().all(|m| m.contains(&zero)) {
        return Err(IndicatorError::EmptyDomain);
    }
    let flags: Flags = [Flag::Increasing, Flag::TranslationInvariant, Flag::PosHomogeneous, Flag::Regular]
        .into_iter()
        .filter(|f| members.iter().all(|m| m.has(*f)))
        .collect();
    let doms: Vec<_> = members.iter().map(Indicator::domain_fn).collect();
    let evals: Vec<_> = members.iter().map(Indicator::eval_fn).collect();
    let names: Vec<&str> = members.iter().map(Indicator::name).collect();
    Ok(Indicator::from_parts(
        format!("{label}:{}", names.join(",")),
        first.target().clone(),
        Arc::new(move |x| doms.iter().all(|d| d(x))),
        Arc::new(move |x| {
            let mut it = evals.iter().map(|e| e(x));
            let head = it.next().expect("nonempty family");
            it.fold(head, |acc, v| combine(&acc, &v))
        }),
        flags,
    ))
}

/// Atomwise supremum of a family sharing the same target.
pub fn family_sup(members: &[Indicator]) -> Result<Indicator, IndicatorError> {
    family(members, "famsup", RandomVariable::max)
}

/// Atomwise infimum of a family sharing the same target.
pub fn family_inf(members: &[Indicator]) -> Result<Indicator, IndicatorError> {
    family(members, "faminf", RandomVariable::min)
}

/// Lower extension on `E = e_list ∪ {ℋ-measurable}`: on each cell `C`, the
/// largest of `essinf_ℋ(X)` and `I(Y)` over listed `Y` with `Y ≤ X` on `C`.
///
/// The ℋ-measurable minorants are handled in closed form: their best value
/// is `essinf_ℋ(X)` itself.
pub fn lower_extension(
    ind: &Indicator,
    e_list: &[RandomVariable],
    x: &RandomVariable,
) -> Result<RandomVariable, IndicatorError> {
    if !ind.has(Flag::Increasing) {
        return Err(IndicatorError::NotMonotone(ind.name().to_string()));
    }
    Ok(extend(ind, e_list, x, Side::Lower))
}

/// Upper extension: per cell, the smallest of `esssup_ℋ(X)` and `I(Y)` over
/// listed `Y` with `Y ≥ X` on the cell.
pub fn upper_extension(
    ind: &Indicator,
    e_list: &[RandomVariable],
    x: &RandomVariable,
) -> Result<RandomVariable, IndicatorError> {
    if !ind.has(Flag::Increasing) {
        return Err(IndicatorError::NotMonotone(ind.name().to_string()));
    }
    Ok(extend(ind, e_list, x, Side::Upper))
}

#[derive(Clone, Copy)]
enum Side {
    Lower,
    Upper,
}

fn extend(ind: &Indicator, e_list: &[RandomVariable], x: &RandomVariable, side: Side) -> RandomVariable {
    let h = ind.target();
    let base = match side {
        Side::Lower => essinf_cond(x, h),
        Side::Upper => esssup_cond(x, h),
    };
    let mut best = h.cell_values(&base);
    for y in e_list.iter().filter(|y| ind.contains(y)) {
        let iy = ind.eval(y);
        for (k, cell) in h.cells().iter().enumerate() {
            let comparable = match side {
                Side::Lower => cell.iter().all(|&a| y.get(a) <= x.get(a)),
                Side::Upper => cell.iter().all(|&a| y.get(a) >= x.get(a)),
            };
            if !comparable {
                continue;
            }
            let v = iy.get(cell[0]);
            let better = match side {
                Side::Lower => v > &best[k],
                Side::Upper => v < &best[k],
            };
            if better {
                best[k] = v.clone();
            }
        }
    }
    h.lift(&best)
}

fn extension_indicator(ind: &Indicator, e_list: &[RandomVariable], side: Side) -> Result<Indicator, IndicatorError> {
    if !ind.has(Flag::Increasing) {
        return Err(IndicatorError::NotMonotone(ind.name().to_string()));
    }
    let base = ind.clone();
    let list = e_list.to_vec();
    let prefix = match side {
        Side::Lower => "lowext",
        Side::Upper => "upext",
    };
    Ok(Indicator::from_parts(
        format!("{prefix}:{}", ind.name()),
        ind.target().clone(),
        Arc::new(|_| true),
        Arc::new(move |x| extend(&base, &list, x, side)),
        [Flag::Increasing, Flag::Regular].into_iter().collect(),
    ))
}

/// [`lower_extension`] packaged as an indicator on every random variable.
pub fn lower_extension_indicator(ind: &Indicator, e_list: &[RandomVariable]) -> Result<Indicator, IndicatorError> {
    extension_indicator(ind, e_list, Side::Lower)
}

/// [`upper_extension`] packaged as an indicator on every random variable.
pub fn upper_extension_indicator(ind: &Indicator, e_list: &[RandomVariable]) -> Result<Indicator, IndicatorError> {
    extension_indicator(ind, e_list, Side::Upper)
}
