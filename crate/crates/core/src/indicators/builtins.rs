use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{flags, Flag, Indicator};
use crate::expectation::{cond_exp_extended, ExpectationError};
use crate::ext::ExtReal;
use crate::space::{Partition, ProbabilitySpace, RandomVariable};

/// Conditional essential supremum: the per-cell maximum.
///
/// Every atom has positive mass, so the least ℋ-measurable dominator of `x`
/// takes the largest value of `x` on each cell.
pub fn esssup_cond(x: &RandomVariable, h: &Partition) -> RandomVariable {
    h.reduce_cells(x, |cell, x| cell.iter().map(|&a| x.get(a)).max().cloned().expect("cells are nonempty"))
}

/// Conditional essential infimum: the per-cell minimum.
pub fn essinf_cond(x: &RandomVariable, h: &Partition) -> RandomVariable {
    h.reduce_cells(x, |cell, x| cell.iter().map(|&a| x.get(a)).min().cloned().expect("cells are nonempty"))
}

pub fn esssup(h: &Partition) -> Indicator {
    let target = h.clone();
    Indicator::new(
        "esssup",
        h.clone(),
        flags(&[
            Flag::Increasing,
            Flag::TranslationInvariant,
            Flag::PosHomogeneous,
            Flag::Subadditive,
            Flag::Convex,
            Flag::Regular,
        ]),
        move |x| esssup_cond(x, &target),
    )
}

pub fn essinf(h: &Partition) -> Indicator {
    let target = h.clone();
    Indicator::new(
        "essinf",
        h.clone(),
        flags(&[
            Flag::Increasing,
            Flag::TranslationInvariant,
            Flag::PosHomogeneous,
            Flag::Superadditive,
            Flag::Regular,
        ]),
        move |x| essinf_cond(x, &target),
    )
}

fn linear_flags() -> super::Flags {
    flags(&[
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
    ])
}

/// Integrable (finite-valued) variables together with the ℋ-measurable ones.
fn integrable_or_measurable(h: &Partition) -> impl Fn(&RandomVariable) -> bool + Send + Sync {
    let h = h.clone();
    move |x| x.is_finite() || h.is_measurable(x)
}

/// Classical conditional expectation on integrable variables (and on
/// ℋ-measurable ones, where it is the identity).
pub fn condexp(space: &ProbabilitySpace, h: &Partition) -> Indicator {
    let (space_c, h_c) = (space.clone(), h.clone());
    Indicator::new("condexp", h.clone(), linear_flags(), move |x| cond_exp_extended(&space_c, x, &h_c))
        .with_domain(integrable_or_measurable(h))
}

/// `E(X⁺|ℋ) − E(X⁻|ℋ)` on every random variable.
pub fn condexp_ext(space: &ProbabilitySpace, h: &Partition) -> Indicator {
    let (space_c, h_c) = (space.clone(), h.clone());
    Indicator::new(
        "condexp-ext",
        h.clone(),
        flags(&[Flag::Increasing, Flag::PosHomogeneous, Flag::Regular, Flag::SelfDual]),
        move |x| cond_exp_extended(&space_c, x, &h_c),
    )
}

/// `X ↦ E(ρX | ℋ)` for a density with `E(ρ|ℋ) = 1`.
pub fn weighted(
    space: &ProbabilitySpace,
    h: &Partition,
    density: &RandomVariable,
) -> Result<Indicator, ExpectationError> {
    crate::expectation::validate_density(space, h, density)?;
    let (space_c, h_c, rho) = (space.clone(), h.clone(), density.clone());
    Ok(Indicator::new("weighted", h.clone(), linear_flags(), move |x| cond_exp_extended(&space_c, &(&rho * x), &h_c))
        .with_domain(integrable_or_measurable(h)))
}

/// `X ↦ Σ_{ω∈C} w(ω) X(ω)` on each cell `C`, for nonnegative weights summing
/// to one on every cell.
pub fn linear(h: &Partition, weights: &[BigRational]) -> Option<Indicator> {
    if weights.len() != h.num_atoms() || weights.iter().any(Signed::is_negative) {
        return None;
    }
    for cell in h.cells() {
        let total: BigRational = cell.iter().map(|&a| weights[a].clone()).sum();
        if !total.is_one() {
            return None;
        }
    }
    let w: Arc<Vec<ExtReal>> = Arc::new(weights.iter().cloned().map(ExtReal::Finite).collect());
    let target = h.clone();
    Some(
        Indicator::new("linear", h.clone(), linear_flags(), move |x| {
            target.reduce_cells(x, |cell, x| {
                cell.iter().fold(ExtReal::Finite(BigRational::zero()), |acc, &a| acc + &w[a] * x.get(a))
            })
        })
        .with_domain(integrable_or_measurable(h)),
    )
}
