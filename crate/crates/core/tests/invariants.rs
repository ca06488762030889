use condind::expectation::{cond_exp_extended, recover_density};
use condind::indicators::{condexp, dual, essinf, essinf_cond, esssup, esssup_cond, weighted};
use condind::sampling::Sampler;
use condind::stochastic::{backward_envelope, StochasticIndicator};
use condind::{CheckConfig, Event, ExtReal, Filtration, Partition, ProbabilitySpace, RandomVariable};
use num_rational::BigRational;
use proptest::prelude::*;

fn ext() -> impl Strategy<Value = ExtReal> {
    prop_oneof![
        1 => Just(ExtReal::NegInf),
        1 => Just(ExtReal::PosInf),
        6 => (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ExtReal::ratio(p, q)),
    ]
}

fn finite() -> impl Strategy<Value = ExtReal> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ExtReal::ratio(p, q))
}

fn variable(n: usize) -> impl Strategy<Value = RandomVariable> {
    prop::collection::vec(ext(), n).prop_map(RandomVariable::new)
}

fn finite_variable(n: usize) -> impl Strategy<Value = RandomVariable> {
    prop::collection::vec(finite(), n).prop_map(RandomVariable::new)
}

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(|ids| Partition::from_assignment(&ids))
}

fn space(n: usize) -> impl Strategy<Value = ProbabilitySpace> {
    prop::collection::vec(1i64..=6, n).prop_map(|w| {
        let total: i64 = w.iter().sum();
        ProbabilitySpace::with_probs(w.iter().map(|&x| BigRational::new(x.into(), total.into())).collect()).unwrap()
    })
}

/// A partition together with a refinement of it.
fn nested(n: usize) -> impl Strategy<Value = (Partition, Partition)> {
    (partition(n), prop::collection::vec(0..n, n)).prop_map(move |(coarse, split)| {
        let ids: Vec<usize> = (0..n).map(|a| coarse.cell_of(a) * n + split[a]).collect();
        (coarse, Partition::from_assignment(&ids))
    })
}

proptest! {
    #[test]
    fn addition_commutes_with_zero_identity(a in ext(), b in ext()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() + ExtReal::zero(), a);
    }

    #[test]
    fn multiplication_commutes_with_unit_identity(a in ext(), b in ext()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * ExtReal::one(), a);
    }

    #[test]
    fn finite_scalars_distribute_over_differences(alpha in finite(), a in ext(), b in ext()) {
        let lhs = alpha.clone() * (a.clone() - b.clone());
        let rhs = alpha.clone() * a - alpha * b;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_ignores_cell_order(ids in prop::collection::vec(0usize..5, 6), shift in 0usize..5) {
        let relabeled: Vec<usize> = ids.iter().map(|i| (i + shift) % 5).collect();
        prop_assert_eq!(Partition::from_assignment(&ids), Partition::from_assignment(&relabeled));
        let p = Partition::from_assignment(&ids);
        let mut cells = p.cells().to_vec();
        cells.reverse();
        prop_assert_eq!(Partition::from_cells(6, cells).unwrap(), p);
    }

    #[test]
    fn events_form_a_sigma_algebra(p in partition(6)) {
        let events = p.enumerate_events(20).unwrap();
        prop_assert_eq!(events.len(), 1 << p.num_cells());
        for e in &events {
            prop_assert!(events.contains(&e.complement()));
            for f in &events {
                prop_assert!(events.contains(&e.union(f)));
            }
        }
    }

    #[test]
    fn esssup_is_the_least_measurable_dominator(x in variable(5), p in partition(5), z in variable(5)) {
        let sup = esssup_cond(&x, &p);
        prop_assert!(p.is_measurable(&sup));
        prop_assert!(x.le(&sup));
        // any measurable dominator built from z lies above
        let dominator = esssup_cond(&z.max(&x), &p);
        prop_assert!(sup.le(&dominator));
        prop_assert_eq!(essinf_cond(&x, &p), -&esssup_cond(&-&x, &p));
    }

    #[test]
    fn builtins_stay_in_the_conditional_support(s in space(5), p in partition(5), x in finite_variable(5)) {
        let lo = essinf_cond(&x, &p);
        let hi = esssup_cond(&x, &p);
        for ind in [esssup(&p), essinf(&p), condexp(&s, &p)] {
            let y = ind.apply(&x).unwrap();
            prop_assert!(lo.le(&y) && y.le(&hi), "{} out of support", ind.name());
        }
    }

    #[test]
    fn dual_is_an_involution(s in space(4), p in partition(4), x in variable(4)) {
        for ind in [esssup(&p), condexp(&s, &p)] {
            if ind.contains(&x) {
                prop_assert_eq!(dual(&dual(&ind)).eval(&x), ind.eval(&x));
            }
        }
    }

    #[test]
    fn conditional_expectation_towers(s in space(6), (coarse, fine) in nested(6), x in finite_variable(6)) {
        let inner = cond_exp_extended(&s, &x, &fine);
        prop_assert_eq!(cond_exp_extended(&s, &inner, &coarse), cond_exp_extended(&s, &x, &coarse));
        prop_assert_eq!(s.expectation(&cond_exp_extended(&s, &x, &coarse)), s.expectation(&x));
    }

    #[test]
    fn envelope_is_monotone_in_the_payoff(
        (coarse, fine) in nested(5),
        x in variable(5),
        bump in prop::collection::vec(0i64..3, 5),
        s in space(5),
    ) {
        let f = Filtration::from_partitions(vec![Partition::trivial(5), coarse, fine, Partition::discrete(5)]).unwrap();
        let y = &x + &RandomVariable::from_ints(&bump);
        let families = [StochasticIndicator::esssup_family(&f), StochasticIndicator::essinf_family(&f)];
        for si in &families {
            let (vx, vy) = (backward_envelope(si, &x, None).unwrap(), backward_envelope(si, &y, None).unwrap());
            for t in 0..f.len() {
                prop_assert!(vx.at(t).le(vy.at(t)));
            }
        }
        let xf = x.map(|v| if v.is_finite() { v.clone() } else { ExtReal::zero() });
        let yf = &xf + &RandomVariable::from_ints(&bump);
        let si = StochasticIndicator::condexp_family(&s, &f);
        let (vx, vy) = (backward_envelope(&si, &xf, None).unwrap(), backward_envelope(&si, &yf, None).unwrap());
        prop_assert!(vx.at(0).le(vy.at(0)));
    }

    #[test]
    fn restriction_matches_indicator_product(x in variable(5), mask in prop::collection::vec(any::<bool>(), 5)) {
        let e = Event::from_mask(mask);
        prop_assert_eq!(x.restrict(&e), &x * &e.indicator());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn densities_round_trip(s in space(5), p in partition(5), seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed, "density", Vec::new());
        let rho = condind::expectation::sample_density(&s, &p, &mut sampler);
        let ind = weighted(&s, &p, &rho).unwrap();
        let report = recover_density(&s, &ind, &CheckConfig::with_seed(seed).samples(20)).unwrap();
        prop_assert!(report.reconstruction_ok);
        prop_assert_eq!(report.density, rho);
    }
}

#[test]
fn refinement_is_a_partial_order() {
    for n in 1..=4 {
        let all = Partition::enumerate_all(n);
        for a in &all {
            assert!(a.is_refinement_of(a).unwrap());
            for b in &all {
                let (ab, ba) = (a.is_refinement_of(b).unwrap(), b.is_refinement_of(a).unwrap());
                if ab && ba {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if ab && b.is_refinement_of(c).unwrap() {
                        assert!(a.is_refinement_of(c).unwrap());
                    }
                }
            }
        }
    }
}
