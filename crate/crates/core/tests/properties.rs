//! Property tests for the structural invariants that hold across all
//! scenarios and states, not just the benchmark cases.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use hardy_core::inequality::{self, ProbabilityEstimate};
use hardy_core::lhv::{self, BehaviorVector, DeterministicStrategy};
use hardy_core::qstate::{
    equatorial_closed_form, ghz, joint_probability, noisy_joint_probability, orthogonal,
    NoisyGhz, QubitProjector,
};
use hardy_core::scenario::Rational;
use hardy_core::settings;
use hardy_core::Scenario;

fn projector_strategy() -> impl Strategy<Value = QubitProjector> {
    (0.0..1.0f64, -PI..PI).prop_map(|(weight, phase)| {
        QubitProjector::new(weight.sqrt(), (1.0 - weight).sqrt(), phase).unwrap()
    })
}

fn scenario_strategy(max_n: usize) -> impl Strategy<Value = Scenario> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 2..=n))
        .prop_flat_map(|(n, ka)| (Just(n), Just(ka), 1..=ka.min(n + 1 - ka)))
        .prop_map(|(n, ka, kb)| Scenario::unit(n, ka, kb).unwrap())
}

proptest! {
    #[test]
    fn equatorial_joint_matches_closed_form(
        phases in prop::collection::vec(-PI..PI, 1..=8),
    ) {
        let n = phases.len();
        let state = ghz(n).unwrap();
        let projectors: Vec<QubitProjector> =
            phases.iter().map(|&p| QubitProjector::equatorial(p)).collect();
        let direct = joint_probability(&state, &projectors).unwrap();
        let closed = equatorial_closed_form(&phases);
        prop_assert!((direct - closed).abs() <= 1e-12);
    }

    #[test]
    fn joint_probability_lies_in_unit_interval(
        projectors in prop::collection::vec(projector_strategy(), 3),
    ) {
        let p = joint_probability(&ghz(3).unwrap(), &projectors).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
    }

    #[test]
    fn noisy_probability_is_affine_in_visibility(
        projectors in prop::collection::vec(projector_strategy(), 3),
        v in 0.0..=1.0f64,
    ) {
        let at = |vis: f64| {
            noisy_joint_probability(&NoisyGhz::new(3, vis).unwrap(), &projectors).unwrap()
        };
        let expect = v * at(1.0) + (1.0 - v) * at(0.0);
        prop_assert!((at(v) - expect).abs() <= 1e-12);
    }

    #[test]
    fn probabilities_invariant_under_global_phase(
        re_h in -1.0..1.0f64, im_h in -1.0..1.0f64,
        re_v in -1.0..1.0f64, im_v in -1.0..1.0f64,
        gamma in -PI..PI,
        partners in prop::collection::vec(projector_strategy(), 2),
    ) {
        let c_h = Complex64::new(re_h, im_h);
        let c_v = Complex64::new(re_v, im_v);
        prop_assume!(c_h.norm_sqr() + c_v.norm_sqr() > 1e-6);
        let rot = Complex64::from_polar(1.0, gamma);
        let p = QubitProjector::from_amplitudes(c_h, c_v).unwrap();
        let q = QubitProjector::from_amplitudes(rot * c_h, rot * c_v).unwrap();
        let state = ghz(3).unwrap();
        let with = |first: QubitProjector| {
            let mut list = vec![first];
            list.extend(&partners);
            joint_probability(&state, &list).unwrap()
        };
        prop_assert!((with(p) - with(q)).abs() <= 1e-12);
    }

    #[test]
    fn orthogonal_is_orthogonal_and_involutive(p in projector_strategy()) {
        let q = orthogonal(&p);
        prop_assert!(p.inner(&q).norm() <= 1e-12);
        let back = orthogonal(&q);
        prop_assert!((back.amp_h() - p.amp_h()).abs() <= 1e-12);
        prop_assert!((back.amp_v() - p.amp_v()).abs() <= 1e-12);
        prop_assert!((back.phase() - p.phase()).abs() <= 1e-12);
    }

    #[test]
    fn constraint_strings_counted_and_disjoint(s in scenario_strategy(8)) {
        let alphas = s.alpha_strings();
        let betas = s.beta_strings();
        let expect_a = inequality::binomial(s.qubits(), s.alpha_size());
        let expect_b = inequality::binomial(s.qubits(), s.beta_size());
        prop_assert_eq!(alphas.len() as i64, expect_a);
        prop_assert_eq!(betas.len() as i64, expect_b);
        for a in &alphas {
            prop_assert!(!betas.contains(a));
        }
    }

    #[test]
    fn f_and_ivalue_scale_with_weights(
        s in scenario_strategy(6),
        num in 1..20i64,
        den in 1..20i64,
    ) {
        let c = Rational::new(num, den);
        let scaled = s.with_weights(s.x() * c, s.y() * c).unwrap();
        prop_assert_eq!(
            inequality::f_coefficient(&scaled),
            inequality::f_coefficient(&s) * c
        );
        if settings::solve(&s).is_ok() {
            let table = inequality::theory_table(&s).unwrap();
            let base = inequality::evaluate(&s, &table).unwrap();
            let rescaled = inequality::evaluate(&scaled, &table).unwrap();
            let factor = num as f64 / den as f64;
            prop_assert!((rescaled.value - factor * base.value).abs() <= 1e-9);
        }
    }

    #[test]
    fn strategy_behaviors_are_deterministic_distributions(
        bits in 0u32..(1 << 8),
    ) {
        let d = DeterministicStrategy::from_index(4, bits);
        prop_assert!(BehaviorVector::from_strategy(&d).is_normalized());
    }

    #[test]
    fn strategy_probability_is_binary_and_consistent(
        bits in 0u32..(1 << 6),
        s in scenario_strategy(3),
    ) {
        prop_assume!(s.qubits() == 3);
        let d = DeterministicStrategy::from_index(3, bits);
        for string in s.constraint_strings() {
            let p = lhv::strategy_probability(&d, &string).unwrap();
            prop_assert!(p <= 1);
            // Barring flips satisfaction against the matching unbarred need.
            if p == 1 {
                for (k, sym) in string.symbols().iter().enumerate() {
                    let outcome = match sym.unbarred() {
                        hardy_core::Symbol::A => d.outcome_a(k),
                        _ => d.outcome_b(k),
                    };
                    prop_assert_eq!(outcome == 1, !sym.is_barred());
                }
            }
        }
    }

    #[test]
    fn counting_estimates_stay_in_range(k in 0u64..500, extra in 0u64..500) {
        let n = k + extra + 1;
        let e = ProbabilityEstimate::from_counts(k, n);
        prop_assert!((0.0..=1.0).contains(&e.value));
        prop_assert!(e.sigma >= 0.0);
        // The deviation peaks at half occupancy.
        let mid = ProbabilityEstimate::from_counts(n / 2, n);
        prop_assert!(e.sigma <= mid.sigma + 1e-12);
    }
}
