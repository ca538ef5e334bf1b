use std::f64::consts::TAU;

use num_complex::Complex;
use proptest::prelude::*;

use qubit_coherence::{
    c_mu_direct_sum, coherence_rank, direct_sum_feasible, hjw_ensemble, qubit_monotones,
    qubit_transform_feasible, rank_split, two_state_witness, DirectSumState, Isometry, MeasureSpec,
    PureQubit, QubitState, QubitState32,
};

fn state() -> impl Strategy<Value = QubitState> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..TAU).prop_map(|(rho00, frac, phase)| {
        let bound = (rho00 * (1.0 - rho00)).sqrt();
        QubitState::new(rho00, Complex::from_polar(bound * frac, phase)).unwrap()
    })
}

fn mixed_state() -> impl Strategy<Value = QubitState> {
    (0.01..=0.99f64, 0.0..0.999f64, 0.0..TAU).prop_map(|(rho00, frac, phase)| {
        let bound = (rho00 * (1.0 - rho00)).sqrt();
        QubitState::new(rho00, Complex::from_polar(bound * frac, phase)).unwrap()
    })
}

fn block() -> impl Strategy<Value = PureQubit> {
    (0.0..=0.5f64, 0.0..TAU, any::<bool>()).prop_map(|(a, phase, swap)| {
        let small = Complex::new(a.sqrt(), 0.0);
        let big = Complex::from_polar((1.0 - a).sqrt(), phase);
        let phi = PureQubit::normalized(small, big).unwrap();
        if swap {
            phi.swapped()
        } else {
            phi
        }
    })
}

fn dsum() -> impl Strategy<Value = DirectSumState> {
    (0.0..1.0f64, block(), block()).prop_map(|(p, a, b)| DirectSumState::new(p, a, b).unwrap())
}

fn isometry_params() -> impl Strategy<Value = Vec<f64>> {
    (2usize..=4).prop_flat_map(|n| prop::collection::vec(-2.0..2.0f64, 4 * n))
}

fn convex_specs() -> [MeasureSpec; 3] {
    [
        MeasureSpec::formation(),
        MeasureSpec::geometric(),
        MeasureSpec::concurrence(),
    ]
}

fn grid_holds(s: &DirectSumState, t: &DirectSumState, n: usize) -> bool {
    (0..n).all(|k| {
        let mu = k as f64 / (n - 1) as f64;
        c_mu_direct_sum(mu, s).unwrap() >= c_mu_direct_sum(mu, t).unwrap() - 1e-12
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hjw_ensembles_remix(rho in state(), params in isometry_params()) {
        if let Some(iso) = Isometry::from_params(&params) {
            let e = hjw_ensemble(&rho, &iso).unwrap();
            prop_assert!(e.mix().distance_max(&rho) <= 1e-10);
        }
    }

    #[test]
    fn no_decomposition_beats_the_closed_form(rho in state(), params in isometry_params()) {
        if let Some(iso) = Isometry::from_params(&params) {
            let e = hjw_ensemble(&rho, &iso).unwrap();
            for spec in convex_specs() {
                let closed = spec.closed_form(&rho).unwrap();
                prop_assert!(e.average(|phi| spec.eval_pure(phi)) >= closed - 1e-10);
            }
            let rank = MeasureSpec::rank();
            prop_assert!(e.average(|phi| rank.eval_pure(phi)) >= coherence_rank(&rho) - 1e-10);
        }
    }

    #[test]
    fn eigendecomposition_reassembles(rho in state()) {
        let eig = rho.eigendecompose();
        prop_assert!(eig.reassemble().distance_max(&rho) <= 1e-10);
        prop_assert!((eig.values[0] * eig.values[1] - rho.determinant()).abs() <= 1e-10);
    }

    #[test]
    fn two_state_witness_attains_closed_form(rho in state()) {
        let w = two_state_witness(&rho);
        let e = w.ensemble();
        prop_assert!(e.mix().distance_max(&rho) <= 1e-10);
        for (_, phi) in e.members() {
            prop_assert!((phi.off_diagonal_magnitude() - rho.off_diagonal_magnitude()).abs() <= 1e-10);
        }
        for spec in convex_specs() {
            let closed = spec.closed_form(&rho).unwrap();
            prop_assert!((e.average(|phi| spec.eval_pure(phi)) - closed).abs() <= 1e-10);
        }
    }

    #[test]
    fn rank_split_attains_rank(rho in state()) {
        let w = rank_split(&rho);
        let e = w.ensemble();
        prop_assert!(e.mix().distance_max(&rho) <= 1e-10);
        let rank = MeasureSpec::rank();
        prop_assert!((e.average(|phi| rank.eval_pure(phi)) - coherence_rank(&rho)).abs() <= 1e-10);
        prop_assert!(w.residual.0 >= 0.0 && w.residual.1 >= 0.0);
    }

    #[test]
    fn strictly_mixed_states_have_rank_below_one(rho in mixed_state()) {
        prop_assert!(coherence_rank(&rho) < 1.0);
        prop_assert!(qubit_monotones(&rho).xi < 1.0);
    }

    #[test]
    fn phase_normalize_preserves_every_measure(rho in state()) {
        let (normal, _) = rho.phase_normalize();
        for spec in MeasureSpec::<f64>::builtins() {
            match (spec.evaluate(&rho), spec.evaluate(&normal)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits()),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "closed form exists for only one of the pair"),
            }
        }
        prop_assert_eq!(qubit_monotones(&rho), qubit_monotones(&normal));
    }

    #[test]
    fn basis_swap_preserves_measures(rho in state()) {
        for spec in convex_specs() {
            let a = spec.closed_form(&rho).unwrap();
            let b = spec.closed_form(&rho.swapped()).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
        }
        prop_assert!((coherence_rank(&rho) - coherence_rank(&rho.swapped())).abs() <= 1e-12);
    }

    #[test]
    fn additivity_over_blocks(d in dsum(), mu in 0.0..=1.0f64) {
        let blockwise = |phi: &PureQubit| {
            let a = phi.lower_population();
            (a / mu).min(1.0)
        };
        let expected = d.p() * blockwise(d.phi1()) + (1.0 - d.p()) * blockwise(d.phi2());
        if mu > 0.0 {
            prop_assert!((c_mu_direct_sum(mu, &d).unwrap() - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn breakpoint_verdict_is_sound(s in dsum(), t in dsum()) {
        let v = direct_sum_feasible(&s, &t);
        // Acceptance implies the inequality everywhere on a grid.
        if v.feasible {
            prop_assert!(grid_holds(&s, &t, 1001));
        } else {
            let mu = v.witness_mu.unwrap();
            prop_assert!(c_mu_direct_sum(mu, &s).unwrap() < c_mu_direct_sum(mu, &t).unwrap() - 1e-12);
            prop_assert!(v.lhs < v.rhs);
        }
        // A grid violation is always caught.
        if !grid_holds(&s, &t, 1001) {
            prop_assert!(!v.feasible);
        }
    }

    #[test]
    fn direct_sum_feasibility_is_reflexive_and_transitive(a in dsum(), b in dsum(), c in dsum()) {
        prop_assert!(direct_sum_feasible(&a, &a).feasible);
        if direct_sum_feasible(&a, &b).feasible && direct_sum_feasible(&b, &c).feasible {
            prop_assert!(direct_sum_feasible(&a, &c).feasible);
        }
    }

    #[test]
    fn qubit_feasibility_is_reflexive_and_transitive(a in state(), b in state(), c in state()) {
        prop_assert!(qubit_transform_feasible(&a, &a));
        if qubit_transform_feasible(&a, &b) && qubit_transform_feasible(&b, &c) {
            prop_assert!(qubit_transform_feasible(&a, &c));
        }
    }

    #[test]
    fn xi_is_one_exactly_on_pure_coherent(phi in block()) {
        let m = qubit_monotones(&phi.density());
        if phi.lower_population() > 1e-6 {
            prop_assert!((m.xi - 1.0).abs() <= 1e-9);
        }
        prop_assert!(m.xi <= 1.0);
    }

    #[test]
    fn single_precision_agrees(rho in state()) {
        let r32 = QubitState32::new(rho.rho00() as f32, Complex::new(rho.rho01().re as f32, rho.rho01().im as f32));
        if let Ok(r32) = r32 {
            for (s64, s32) in [
                (MeasureSpec::<f64>::geometric(), MeasureSpec::<f32>::geometric()),
                (MeasureSpec::<f64>::concurrence(), MeasureSpec::<f32>::concurrence()),
                (MeasureSpec::<f64>::formation(), MeasureSpec::<f32>::formation()),
            ] {
                let a = s64.closed_form(&rho).unwrap();
                let b = s32.closed_form(&r32).unwrap() as f64;
                prop_assert!((a - b).abs() <= 1e-3, "{} {} {}", s64.id(), a, b);
            }
        }
    }
}
