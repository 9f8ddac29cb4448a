mod common;

use common::{decay_strategy, lag_strategy, load_strategy, rel_close};
use ffdelay::model::*;
use proptest::prelude::*;

fn state_params_strategy() -> impl Strategy<Value = StateParams> {
    prop_oneof![
        decay_strategy().prop_map(|t| StateParams::Classical(FirstOrderParams::new(t).unwrap())),
        (decay_strategy(), lag_strategy())
            .prop_map(|(t, l)| StateParams::SingleDelay(SingleDelayParams::new(t, l).unwrap())),
        (decay_strategy(), lag_strategy(), lag_strategy(), lag_strategy()).prop_map(|(t, a, b, c)| {
            StateParams::ThreeDelay(ThreeDelayParams::new(t, a, b, c).unwrap())
        }),
        (decay_strategy(), -1.0..0.5_f64)
            .prop_map(|(t, k)| StateParams::Kernel(KernelParams::new(t, k).unwrap())),
    ]
}

fn weights_strategy() -> impl Strategy<Value = [f64; 3]> {
    (0.05..1.0_f64, 0.05..1.0_f64, 0.05..1.0_f64).prop_map(|(a, b, c)| {
        let s = a + b + c;
        let (a, b) = (a / s, b / s);
        [a, b, 1.0 - a - b]
    })
}

fn state(p: &StateParams, w: &LoadSeries) -> Vec<f64> {
    p.evaluate(w, w.len()).unwrap().into_values()
}

proptest! {
    #[test]
    fn zero_load_gives_zero_state_and_baseline(
        len in 1usize..200,
        fitness in state_params_strategy(),
        p0 in 0.0..1000.0_f64,
    ) {
        let w = LoadSeries::zeros(len);
        prop_assert!(state(&fitness, &w).iter().all(|&g| g == 0.0));
        let params = PerformanceParams::with_states(p0, 0.1, 0.2, fitness, fitness).unwrap();
        prop_assert!(eval_performance(&w, &params, len).unwrap().iter().all(|&p| p == p0));
    }

    #[test]
    fn state_is_linear_in_load(
        w1 in load_strategy(200),
        seed in prop::collection::vec(0.0..200.0_f64, 200),
        alpha in 0.0..3.0_f64,
        beta in 0.0..3.0_f64,
        params in state_params_strategy(),
    ) {
        let mut v2: Vec<f64> = seed[..w1.len()].to_vec();
        v2[0] = 0.0;
        let w2 = LoadSeries::new(v2).unwrap();
        let mixed: Vec<f64> =
            w1.values().iter().zip(w2.values()).map(|(a, b)| alpha * a + beta * b).collect();
        let lhs = state(&params, &LoadSeries::new(mixed).unwrap());
        let rhs: Vec<f64> = state(&params, &w1)
            .iter()
            .zip(state(&params, &w2))
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        prop_assert!(rel_close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn single_delay_convolution_matches_recursion(
        w in load_strategy(1000),
        decay in decay_strategy(),
        lag in lag_strategy(),
    ) {
        let p = SingleDelayParams::new(decay, lag).unwrap();
        let rec = eval_single_delay_recursive(&w, &p, w.len()).unwrap();
        let conv = eval_single_delay_convolution(&w, &p, w.len()).unwrap();
        prop_assert!(rel_close(rec.values(), conv.values(), 1e-9));
    }

    #[test]
    fn three_delay_convolution_matches_recursion(
        w in load_strategy(1000),
        decay in decay_strategy(),
        l1 in lag_strategy(),
        l2 in lag_strategy(),
        l3 in lag_strategy(),
    ) {
        let p = ThreeDelayParams::new(decay, l1, l2, l3).unwrap();
        let rec = eval_three_delay_recursive(&w, &p, w.len()).unwrap();
        let conv = eval_three_delay_convolution(&w, &p, w.len()).unwrap();
        prop_assert!(rel_close(rec.values(), conv.values(), 1e-9));
    }

    #[test]
    fn reduction_chain_collapses_to_classical(w in load_strategy(365), decay in decay_strategy()) {
        let n = w.len();
        let inf = f64::INFINITY;
        let classical = eval_classical(&w, &FirstOrderParams::new(decay).unwrap(), n).unwrap();
        let single = eval_single_delay_recursive(&w, &SingleDelayParams::new(decay, inf).unwrap(), n).unwrap();
        let three = eval_three_delay_recursive(&w, &ThreeDelayParams::new(decay, inf, inf, inf).unwrap(), n).unwrap();
        let kernel = eval_kernel_recursive(&w, &KernelParams::new(decay, 0.0).unwrap(), n).unwrap();
        for other in [&single, &three, &kernel] {
            prop_assert!(rel_close(classical.values(), other.values(), 1e-12));
        }
    }

    #[test]
    fn three_delay_with_two_lags_off_is_single_delay(
        w in load_strategy(365),
        decay in decay_strategy(),
        lag in lag_strategy(),
    ) {
        let n = w.len();
        let inf = f64::INFINITY;
        let single = eval_single_delay_recursive(&w, &SingleDelayParams::new(decay, lag).unwrap(), n).unwrap();
        let three = eval_three_delay_recursive(&w, &ThreeDelayParams::new(decay, lag, inf, inf).unwrap(), n).unwrap();
        prop_assert!(rel_close(single.values(), three.values(), 1e-12));
    }

    #[test]
    fn kernel_agrees_with_mapped_three_delay(
        w in load_strategy(365),
        decay in decay_strategy(),
        tau5 in -1.0..-1e-3_f64,
        weights in weights_strategy(),
    ) {
        let kernel = KernelParams::with_weights(decay, tau5, weights).unwrap();
        let mapping = kernel_to_three_delay(&kernel).unwrap();
        prop_assert!(!mapping.sign_warning);
        let a = eval_kernel_recursive(&w, &kernel, w.len()).unwrap();
        let b = eval_three_delay_recursive(&w, &mapping.params, w.len()).unwrap();
        prop_assert!(rel_close(a.values(), b.values(), 1e-12));
    }

    #[test]
    fn classical_impulse_decays_geometrically(
        len in 3usize..200,
        day in 1usize..100,
        decay in decay_strategy(),
    ) {
        prop_assume!(day + 2 < len);
        let mut v = vec![0.0; len];
        v[day] = 1.0;
        let w = LoadSeries::new(v).unwrap();
        let p = FirstOrderParams::new(decay).unwrap();
        let a = (-1.0 / decay).exp();
        // The step recursion multiplies by exactly this factor.
        let g = StateParams::Classical(p).evaluate(&w, len).unwrap();
        for n in day + 1..len - 1 {
            prop_assert_eq!(g.values()[n + 1], g.values()[n] * a);
        }
        // The direct sum rounds each power separately.
        let direct = eval_classical(&w, &p, len).unwrap();
        for n in day + 1..len - 1 {
            let ratio = direct.values()[n + 1] / direct.values()[n];
            prop_assert!((ratio - a).abs() <= 1e-13 * a);
        }
    }

    #[test]
    fn evaluation_is_repeatable(w in load_strategy(365), params in state_params_strategy()) {
        prop_assert_eq!(state(&params, &w), state(&params, &w));
    }
}

#[test]
fn kernel_example_maps_to_documented_lags() {
    let m = kernel_to_three_delay(&KernelParams::new(1.0, -0.5).unwrap()).unwrap();
    let lags = m.params.lags().map(|l| l.tau());
    assert!((lags[0] - 4.0).abs() < 1e-12);
    assert!((lags[1] - 20.0 / 3.0).abs() < 1e-12);
    assert!((lags[2] - 10.0).abs() < 1e-12);
    let vanishing = kernel_to_three_delay(&KernelParams::new(1.0, 0.0).unwrap()).unwrap();
    assert!(vanishing.params.lags().iter().all(|l| l.is_none()));
}

#[test]
fn positive_kernel_gain_maps_with_sign_warning() {
    let kernel = KernelParams::new(20.0, 0.3).unwrap();
    let m = kernel_to_three_delay(&kernel).unwrap();
    assert!(m.sign_warning);
    assert!(m.params.lags().iter().all(|l| l.is_negative()));
    let w = ffdelay::synthetic::block_periodized_load(120);
    let a = eval_kernel_recursive(&w, &kernel, 120).unwrap();
    let b = eval_three_delay_recursive(&w, &m.params, 120).unwrap();
    assert!(rel_close(a.values(), b.values(), 1e-12));
}

#[test]
fn symmetric_fitness_and_fatigue_cancel() {
    let w = ffdelay::synthetic::block_periodized_load(200);
    let s = SingleDelayParams::new(30.0, 12.0).unwrap();
    let p = PerformanceParams::new(480.0, 0.7, 0.7, s, s).unwrap();
    assert!(eval_performance(&w, &p, 200).unwrap().iter().all(|&v| v == 480.0));
}

#[test]
fn embedding_preserves_predictions() {
    let w = ffdelay::synthetic::block_periodized_load(150);
    let base = PerformanceParams::with_states(
        500.0,
        0.1,
        0.12,
        StateParams::Classical(FirstOrderParams::new(40.0).unwrap()),
        StateParams::Classical(FirstOrderParams::new(12.0).unwrap()),
    )
    .unwrap();
    let want = eval_performance(&w, &base, 150).unwrap();
    for target in Variant::ALL {
        let embedded = base.embed_in(target).unwrap();
        assert_eq!(embedded.variant(), target);
        let got = eval_performance(&w, &embedded, 150).unwrap();
        assert!(rel_close(&got, &want, 1e-12), "{target}");
    }
}
