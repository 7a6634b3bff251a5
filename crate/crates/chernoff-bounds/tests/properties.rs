//! Property tests for the structural invariants: convexity and
//! differentiability of the cumulant, overflow-safety of the log-domain
//! path, dominance and optimality of the bound, additivity of tilts, and
//! the algebraic likelihood identity.

use proptest::prelude::*;

use chernoff_bounds::chernoff::{bound, bound_log, optimize_theta, Attainment, DEFAULT_TOL};
use chernoff_bounds::measures::{cgf, cgf_prime, cgf_second, mean_v, tail_prob, DiscreteModel, Model, ValueFunction};
use chernoff_bounds::mle::{log_likelihood, ml_estimate, sample_mean_v, Sample};
use chernoff_bounds::projection::tilt;

/// Random pmf on a strictly positive, strictly increasing support with
/// masses bounded away from zero.
fn pmf_strategy() -> impl Strategy<Value = DiscreteModel> {
    (2usize..=16).prop_flat_map(|m| {
        (
            proptest::collection::vec(0.1f64..2.0, m),
            proptest::collection::vec(0.05f64..1.0, m),
            0.5f64..4.0,
        )
            .prop_map(|(gaps, raw, start)| {
                let mut x = start;
                let support: Vec<f64> = gaps
                    .iter()
                    .map(|g| {
                        x += g;
                        x
                    })
                    .collect();
                let sum: f64 = raw.iter().sum();
                let prob: Vec<f64> = raw.iter().map(|r| r / sum).collect();
                DiscreteModel::new(support, prob).expect("generated pmf is valid")
            })
    })
}

fn value_strategy() -> impl Strategy<Value = ValueFunction> {
    prop_oneof![
        Just(ValueFunction::identity()),
        Just(ValueFunction::logarithm()),
        (0.0f64..2.0, 0.1f64..3.0)
            .prop_map(|(c, s)| ValueFunction::affine(c, s).expect("valid affine")),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, .. ProptestConfig::default() })]

    #[test]
    fn cgf_is_convex_in_theta(
        pmf in pmf_strategy(),
        v in value_strategy(),
        t1 in -3.0f64..3.0,
        t2 in -3.0f64..3.0,
        lambda in 0.0f64..1.0,
    ) {
        let m = Model::from(pmf);
        let mid = lambda * t1 + (1.0 - lambda) * t2;
        let k_mid = cgf(&m, &v, mid).unwrap();
        let chord = lambda * cgf(&m, &v, t1).unwrap() + (1.0 - lambda) * cgf(&m, &v, t2).unwrap();
        prop_assert!(k_mid <= chord + 1e-10, "K({mid}) = {k_mid} > chord {chord}");
    }

    #[test]
    fn cgf_prime_matches_finite_differences(
        pmf in pmf_strategy(),
        v in value_strategy(),
        theta in -2.0f64..2.0,
    ) {
        let m = Model::from(pmf);
        let h = 1e-5;
        let fd = (cgf(&m, &v, theta + h).unwrap() - cgf(&m, &v, theta - h).unwrap()) / (2.0 * h);
        let exact = cgf_prime(&m, &v, theta).unwrap();
        prop_assert!(
            (fd - exact).abs() <= 1e-6 * exact.abs().max(1.0),
            "fd {fd} vs exact {exact}"
        );
    }

    #[test]
    fn log_domain_cgf_equals_naive_summation(
        pmf in pmf_strategy(),
        theta in -10.0f64..10.0,
    ) {
        // the naive sum stays finite for these supports and tilts
        let naive: f64 = pmf
            .support()
            .iter()
            .zip(pmf.prob())
            .map(|(x, q)| q * f64::exp(theta * x))
            .sum();
        prop_assume!(naive.is_finite() && naive > 0.0);
        let m = Model::from(pmf);
        let k = cgf(&m, &ValueFunction::identity(), theta).unwrap();
        prop_assert!(
            (k - naive.ln()).abs() <= 1e-12 * naive.ln().abs().max(1.0),
            "log-domain {k} vs naive {}",
            naive.ln()
        );
    }

    #[test]
    fn tail_is_non_increasing(
        pmf in pmf_strategy(),
        a1 in 0.0f64..40.0,
        a2 in 0.0f64..40.0,
    ) {
        let m = Model::from(pmf);
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        prop_assert!(tail_prob(&m, hi) <= tail_prob(&m, lo) + 1e-15);
    }

    #[test]
    fn bound_dominates_the_tail(
        pmf in pmf_strategy(),
        u in 0.0f64..0.999,
    ) {
        let m = Model::from(pmf.clone());
        let ex = m.mean();
        let top = *pmf.support().last().unwrap();
        let a = ex + u * (top - ex);
        let report = bound(&m, &ValueFunction::identity(), a, DEFAULT_TOL).unwrap();
        prop_assert!(report.tilt.theta_hat >= 0.0);
        prop_assert!(report.bound <= 1.0, "bound = {}", report.bound);
        let tail = report.true_tail.unwrap();
        prop_assert!(
            tail <= report.bound + 1e-12,
            "tail {tail} above bound {}",
            report.bound
        );
    }

    #[test]
    fn optimizer_beats_random_tilts(
        pmf in pmf_strategy(),
        u in 0.0f64..0.95,
        w in 0.0f64..1.0,
    ) {
        let m = Model::from(pmf.clone());
        let v = ValueFunction::identity();
        let ex = m.mean();
        let top = *pmf.support().last().unwrap();
        let a = ex + u * (top - ex);
        let sol = optimize_theta(&m, &v, a, DEFAULT_TOL).unwrap();
        prop_assume!(sol.attained == Attainment::Attained || sol.attained == Attainment::TrivialZero);
        let c = bound_log(&m, &v, a, DEFAULT_TOL).unwrap();
        let other_theta = w * (2.0 * sol.theta_hat + 1.0);
        let other = cgf(&m, &v, other_theta).unwrap() - other_theta * a;
        prop_assert!(other >= c - 1e-10, "objective({other_theta}) = {other} < minimum {c}");
    }

    #[test]
    fn bound_is_monotone_in_the_threshold(
        pmf in pmf_strategy(),
        u1 in 0.0f64..0.99,
        u2 in 0.0f64..0.99,
    ) {
        let m = Model::from(pmf.clone());
        let v = ValueFunction::identity();
        let ex = m.mean();
        let top = *pmf.support().last().unwrap();
        let (ua, ub) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
        let b_lo = bound(&m, &v, ex + ua * (top - ex), DEFAULT_TOL).unwrap().bound;
        let b_hi = bound(&m, &v, ex + ub * (top - ex), DEFAULT_TOL).unwrap().bound;
        prop_assert!(b_hi <= b_lo + 1e-12, "bound rose from {b_lo} to {b_hi}");
    }

    #[test]
    fn tilts_compose_additively(
        pmf in pmf_strategy(),
        t1 in -2.0f64..2.0,
        t2 in -2.0f64..2.0,
    ) {
        let m = Model::from(pmf);
        let v = ValueFunction::identity();
        let stepwise = tilt(&tilt(&m, &v, t1).unwrap().tilted, &v, t2).unwrap();
        let direct = tilt(&m, &v, t1 + t2).unwrap();
        let a = stepwise.tilted.as_discrete().unwrap();
        let b = direct.tilted.as_discrete().unwrap();
        for (x, y) in a.prob().iter().zip(b.prob()) {
            prop_assert!((x - y).abs() <= 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn per_observation_likelihood_identity(
        pmf in pmf_strategy(),
        counts in proptest::collection::vec(0u64..50, 2..=16),
    ) {
        // l(theta_ml)/n = sum (n_i/n) log q_i - [K(theta_ml) - theta_ml v_bar]
        let m = pmf.len();
        let mut counts = counts;
        counts.resize(m, 0);
        prop_assume!(counts.iter().sum::<u64>() > 0);
        let sample = Sample::new(counts).unwrap();
        let v = ValueFunction::identity();
        let model = Model::from(pmf.clone());
        let v_bar = sample_mean_v(&pmf, &v, &sample).unwrap();
        let sol = match ml_estimate(&pmf, &v, &sample, DEFAULT_TOL) {
            Ok(sol) => sol,
            Err(_) => return Ok(()), // boundary sample
        };
        let n = sample.total() as f64;
        let lhs = log_likelihood(&pmf, &v, sol.theta_hat, &sample).unwrap() / n;
        let base: f64 = sample
            .counts()
            .iter()
            .zip(pmf.prob())
            .map(|(&c, &q)| c as f64 / n * q.ln())
            .sum();
        let rhs = base - (cgf(&model, &v, sol.theta_hat).unwrap() - sol.theta_hat * v_bar);
        prop_assert!((lhs - rhs).abs() <= 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn mean_v_is_consistent_with_zero_tilt_derivative(
        pmf in pmf_strategy(),
        v in value_strategy(),
    ) {
        let m = Model::from(pmf);
        let direct = mean_v(&m, &v).unwrap();
        let from_cgf = cgf_prime(&m, &v, 0.0).unwrap();
        prop_assert!((direct - from_cgf).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn cgf_second_matches_finite_differences(
        pmf in pmf_strategy(),
        v in value_strategy(),
        theta in -2.0f64..2.0,
    ) {
        let m = Model::from(pmf);
        let h = 1e-5;
        let fd = (cgf_prime(&m, &v, theta + h).unwrap() - cgf_prime(&m, &v, theta - h).unwrap())
            / (2.0 * h);
        let exact = cgf_second(&m, &v, theta).unwrap();
        prop_assert!(
            (fd - exact).abs() <= 1e-5 * exact.abs().max(1.0),
            "fd {fd} vs exact {exact}"
        );
    }
}

/// Every model and solver type is immutable after construction; the whole
/// API is usable across threads.
#[test]
fn models_and_reports_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<DiscreteModel>();
    assert_send_sync::<Model>();
    assert_send_sync::<ValueFunction>();
    assert_send_sync::<Sample>();
    assert_send_sync::<chernoff_bounds::BoundReport>();
    assert_send_sync::<chernoff_bounds::Projection>();
}
