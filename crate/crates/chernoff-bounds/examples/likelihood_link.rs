//! The maximum-likelihood connection.
//!
//! On the exponentially tilted family, the likelihood equation is
//! `K'(theta) = v_bar` with `v_bar` the sample mean of `v`, the same
//! stationarity condition the tail bound solves with target `v(a)`. A
//! sample whose mean is exactly `v(a)` therefore estimates the bound's
//! own tilt parameter, and the maximized likelihood folds back into the
//! bound as an n-th root.
//!
//! ```bash
//! cargo run --example likelihood_link
//! ```

use chernoff_bounds::{
    chernoff_from_likelihood, log_likelihood, ml_estimate, optimize_theta, DiscreteModel, Model,
    Sample, ValueFunction,
};

fn main() {
    let pmf = DiscreteModel::new(
        vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
        vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
    )
    .unwrap();
    let model = Model::from(pmf.clone());
    let v = ValueFunction::identity();

    let theta_hat = optimize_theta(&model, &v, 4.0, 1e-12).unwrap().theta_hat;
    println!("bound minimizer at a = 4: theta_hat = {theta_hat:.10}");

    // a sample with mean exactly 4: equal counts at atoms 3 and 5
    let sample = Sample::new(vec![0, 0, 10, 0, 10, 0, 0, 0]).unwrap();
    let sol = ml_estimate(&pmf, &v, &sample, 1e-12).unwrap();
    println!("ML estimate for that sample:  theta_ml  = {:.10}", sol.theta_hat);
    println!("difference: {:.2e}", (sol.theta_hat - theta_hat).abs());

    // the n-th-root identity holds for any sample, not just this one
    let arbitrary = Sample::new(vec![1, 7, 3, 2, 0, 1, 0, 1]).unwrap();
    let sol = ml_estimate(&pmf, &v, &arbitrary, 1e-12).unwrap();
    let l_max = log_likelihood(&pmf, &v, sol.theta_hat, &arbitrary).unwrap();
    let recovered = chernoff_from_likelihood(&pmf, &arbitrary, l_max).unwrap();
    let v_bar = chernoff_bounds::mle::sample_mean_v(&pmf, &v, &arbitrary).unwrap();
    let direct =
        (chernoff_bounds::cgf(&model, &v, sol.theta_hat).unwrap() - sol.theta_hat * v_bar).exp();
    println!("\narbitrary sample with mean {v_bar:.4}:");
    println!("  bound from the likelihood = {recovered:.15}");
    println!("  bound evaluated directly  = {direct:.15}");
    println!("  relative difference       = {:.2e}", ((recovered - direct) / direct).abs());
}
