//! Closed-form families have analytic minimizers, so the solver's output
//! can be checked against pencil-and-paper values.
//!
//! For the standard gaussian the minimizer is `theta = a` and the bound is
//! `exp(-a^2/2)`; for the unit-rate exponential and `a > 1` the minimizer
//! is `1 - 1/a` and the bound is `a exp(1 - a)`.
//!
//! ```bash
//! cargo run --example closed_form_families
//! ```

use chernoff_bounds::{bound, Family, Model, ValueFunction};

fn main() {
    let v = ValueFunction::identity();

    let gaussian = Model::from(Family::gaussian(0.0, 1.0).unwrap());
    println!("standard gaussian:");
    println!("{:>4}  {:>12}  {:>12}  {:>12}", "a", "theta", "bound", "exp(-a^2/2)");
    for a in [0.5, 1.0, 2.0] {
        let r = bound(&gaussian, &v, a, 1e-12).unwrap();
        println!(
            "{a:>4}  {:>12.8}  {:>12.8}  {:>12.8}",
            r.tilt.theta_hat,
            r.bound,
            (-a * a / 2.0_f64).exp(),
        );
    }

    let exponential = Model::from(Family::exponential(1.0).unwrap());
    println!("\nunit-rate exponential:");
    println!("{:>4}  {:>12}  {:>12}  {:>12}  {:>12}", "a", "theta", "bound", "a*exp(1-a)", "true tail");
    for a in [1.5, 2.0, 4.0] {
        let r = bound(&exponential, &v, a, 1e-12).unwrap();
        println!(
            "{a:>4}  {:>12.8}  {:>12.8}  {:>12.8}  {:>12.8}",
            r.tilt.theta_hat,
            r.bound,
            a * (1.0 - a).exp(),
            r.true_tail.unwrap(),
        );
    }
}
