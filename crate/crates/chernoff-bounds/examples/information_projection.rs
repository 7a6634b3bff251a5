//! Tilting and the moment-constrained projection.
//!
//! Tilting reweights a model by `exp(theta v(x))`; the projection picks
//! the tilt whose mean of `v` hits the constraint `v(a)`: the closest
//! distribution to the base model (in divergence) among those satisfying
//! the constraint.
//!
//! ```bash
//! cargo run --example information_projection
//! ```

use chernoff_bounds::{i_projection, mean_v, tilt, DiscreteModel, Model, ValueFunction};

fn main() {
    let pmf = DiscreteModel::new(
        vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
        vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
    )
    .unwrap();
    let model = Model::from(pmf.clone());
    let v = ValueFunction::identity();

    // plain tilts drag the mean upward with theta
    println!("{:>6}  {:>8}  {:>8}", "theta", "E[X]", "KL");
    for theta in [0.0, 0.25, 0.5, 1.0] {
        let t = tilt(&model, &v, theta).unwrap();
        let mean = mean_v(&t.tilted, &v).unwrap();
        println!("{theta:>6.2}  {mean:>8.4}  {:>8.4}", t.kl);
    }

    // the projection solves for the tilt that puts the mean at v(a)
    let a = 4.0;
    let proj = i_projection(&model, &v, a, 1e-12).unwrap();
    println!("\nprojection onto {{P : E_P[X] = {a}}}:");
    println!("  theta_hat      = {:.6}", proj.theta_hat);
    println!("  log normalizer = {:.6}", proj.log_normalizer);
    println!("  divergence     = {:.6}", proj.kl);
    let p_hat = proj.tilted.as_discrete().unwrap();
    println!("  constraint     : E[X] = {:.12}", mean_v(&proj.tilted, &v).unwrap());
    println!("\n  {:>3}  {:>8}  {:>8}", "x", "q", "p_hat");
    for ((x, q), p) in pmf.support().iter().zip(pmf.prob()).zip(p_hat.prob()) {
        println!("  {x:>3}  {q:>8.4}  {p:>8.4}");
    }
}
