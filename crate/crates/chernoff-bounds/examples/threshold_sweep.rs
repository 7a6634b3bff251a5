//! Sweeping the threshold across the feasible range.
//!
//! Emits the same CSV the `sweep` subcommand prints. The bound is 1 at the
//! mean, decreases monotonically, and at the top atom collapses to that
//! atom's mass, where it is exactly tight.
//!
//! ```bash
//! cargo run --example threshold_sweep
//! ```

use chernoff_bounds::{bound, DiscreteModel, Model, ValueFunction};

fn main() {
    let model = Model::from(
        DiscreteModel::new(
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
            vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
        )
        .unwrap(),
    );
    let v = ValueFunction::identity();
    let ex = model.mean();

    println!("a,theta_hat,log_bound,bound,true_tail,kl");
    let mut a = ex;
    while a <= 8.0 + 1e-9 {
        let r = bound(&model, &v, a, 1e-12).unwrap();
        println!(
            "{a:.4},{:.6},{:.6},{:.6},{:.6},{:.6}",
            r.tilt.theta_hat,
            r.log_bound,
            r.bound,
            r.true_tail.unwrap(),
            r.kl_value
        );
        a += 0.37;
    }
}
