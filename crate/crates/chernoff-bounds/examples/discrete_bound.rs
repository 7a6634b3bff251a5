//! Tail bound for a finite pmf, end to end.
//!
//! ```bash
//! cargo run --example discrete_bound
//! ```

use chernoff_bounds::{bound, DiscreteModel, Model, ValueFunction};

fn main() {
    // eight atoms, mean 3.19
    let model = Model::from(
        DiscreteModel::new(
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
            vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
        )
        .unwrap(),
    );
    let v = ValueFunction::identity();

    println!("E[X] = {:.4}", model.mean());
    println!("{:>3}  {:>10}  {:>10}  {:>10}", "a", "bound", "true tail", "theta");
    for a in [4.0, 5.0, 6.0, 7.0] {
        let report = bound(&model, &v, a, 1e-12).unwrap();
        println!(
            "{a:>3}  {:>10.4}  {:>10.4}  {:>10.4}",
            report.bound,
            report.true_tail.unwrap(),
            report.tilt.theta_hat,
        );
    }

    // the full report for one threshold, as the CLI would print it
    let report = bound(&model, &v, 4.0, 1e-12).unwrap();
    println!("\nfull report at a = 4:");
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
