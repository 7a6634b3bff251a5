//! Four expressions of the same bound value.
//!
//! The plain bound `exp(K(theta) - theta v(a))`, the divergence form
//! `exp(-KL)`, the atom-wise product form, and the mass ratio
//! `q(a) / p(a)` at the threshold all evaluate to one number. The ratio
//! form is the remarkable one: once the projection is known, the bound is
//! a single division.
//!
//! ```bash
//! cargo run --example bound_forms
//! ```

use chernoff_bounds::{
    bound, i_projection, kl_divergence, product_form_bound, ratio_form_bound, DiscreteModel,
    Model, ValueFunction,
};

fn main() {
    let pmf = DiscreteModel::new(
        vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
        vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
    )
    .unwrap();
    let model = Model::from(pmf.clone());
    let v = ValueFunction::identity();
    let a = 4.0;

    let report = bound(&model, &v, a, 1e-12).unwrap();
    let proj = i_projection(&model, &v, a, 1e-12).unwrap();
    let p_hat = proj.tilted.as_discrete().unwrap();

    let from_kl = (-kl_divergence(p_hat, &pmf).unwrap()).exp();
    let product = product_form_bound(&proj, &pmf).unwrap();
    let ratio = ratio_form_bound(&model, &proj, a).unwrap();

    println!("threshold a = {a}");
    println!("  plain bound      = {:.15}", report.bound);
    println!("  exp(-KL)         = {from_kl:.15}");
    println!("  product form     = {product:.15}");
    println!("  ratio q(a)/p(a)  = {ratio:.15}");

    let forms = [report.bound, from_kl, product, ratio];
    let worst = forms
        .iter()
        .flat_map(|x| forms.iter().map(move |y| ((x - y) / y).abs()))
        .fold(0.0, f64::max);
    println!("  worst pairwise relative discrepancy: {worst:.3e}");

    // the ratio form spelled out
    println!(
        "\n  q(4) = {:.6}, p(4) = {:.6}, ratio = {:.6}",
        pmf.prob()[3],
        p_hat.prob()[3],
        pmf.prob()[3] / p_hat.prob()[3]
    );
}
