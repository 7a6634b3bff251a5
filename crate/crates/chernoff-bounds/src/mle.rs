//! Maximum likelihood on the exponentially tilted family, and its link to
//! the tail bound.
//!
//! Fix a discrete base pmf `q` and tilt it by `theta`:
//! `p_i(theta) = q_i exp(theta v(x_i) - K(theta))`. For a sample with
//! per-atom counts `n_i` the log-likelihood is
//!
//! ```text
//! l(theta) = sum_i n_i (log q_i + theta v(x_i) - K(theta))
//! ```
//!
//! which is concave in `theta`, and its stationarity condition is
//! `K'(theta) = v_bar`, the sample mean of `v`. That is the same equation
//! the tail bound solves with `v_bar` replaced by `v(a)`, so a sample
//! whose mean is exactly `v(a)` has its ML estimate coincide with the
//! bound's minimizer. Rearranging the maximized likelihood gives the
//! plain bound back as an n-th root:
//!
//! ```text
//! bound(v_bar) = (prod_i q_i^(n_i) / L_max)^(1/n)
//! ```
//!
//! an algebraic identity at every sample size. Read against the atom-wise
//! product form of the bound, the identity equates products whose
//! exponents are `p_i` on one side and `n_i / n` on the other; those only
//! coincide when the empirical frequencies equal the projection (the
//! asymptotic regime) or degenerately, when every ratio `q_i / p_i` is
//! one constant, making both products that constant regardless of the
//! exponents. The per-observation likelihood at the maximum converges (in
//! probability, as draws come from the projection `p`) to `-H(p)`, minus
//! the Shannon entropy of the projection; [`asymptotic_experiment`]
//! demonstrates that convergence with seeded multinomial draws.
//!
//! Unlike the bound path, the ML estimate is well-defined for sample
//! means below `E[v(X)]`, where the estimate is negative; only means at
//! or beyond the extremes of `v` on the support are rejected.

use serde::{Deserialize, Serialize};

use crate::chernoff::{self, Attainment, RootSearch, TiltSolution};
use crate::error::{Error, Result};
use crate::measures::{atom_moments, v_stats, DiscreteModel, Model, ValueFunction};
use crate::projection;
use crate::rng::{multinomial_counts, Xoshiro256PlusPlus};

/// Per-atom observation counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSample", into = "RawSample")]
pub struct Sample {
    counts: Vec<u64>,
    n: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSample {
    counts: Vec<u64>,
}

impl From<Sample> for RawSample {
    fn from(s: Sample) -> Self {
        RawSample { counts: s.counts }
    }
}

impl TryFrom<RawSample> for Sample {
    type Error = Error;
    fn try_from(raw: RawSample) -> Result<Self> {
        Sample::new(raw.counts)
    }
}

impl Sample {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        let n = counts.iter().sum();
        if n == 0 {
            return Err(Error::InvalidModel(
                "sample must contain at least one observation".into(),
            ));
        }
        Ok(Self { counts, n })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of observations.
    pub fn total(&self) -> u64 {
        self.n
    }
}

/// Checks the sample against the model: equal lengths and no observations
/// on zero-mass atoms.
fn check_sample(model: &DiscreteModel, sample: &Sample) -> Result<()> {
    if sample.counts.len() != model.len() {
        return Err(Error::SupportMismatch(format!(
            "sample has {} counts but the model has {} atoms",
            sample.counts.len(),
            model.len()
        )));
    }
    for (i, (&c, &q)) in sample.counts.iter().zip(model.prob()).enumerate() {
        if c > 0 && q == 0.0 {
            return Err(Error::ImpossibleSample { index: i, count: c });
        }
    }
    Ok(())
}

/// Sample mean of `v`: `(1/n) sum_i n_i v(x_i)`.
pub fn sample_mean_v(model: &DiscreteModel, v: &ValueFunction, sample: &Sample) -> Result<f64> {
    check_sample(model, sample)?;
    let mut acc = 0.0;
    for (&c, &x) in sample.counts.iter().zip(model.support()) {
        if c == 0 {
            continue;
        }
        let val = v.eval(x);
        if !val.is_finite() {
            return Err(Error::Evaluation(format!(
                "v({x}) = {val} is not finite on an observed atom"
            )));
        }
        acc += c as f64 * val;
    }
    Ok(acc / sample.n as f64)
}

/// Log-likelihood of the sample under the tilt `theta`, using the
/// log-domain normalizer.
pub fn log_likelihood(
    model: &DiscreteModel,
    v: &ValueFunction,
    theta: f64,
    sample: &Sample,
) -> Result<f64> {
    check_sample(model, sample)?;
    let (k, _, _) = atom_moments(model.support(), model.prob(), v, theta)?;
    let mut acc = 0.0;
    for ((&c, &x), &q) in sample.counts.iter().zip(model.support()).zip(model.prob()) {
        if c == 0 {
            continue;
        }
        acc += c as f64 * (q.ln() + theta * v.eval(x) - k);
    }
    Ok(acc)
}

/// Solves the likelihood equation `K'(theta) = v_bar`.
///
/// Reuses the bound's root finder with the sample mean as the target.
/// Negative estimates are permitted (sample mean below `E[v(X)]`); a mean
/// at or beyond the extremes of `v` over the positive-mass atoms makes the
/// estimate diverge and is rejected.
pub fn ml_estimate(
    model: &DiscreteModel,
    v: &ValueFunction,
    sample: &Sample,
    tol: f64,
) -> Result<TiltSolution> {
    ml_estimate_with(model, v, sample, tol, chernoff::DEFAULT_MAX_ITER)
}

/// [`ml_estimate`] with an explicit iteration budget.
pub fn ml_estimate_with(
    model: &DiscreteModel,
    v: &ValueFunction,
    sample: &Sample,
    tol: f64,
    max_iter: u32,
) -> Result<TiltSolution> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Evaluation(format!("tolerance must be > 0, got {tol}")));
    }
    let v_bar = sample_mean_v(model, v, sample)?;
    let m = Model::Discrete(model.clone());
    let stats = v_stats(&m, v)?;
    let interior = stats.min_v < v_bar && v_bar < stats.max_v;
    if !interior {
        return Err(Error::MlBoundary {
            v_bar,
            min_v: stats.min_v,
            max_v: stats.max_v,
        });
    }
    let (_, m0, _) = crate::measures::tilted_moments(&m, v, 0.0)?;
    let upward = v_bar >= m0;
    match chernoff::solve_tilted_mean(&m, v, v_bar, upward, tol, max_iter.max(1))? {
        RootSearch::Converged {
            theta,
            residual,
            iterations,
        } => Ok(TiltSolution {
            theta_hat: theta,
            residual,
            iterations,
            attained: if theta == 0.0 {
                Attainment::TrivialZero
            } else {
                Attainment::Attained
            },
        }),
        RootSearch::CapHit { .. } => Err(Error::MlBoundary {
            v_bar,
            min_v: stats.min_v,
            max_v: stats.max_v,
        }),
    }
}

/// The plain bound recovered from the maximized likelihood:
/// `exp((sum_i n_i log q_i - l_max) / n)`.
///
/// `log_likelihood_at_max` is `l(theta_ML)` in log form (the likelihood
/// itself underflows long before the identity breaks). The result equals
/// the bound evaluated at the sample's own target `v_bar`, for every `n`.
pub fn chernoff_from_likelihood(
    model: &DiscreteModel,
    sample: &Sample,
    log_likelihood_at_max: f64,
) -> Result<f64> {
    check_sample(model, sample)?;
    let mut base = 0.0;
    for (&c, &q) in sample.counts.iter().zip(model.prob()) {
        if c > 0 {
            base += c as f64 * q.ln();
        }
    }
    Ok(((base - log_likelihood_at_max) / sample.n as f64).exp())
}

/// One row of the convergence table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: u64,
    /// `l(theta_ML) / n` for the drawn sample.
    pub loglik_over_n: f64,
    /// `-H(p)`: the limit the per-observation likelihood approaches.
    pub minus_entropy_target: f64,
    /// `|loglik_over_n - minus_entropy_target|`.
    pub deviation: f64,
    /// `max_i |n_i / n - p_i|`: distance of the empirical frequencies
    /// from the projection.
    pub empirical_max_dev: f64,
}

/// Draws multinomial samples of the sizes in `n_list` from the projection
/// at threshold `a` and tabulates the per-observation likelihood against
/// its entropy limit.
///
/// Sampling is driven by one xoshiro256++ stream seeded from `seed` and
/// consumed across the list in order, so the table is a pure function of
/// `(model, v, a, n_list, seed)`. No statistical test is applied; the
/// table reports raw numbers.
pub fn asymptotic_experiment(
    model: &DiscreteModel,
    v: &ValueFunction,
    a: f64,
    n_list: &[u64],
    seed: u64,
) -> Result<Vec<ExperimentRow>> {
    if n_list.is_empty() {
        return Err(Error::Parse("n_list must not be empty".into()));
    }
    if n_list.contains(&0) {
        return Err(Error::Parse("n_list entries must be >= 1".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("n_list must be strictly increasing".into()));
    }
    let m = Model::Discrete(model.clone());
    let proj = projection::i_projection(&m, v, a, chernoff::DEFAULT_TOL)?;
    let p_hat = proj
        .tilted
        .as_discrete()
        .ok_or_else(|| Error::InternalInvariantViolation("discrete tilt expected".into()))?;
    let target: f64 = p_hat
        .prob()
        .iter()
        .filter(|p| **p > 0.0)
        .map(|p| p * p.ln())
        .sum();

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let counts = multinomial_counts(&mut rng, n, p_hat.prob());
        let sample = Sample::new(counts)?;
        let loglik = match ml_estimate(model, v, &sample, chernoff::DEFAULT_TOL) {
            Ok(sol) => log_likelihood(model, v, sol.theta_hat, &sample)?,
            // all observations at an extreme of v: the likelihood's
            // supremum is the limit of the tilt, finite and explicit
            Err(Error::MlBoundary { v_bar, .. }) => boundary_loglik_limit(model, v, &sample, v_bar)?,
            Err(e) => return Err(e),
        };
        let loglik_over_n = loglik / n as f64;
        let empirical_max_dev = sample
            .counts()
            .iter()
            .zip(p_hat.prob())
            .map(|(&c, &p)| (c as f64 / n as f64 - p).abs())
            .fold(0.0, f64::max);
        rows.push(ExperimentRow {
            n,
            loglik_over_n,
            minus_entropy_target: target,
            deviation: (loglik_over_n - target).abs(),
            empirical_max_dev,
        });
    }
    Ok(rows)
}

/// Supremum of the log-likelihood when the sample mean of `v` sits at an
/// extreme: as `theta` runs away, the tilt concentrates on the atoms where
/// `v` equals that extreme, and `l -> sum_i n_i (log q_i - log S)` with
/// `S` the base mass of those atoms.
fn boundary_loglik_limit(
    model: &DiscreteModel,
    v: &ValueFunction,
    sample: &Sample,
    v_extreme: f64,
) -> Result<f64> {
    let mut mass = 0.0;
    for (&x, &q) in model.support().iter().zip(model.prob()) {
        if q > 0.0 && v.eval(x) == v_extreme {
            mass += q;
        }
    }
    if mass <= 0.0 {
        return Err(Error::InternalInvariantViolation(
            "no base mass at the sample's extreme value".into(),
        ));
    }
    let mut acc = 0.0;
    for (&c, &q) in sample.counts.iter().zip(model.prob()) {
        if c > 0 {
            acc += c as f64 * (q.ln() - mass.ln());
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chernoff::{optimize_theta, DEFAULT_TOL};

    fn paper_pmf() -> DiscreteModel {
        DiscreteModel::new(
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
            vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
        )
        .unwrap()
    }

    fn identity() -> ValueFunction {
        ValueFunction::identity()
    }

    #[test]
    fn untilted_likelihood_is_count_weighted_log_mass() {
        let m = paper_pmf();
        let s = Sample::new(vec![3, 1, 0, 0, 2, 0, 0, 0]).unwrap();
        let l = log_likelihood(&m, &identity(), 0.0, &s).unwrap();
        let expected = 3.0 * 0.05_f64.ln() + 0.4_f64.ln() + 2.0 * 0.10_f64.ln();
        assert!((l - expected).abs() <= 1e-12);

        let single = Sample::new(vec![0, 0, 1, 0, 0, 0, 0, 0]).unwrap();
        let l1 = log_likelihood(&m, &identity(), 0.0, &single).unwrap();
        assert!((l1 - 0.2_f64.ln()).abs() <= 1e-14);
    }

    #[test]
    fn likelihood_matches_per_term_oracle_at_the_tilt() {
        // counts are the projection at a=4 scaled to ~100 draws
        let m = paper_pmf();
        let s = Sample::new(vec![2, 25, 17, 17, 15, 14, 5, 4]).unwrap();
        let theta = optimize_theta(&Model::Discrete(m.clone()), &identity(), 4.0, DEFAULT_TOL)
            .unwrap()
            .theta_hat;
        let l = log_likelihood(&m, &identity(), theta, &s).unwrap();
        // independent per-term evaluation with a naive normalizer
        let z: f64 = m
            .support()
            .iter()
            .zip(m.prob())
            .map(|(x, q)| q * (theta * x).exp())
            .sum();
        let oracle: f64 = s
            .counts()
            .iter()
            .zip(m.support())
            .zip(m.prob())
            .map(|((&c, &x), &q)| c as f64 * (q.ln() + theta * x - z.ln()))
            .sum();
        assert!((l - oracle).abs() <= 1e-10, "{l} vs {oracle}");
    }

    #[test]
    fn sample_mean_at_the_model_mean_estimates_zero() {
        // 81 draws at 3, 19 at 4: mean (243 + 76) / 100 = 3.19 exactly
        let m = paper_pmf();
        let s = Sample::new(vec![0, 0, 81, 19, 0, 0, 0, 0]).unwrap();
        let sol = ml_estimate(&m, &identity(), &s, DEFAULT_TOL).unwrap();
        assert_eq!(sol.theta_hat, 0.0);
        assert_eq!(sol.attained, Attainment::TrivialZero);
    }

    #[test]
    fn ml_estimate_coincides_with_the_bound_minimizer() {
        let m = paper_pmf();
        let theta_bound =
            optimize_theta(&Model::Discrete(m.clone()), &identity(), 4.0, DEFAULT_TOL)
                .unwrap()
                .theta_hat;
        // two samples whose mean is exactly 4
        for counts in [vec![0, 0, 5, 0, 5, 0, 0, 0], vec![0, 3, 0, 0, 0, 3, 0, 0]] {
            let s = Sample::new(counts).unwrap();
            let sol = ml_estimate(&m, &identity(), &s, DEFAULT_TOL).unwrap();
            assert!(
                (sol.theta_hat - theta_bound).abs() <= 1e-8,
                "{} vs {theta_bound}",
                sol.theta_hat
            );
        }
    }

    #[test]
    fn negative_estimates_are_allowed() {
        let m = paper_pmf();
        // all mass at the bottom: sample mean 1.5 < E X
        let s = Sample::new(vec![5, 5, 0, 0, 0, 0, 0, 0]).unwrap();
        let sol = ml_estimate(&m, &identity(), &s, DEFAULT_TOL).unwrap();
        assert!(sol.theta_hat < 0.0, "theta = {}", sol.theta_hat);
        assert!(sol.residual <= DEFAULT_TOL * 1.5);
    }

    #[test]
    fn boundary_means_are_rejected() {
        let m = paper_pmf();
        let top = Sample::new(vec![0, 0, 0, 0, 0, 0, 0, 7]).unwrap();
        assert!(matches!(
            ml_estimate(&m, &identity(), &top, DEFAULT_TOL),
            Err(Error::MlBoundary { .. })
        ));
        let bottom = Sample::new(vec![4, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            ml_estimate(&m, &identity(), &bottom, DEFAULT_TOL),
            Err(Error::MlBoundary { .. })
        ));
    }

    #[test]
    fn observations_on_zero_mass_atoms_are_impossible() {
        let m = DiscreteModel::new(vec![1.0, 2.0, 3.0], vec![0.5, 0.5, 0.0]).unwrap();
        let s = Sample::new(vec![0, 0, 5]).unwrap();
        assert!(matches!(
            log_likelihood(&m, &identity(), 0.0, &s),
            Err(Error::ImpossibleSample { index: 2, count: 5 })
        ));
    }

    #[test]
    fn likelihood_bound_identity_holds_for_arbitrary_samples() {
        let m = paper_pmf();
        let v = identity();
        for counts in [
            vec![1, 7, 3, 2, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 1],
            vec![10, 0, 0, 0, 0, 0, 0, 3],
            vec![2, 25, 17, 17, 15, 14, 5, 4],
        ] {
            let s = Sample::new(counts).unwrap();
            let sol = ml_estimate(&m, &v, &s, DEFAULT_TOL).unwrap();
            let l_max = log_likelihood(&m, &v, sol.theta_hat, &s).unwrap();
            let from_likelihood = chernoff_from_likelihood(&m, &s, l_max).unwrap();
            // direct bound at the sample's own target
            let v_bar = sample_mean_v(&m, &v, &s).unwrap();
            let (k, _, _) = atom_moments(m.support(), m.prob(), &v, sol.theta_hat).unwrap();
            let direct = (k - sol.theta_hat * v_bar).exp();
            assert!(
                ((from_likelihood - direct) / direct).abs() <= 1e-10,
                "{from_likelihood} vs {direct}"
            );
        }
    }

    #[test]
    fn zero_estimate_gives_bound_one() {
        let m = paper_pmf();
        let s = Sample::new(vec![0, 0, 81, 19, 0, 0, 0, 0]).unwrap();
        let l0 = log_likelihood(&m, &identity(), 0.0, &s).unwrap();
        assert_eq!(chernoff_from_likelihood(&m, &s, l0).unwrap(), 1.0);
    }

    #[test]
    fn stationarity_of_the_estimate() {
        let m = paper_pmf();
        let v = identity();
        let s = Sample::new(vec![1, 7, 3, 2, 0, 1, 0, 1]).unwrap();
        let sol = ml_estimate(&m, &v, &s, DEFAULT_TOL).unwrap();
        let h = 1e-6;
        let up = log_likelihood(&m, &v, sol.theta_hat + h, &s).unwrap();
        let down = log_likelihood(&m, &v, sol.theta_hat - h, &s).unwrap();
        let slope = (up - down) / (2.0 * h);
        let n = s.total() as f64;
        assert!(slope.abs() <= 1e-6 * n, "slope = {slope}");
    }

    #[test]
    fn likelihood_is_concave_in_theta() {
        let m = paper_pmf();
        let v = identity();
        let s = Sample::new(vec![1, 7, 3, 2, 0, 1, 0, 1]).unwrap();
        for (t1, t2) in [(-1.0, 2.0), (0.0, 0.9), (-2.5, -0.3), (1.1, 3.0)] {
            let mid = log_likelihood(&m, &v, (t1 + t2) / 2.0, &s).unwrap();
            let chord = (log_likelihood(&m, &v, t1, &s).unwrap()
                + log_likelihood(&m, &v, t2, &s).unwrap())
                / 2.0;
            assert!(mid >= chord - 1e-10, "mid {mid} < chord {chord}");
        }
    }

    // Inverse-tilt construction: pick a dyadic target pmf, untilt it to get
    // the base model, and the projection at the dyadic mean is the target
    // again. Exact integer counts then make the empirical distribution
    // equal the projection.
    fn dyadic_setup() -> (DiscreteModel, Vec<f64>, f64) {
        let support = vec![1.0, 2.0, 3.0, 4.0];
        let p_target = vec![0.5, 0.25, 0.125, 0.125];
        let theta = 0.3;
        let unnorm: Vec<f64> = support
            .iter()
            .zip(&p_target)
            .map(|(x, p)| p * f64::exp(-theta * x))
            .collect();
        let z: f64 = unnorm.iter().sum();
        let q: Vec<f64> = unnorm.iter().map(|u| u / z).collect();
        let model = DiscreteModel::new(support.clone(), q).unwrap();
        let a: f64 = support.iter().zip(&p_target).map(|(x, p)| x * p).sum(); // 1.875
        (model, p_target, a)
    }

    #[test]
    fn plug_in_sample_attains_the_entropy_limit() {
        let (model, p_target, a) = dyadic_setup();
        let v = identity();
        let tol = 1e-14;
        let m = Model::Discrete(model.clone());
        let proj = projection::i_projection(&m, &v, a, tol).unwrap();
        let p_hat = proj.tilted.as_discrete().unwrap();
        for (got, want) in p_hat.prob().iter().zip(&p_target) {
            assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
        }
        // counts = 64 * p_target are integers; the empirical distribution
        // is the projection exactly
        let s = Sample::new(vec![32, 16, 8, 8]).unwrap();
        let sol = ml_estimate(&model, &v, &s, tol).unwrap();
        let l = log_likelihood(&model, &v, sol.theta_hat, &s).unwrap();
        let minus_entropy: f64 = p_hat
            .prob()
            .iter()
            .filter(|p| **p > 0.0)
            .map(|p| p * p.ln())
            .sum();
        let deviation = (l / 64.0 - minus_entropy).abs();
        assert!(deviation <= 1e-12, "deviation = {deviation}");
    }

    #[test]
    fn product_forms_agree_exactly_at_the_plug_in_sample() {
        let (model, p_target, _) = dyadic_setup();
        // exponent vectors p_i and n_i/n coincide, so the two products do too
        let n = 64.0;
        let counts = [32.0, 16.0, 8.0, 8.0];
        let mut by_p = 0.0;
        let mut by_freq = 0.0;
        for ((&q, &p), &c) in model.prob().iter().zip(&p_target).zip(&counts) {
            by_p += p * (q / p).ln();
            by_freq += (c / n) * (q / p).ln();
        }
        assert!((by_p.exp() - by_freq.exp()).abs() <= 1e-12);
    }

    #[test]
    fn experiment_produces_one_finite_row_for_n_one() {
        let m = paper_pmf();
        let rows = asymptotic_experiment(&m, &identity(), 4.0, &[1], 42).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!(r.loglik_over_n.is_finite());
        assert!(r.minus_entropy_target.is_finite());
        assert!(r.deviation.is_finite());
        assert!(r.empirical_max_dev.is_finite());
    }

    #[test]
    fn experiment_rejects_bad_n_lists() {
        let m = paper_pmf();
        let v = identity();
        assert!(asymptotic_experiment(&m, &v, 4.0, &[], 1).is_err());
        assert!(asymptotic_experiment(&m, &v, 4.0, &[0, 10], 1).is_err());
        assert!(asymptotic_experiment(&m, &v, 4.0, &[100, 100], 1).is_err());
    }

    #[test]
    fn experiment_at_the_mean_targets_the_base_entropy() {
        // projection at a = E X is the model itself, so the target is -H(q)
        let m = paper_pmf();
        let rows = asymptotic_experiment(&m, &identity(), 3.19, &[100], 1).unwrap();
        let h_q: f64 = m.prob().iter().map(|q| q * q.ln()).sum();
        assert!((rows[0].minus_entropy_target - h_q).abs() <= 1e-12);
    }

    #[test]
    fn experiment_is_deterministic_in_the_seed() {
        let m = paper_pmf();
        let a = asymptotic_experiment(&m, &identity(), 4.0, &[100, 1000], 7).unwrap();
        let b = asymptotic_experiment(&m, &identity(), 4.0, &[100, 1000], 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seeded_million_draw_estimate_sits_within_three_standard_errors() {
        let m = paper_pmf();
        let v = identity();
        let theta_ref = optimize_theta(&Model::Discrete(m.clone()), &v, 4.0, DEFAULT_TOL)
            .unwrap()
            .theta_hat;
        let proj = projection::i_projection(&Model::Discrete(m.clone()), &v, 4.0, DEFAULT_TOL)
            .unwrap();
        let p_hat = proj.tilted.as_discrete().unwrap();
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(42);
        let counts = multinomial_counts(&mut rng, 1_000_000, p_hat.prob());
        let s = Sample::new(counts).unwrap();
        let sol = ml_estimate(&m, &v, &s, DEFAULT_TOL).unwrap();

        // grid-search oracle over theta in [-5, 5] with step 1e-4: argmax
        // and curvature-based standard error, independent of the solver
        let step = 1e-4;
        let eval = |theta: f64| -> f64 {
            let z: f64 = m
                .support()
                .iter()
                .zip(m.prob())
                .map(|(x, q)| q * (theta * x).exp())
                .sum();
            s.counts()
                .iter()
                .zip(m.support())
                .zip(m.prob())
                .map(|((&c, &x), &q)| c as f64 * (q.ln() + theta * x - z.ln()))
                .sum()
        };
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut gi = -50_000i64;
        while gi <= 50_000 {
            let theta = gi as f64 * step;
            let l = eval(theta);
            if l > best.0 {
                best = (l, theta);
            }
            gi += 1;
        }
        let (_, theta_grid) = best;
        let curvature = (eval(theta_grid + step) - 2.0 * eval(theta_grid) + eval(theta_grid - step))
            / (step * step);
        assert!(curvature < 0.0);
        let se = (-1.0 / curvature).sqrt();
        assert!(
            (sol.theta_hat - theta_ref).abs() <= 3.0 * se,
            "theta_ml = {} vs theta_hat = {theta_ref}, se = {se}",
            sol.theta_hat
        );
        assert!((sol.theta_hat - theta_grid).abs() <= 2.0 * step);

        // the likelihood-form bound converges on the reference value
        let l_max = log_likelihood(&m, &v, sol.theta_hat, &s).unwrap();
        let b = chernoff_from_likelihood(&m, &s, l_max).unwrap();
        assert!((b - 0.8829).abs() <= 2e-3, "bound from likelihood = {b}");
    }
}
