//! The tilt optimization and the tail bound.
//!
//! For a threshold `a >= E[X]` the bound is
//!
//! ```text
//! P(X >= a) <= min over theta of E exp(theta (v(X) - v(a)))
//! ```
//!
//! and the minimizer `theta_hat` solves the stationarity condition
//! `K'(theta) = v(a)`, where `K` is the cumulant generating function of
//! `v(X)`. The objective is smooth and convex, so the solver runs Newton
//! on the stationarity condition inside a sign-changing bracket, falling
//! back to bisection whenever a Newton step leaves the bracket. The
//! stationarity residual `|K'(theta) - v(a)|` is the stopping criterion,
//! scaled by `max(1, |v(a)|)`.
//!
//! Brackets start at `[0, 1]` and double upward. For bounded `v` the
//! expansion stops at `700 / (max v - min v)`, past which the shifted
//! exponents carry no further f64 resolution; reaching that cap means the
//! minimum is not attained at finite `theta` (the threshold sits at the
//! top of the support) and the bound is reported as the analytic limit
//! of the objective instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    self, cgf, tail_prob, tilted_moments, v_stats, validate_pairing, Model, ValueFunction,
};
use crate::projection::{self, ProjectionRecord};

/// Default absolute tolerance on the stationarity residual, scaled by
/// `max(1, |v(a)|)`.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration budget for the root finder.
pub const DEFAULT_MAX_ITER: u32 = 200;

/// Exponent budget that keeps every shifted sum inside f64 range.
const OVERFLOW_BUDGET: f64 = 700.0;

/// How the minimization over the tilt parameter ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attainment {
    /// An interior minimizer was found with residual within tolerance.
    Attained,
    /// The infimum is approached as `theta` grows without bound;
    /// `theta_hat` records where the search stopped.
    InfimumAtInfinity,
    /// `v(a)` equals `E[v(X)]`, so `theta_hat = 0` and the bound is 1.
    TrivialZero,
}

/// Result of solving `K'(theta) = target`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TiltSolution {
    /// The minimizing tilt parameter (the search cap when not attained).
    pub theta_hat: f64,
    /// `|K'(theta_hat) - target|` at exit.
    pub residual: f64,
    pub iterations: u32,
    pub attained: Attainment,
}

/// Everything the bound computation produces for one threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub a: f64,
    pub v_of_a: f64,
    pub tilt: TiltSolution,
    /// Log of the bound; `-inf` (serialized as null) only in the
    /// degenerate constant-v case where the tail is exactly empty.
    #[serde(with = "neg_infinity_as_null")]
    pub log_bound: f64,
    /// `exp(log_bound)`.
    pub bound: f64,
    pub true_tail: Option<f64>,
    /// Divergence of the projection from the base model; `+inf`
    /// (serialized as null) only in the degenerate empty-tail case.
    #[serde(with = "pos_infinity_as_null")]
    pub kl_value: f64,
    /// Product-form value (discrete models only).
    pub product_form: Option<f64>,
    /// Mass/density-ratio value, when `a` admits one.
    pub ratio_form: Option<f64>,
    pub projection: Option<ProjectionRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

mod neg_infinity_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NEG_INFINITY))
    }
}

mod pos_infinity_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

// ---------------------------------------------------------------------------
// Root finding on the stationarity condition
// ---------------------------------------------------------------------------

pub(crate) enum RootSearch {
    Converged {
        theta: f64,
        residual: f64,
        iterations: u32,
    },
    /// The root lies beyond the overflow-safe cap; `theta` is the cap.
    CapHit {
        theta: f64,
        residual: f64,
        iterations: u32,
    },
}

/// Solves `K'(theta) = target` for a target on the given side of
/// `K'(0)`. `upward` searches `theta >= 0`, otherwise `theta <= 0`.
pub(crate) fn solve_tilted_mean(
    model: &Model,
    v: &ValueFunction,
    target: f64,
    upward: bool,
    tol: f64,
    max_iter: u32,
) -> Result<RootSearch> {
    let tol_abs = tol * target.abs().max(1.0);
    let (_, m0, _) = tilted_moments(model, v, 0.0)?;
    if (m0 - target).abs() <= tol_abs {
        return Ok(RootSearch::Converged {
            theta: 0.0,
            residual: (m0 - target).abs(),
            iterations: 0,
        });
    }

    let stats = v_stats(model, v)?;
    let cap = if stats.bounded {
        OVERFLOW_BUDGET / (stats.max_v - stats.min_v)
    } else {
        f64::INFINITY
    };
    let (dom_lo, dom_hi) = measures::theta_domain(model, v)?;

    // Expand a sign-changing bracket away from zero.
    let mut iterations = 0u32;
    let (mut lo, mut hi, mut f_lo, mut f_hi);
    if upward {
        debug_assert!(target > m0);
        lo = 0.0;
        f_lo = m0 - target;
        let mut gap = if dom_hi.is_finite() { dom_hi } else { f64::NAN };
        hi = if dom_hi.is_finite() {
            dom_hi / 2.0
        } else {
            1.0_f64.min(cap)
        };
        loop {
            iterations += 1;
            let (_, kp, _) = tilted_moments(model, v, hi)?;
            f_hi = kp - target;
            if f_hi >= 0.0 {
                break;
            }
            lo = hi;
            f_lo = f_hi;
            if dom_hi.is_finite() {
                gap /= 2.0;
                if gap < f64::MIN_POSITIVE || iterations > 4000 {
                    return Err(Error::NoConvergence {
                        theta: hi,
                        residual: f_hi.abs(),
                        iterations,
                    });
                }
                hi = dom_hi - gap;
            } else {
                if hi >= cap {
                    return Ok(RootSearch::CapHit {
                        theta: cap,
                        residual: f_hi.abs(),
                        iterations,
                    });
                }
                hi = (hi * 2.0).min(cap);
            }
        }
    } else {
        debug_assert!(target < m0);
        hi = 0.0;
        f_hi = m0 - target;
        // dom_lo is -inf for every supported model, so only the cap
        // limits the downward search
        debug_assert_eq!(dom_lo, f64::NEG_INFINITY);
        let neg_cap = if cap.is_finite() { -cap } else { f64::NEG_INFINITY };
        lo = (-1.0_f64).max(neg_cap);
        loop {
            iterations += 1;
            let (_, kp, _) = tilted_moments(model, v, lo)?;
            f_lo = kp - target;
            if f_lo <= 0.0 {
                break;
            }
            hi = lo;
            f_hi = f_lo;
            if lo <= neg_cap {
                return Ok(RootSearch::CapHit {
                    theta: neg_cap,
                    residual: f_lo.abs(),
                    iterations,
                });
            }
            lo = (lo * 2.0).max(neg_cap);
        }
    }

    // Safeguarded Newton inside [lo, hi]: K' is increasing, so the root is
    // bracketed; steps leaving the bracket are replaced by bisection.
    let mut theta = if f_hi != f_lo {
        let secant = lo + (hi - lo) * (-f_lo) / (f_hi - f_lo);
        if secant.is_finite() && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        }
    } else {
        0.5 * (lo + hi)
    };
    while iterations < max_iter {
        iterations += 1;
        let (_, kp, kpp) = tilted_moments(model, v, theta)?;
        let f = kp - target;
        if f.abs() <= tol_abs {
            return Ok(RootSearch::Converged {
                theta,
                residual: f.abs(),
                iterations,
            });
        }
        if f < 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let newton = theta - f / kpp;
        theta = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    let (_, kp, _) = tilted_moments(model, v, theta)?;
    Err(Error::NoConvergence {
        theta,
        residual: (kp - target).abs(),
        iterations,
    })
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Finds the minimizing tilt for threshold `a`.
///
/// Requires `a >= E[X]`. Returns the attained minimizer when `K'` reaches
/// `v(a)` inside the overflow-safe range, the trivial zero when `v(a)`
/// does not exceed `E[v(X)]`, and the at-infinity flag when `v(a)` equals
/// the maximum of `v` on the support (there the bound's limit is the mass
/// carried by the maximizing atoms). `v(a)` strictly above that maximum
/// means the tail event is empty and is rejected as infeasible.
pub fn optimize_theta(
    model: &Model,
    v: &ValueFunction,
    a: f64,
    tol: f64,
) -> Result<TiltSolution> {
    optimize_theta_with(model, v, a, tol, DEFAULT_MAX_ITER)
}

/// [`optimize_theta`] with an explicit iteration budget.
pub fn optimize_theta_with(
    model: &Model,
    v: &ValueFunction,
    a: f64,
    tol: f64,
    max_iter: u32,
) -> Result<TiltSolution> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Evaluation(format!("tolerance must be > 0, got {tol}")));
    }
    validate_pairing(model, v)?;
    let mean_x = model.mean();
    // the computed mean carries summation rounding of a few ulps, so a
    // threshold equal to the mean must not be rejected over the last digit
    let mean_slack = 64.0 * f64::EPSILON * (1.0 + mean_x.abs() + a.abs());
    if a < mean_x - mean_slack {
        return Err(Error::BelowMean { a, mean: mean_x });
    }
    let target = v.eval(a);
    if !target.is_finite() {
        return Err(Error::Evaluation(format!("v({a}) = {target} is not finite")));
    }
    let stats = v_stats(model, v)?;
    if stats.min_v == stats.max_v {
        return Err(Error::DegenerateValueFunction { value: stats.min_v });
    }

    let tol_abs = tol * target.abs().max(1.0);
    let (_, m0, _) = tilted_moments(model, v, 0.0)?;
    if target <= m0 || (target - m0).abs() <= tol_abs {
        return Ok(TiltSolution {
            theta_hat: 0.0,
            residual: (m0 - target).abs(),
            iterations: 0,
            attained: Attainment::TrivialZero,
        });
    }
    if stats.bounded {
        if target > stats.max_v {
            return Err(Error::InfeasibleTarget {
                target,
                max_v: stats.max_v,
            });
        }
        if target == stats.max_v {
            let cap = OVERFLOW_BUDGET / (stats.max_v - stats.min_v);
            let (_, kp, _) = tilted_moments(model, v, cap)?;
            return Ok(TiltSolution {
                theta_hat: cap,
                residual: (kp - target).abs(),
                iterations: 0,
                attained: Attainment::InfimumAtInfinity,
            });
        }
    }

    match solve_tilted_mean(model, v, target, true, tol, max_iter.max(1))? {
        RootSearch::Converged {
            theta,
            residual,
            iterations,
        } => Ok(TiltSolution {
            theta_hat: theta,
            residual,
            iterations,
            attained: Attainment::Attained,
        }),
        RootSearch::CapHit {
            theta,
            residual,
            iterations,
        } => Ok(TiltSolution {
            theta_hat: theta,
            residual,
            iterations,
            attained: Attainment::InfimumAtInfinity,
        }),
    }
}

/// Log-form bound value `K(theta_hat) - theta_hat v(a)`, clamped to 0 from
/// above: the value at `theta = 0` is 0, so the true minimum cannot be
/// positive, and the clamp removes the last ulp of rounding.
pub fn bound_log(model: &Model, v: &ValueFunction, a: f64, tol: f64) -> Result<f64> {
    let sol = optimize_theta(model, v, a, tol)?;
    log_bound_value(model, v, v.eval(a), &sol)
}

pub(crate) fn log_bound_value(
    model: &Model,
    v: &ValueFunction,
    target: f64,
    sol: &TiltSolution,
) -> Result<f64> {
    match sol.attained {
        Attainment::Attained | Attainment::TrivialZero => {
            let k = cgf(model, v, sol.theta_hat)?;
            Ok((k - sol.theta_hat * target).min(0.0))
        }
        Attainment::InfimumAtInfinity => {
            let stats = v_stats(model, v)?;
            if stats.bounded && target == stats.max_v {
                // limit of K(theta) - theta * max_v: the mass at the top
                Ok(stats.log_mass_at_max.min(0.0))
            } else {
                // root beyond the cap: the value there is still a valid
                // (merely not exactly minimal) bound
                let k = cgf(model, v, sol.theta_hat)?;
                Ok((k - sol.theta_hat * target).min(0.0))
            }
        }
    }
}

/// Computes the full report: plain bound, true tail, projection, and the
/// divergence/product/ratio forms where they apply.
pub fn bound(model: &Model, v: &ValueFunction, a: f64, tol: f64) -> Result<BoundReport> {
    bound_with(model, v, a, tol, DEFAULT_MAX_ITER)
}

/// [`bound`] with an explicit iteration budget.
pub fn bound_with(
    model: &Model,
    v: &ValueFunction,
    a: f64,
    tol: f64,
    max_iter: u32,
) -> Result<BoundReport> {
    match optimize_theta_with(model, v, a, tol, max_iter) {
        Ok(sol) => {
            let target = v.eval(a);
            let log_bound = log_bound_value(model, v, target, &sol)?;
            let bound = log_bound.exp();
            // negating +0.0 would produce -0.0 in the trivial case
            let kl_value = if log_bound == 0.0 { 0.0 } else { -log_bound };
            let proj = projection::projection_from_solution(model, v, target, &sol);
            let (product_form, ratio_form, projection) = match proj {
                Ok(p) => {
                    let product = match model.as_discrete() {
                        Some(dm) => Some(projection::product_form_bound(&p, dm)?),
                        None => None,
                    };
                    let ratio = match projection::ratio_form_bound(model, &p, a) {
                        Ok(r) => Some(r),
                        Err(Error::NotAnAtom { .. }) | Err(Error::RatioUndefined { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    (product, ratio, Some(ProjectionRecord::from_projection(&p)))
                }
                // grid models whose minimum is not attained have no
                // density-form projection; the bound itself stands
                Err(Error::GeneralizedProjectionOnly { .. }) => (None, None, None),
                Err(e) => return Err(e),
            };
            Ok(BoundReport {
                a,
                v_of_a: target,
                tilt: sol,
                log_bound,
                bound,
                true_tail: Some(tail_prob(model, a)),
                kl_value,
                product_form,
                ratio_form,
                projection,
                warning: None,
            })
        }
        Err(Error::DegenerateValueFunction { value }) => {
            let target = v.eval(a);
            if target <= value {
                Ok(BoundReport {
                    a,
                    v_of_a: target,
                    tilt: TiltSolution {
                        theta_hat: 0.0,
                        residual: 0.0,
                        iterations: 0,
                        attained: Attainment::TrivialZero,
                    },
                    log_bound: 0.0,
                    bound: 1.0,
                    true_tail: Some(tail_prob(model, a)),
                    kl_value: 0.0,
                    product_form: None,
                    ratio_form: None,
                    projection: None,
                    warning: Some(format!(
                        "v is constant ({value}) on the support and v(a) = {target} does not \
                         exceed it; the bound degenerates to 1"
                    )),
                })
            } else {
                // v non-decreasing and constant on the support with
                // v(a) above the constant: no support point reaches a,
                // the tail is empty and the objective's infimum is 0
                Ok(BoundReport {
                    a,
                    v_of_a: target,
                    tilt: TiltSolution {
                        theta_hat: 0.0,
                        residual: 0.0,
                        iterations: 0,
                        attained: Attainment::InfimumAtInfinity,
                    },
                    log_bound: f64::NEG_INFINITY,
                    bound: 0.0,
                    true_tail: Some(tail_prob(model, a)),
                    kl_value: f64::INFINITY,
                    product_form: None,
                    ratio_form: None,
                    projection: None,
                    warning: Some(format!(
                        "v is constant ({value}) on the support and v(a) = {target} exceeds it; \
                         the tail event is empty and the bound degenerates to 0"
                    )),
                })
            }
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{DiscreteModel, Family};

    fn paper_pmf() -> Model {
        Model::from(
            DiscreteModel::new(
                vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
                vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
            )
            .unwrap(),
        )
    }

    fn identity() -> ValueFunction {
        ValueFunction::identity()
    }

    #[test]
    fn threshold_at_mean_is_trivial_zero() {
        let m = paper_pmf();
        let sol = optimize_theta(&m, &identity(), 3.19, DEFAULT_TOL).unwrap();
        assert_eq!(sol.attained, Attainment::TrivialZero);
        assert_eq!(sol.theta_hat, 0.0);
        let report = bound(&m, &identity(), 3.19, DEFAULT_TOL).unwrap();
        assert!((report.bound - 1.0).abs() <= 1e-12, "bound = {}", report.bound);
        assert!(report.kl_value.abs() <= 1e-12);
    }

    #[test]
    fn gaussian_minimizer_is_the_threshold() {
        let m = Model::from(Family::gaussian(0.0, 1.0).unwrap());
        for a in [0.5, 1.0, 2.0] {
            let sol = optimize_theta(&m, &identity(), a, DEFAULT_TOL).unwrap();
            assert_eq!(sol.attained, Attainment::Attained);
            assert!((sol.theta_hat - a).abs() <= 1e-9, "theta = {}", sol.theta_hat);
            let c = bound_log(&m, &identity(), a, DEFAULT_TOL).unwrap();
            assert!((c - (-a * a / 2.0)).abs() <= 1e-9, "C = {c}");
        }
    }

    #[test]
    fn exponential_minimizer_matches_closed_form() {
        // for Exp(1) and a > 1 the minimizer is 1 - 1/a and the bound a e^(1-a)
        let m = Model::from(Family::exponential(1.0).unwrap());
        let sol = optimize_theta(&m, &identity(), 2.0, DEFAULT_TOL).unwrap();
        assert!((sol.theta_hat - 0.5).abs() <= 1e-9);
        let report = bound(&m, &identity(), 2.0, DEFAULT_TOL).unwrap();
        let expected = 2.0 * (-1.0_f64).exp();
        assert!(
            ((report.bound - expected) / expected).abs() <= 1e-9,
            "bound = {}",
            report.bound
        );
        let tail = report.true_tail.unwrap();
        assert!((tail - (-2.0_f64).exp()).abs() <= 1e-12, "tail = {tail}");
    }

    #[test]
    fn example_pmf_bounds_match_reference_values() {
        let m = paper_pmf();
        let cases = [
            (4.0, 0.8829, 5e-4, 0.35),
            (5.0, 0.5675, 5e-4, 0.2),
            (6.0, 0.27, 5e-3, 0.1),
            (7.0, 0.087, 5e-4, 0.03),
        ];
        for (a, b_ref, tol_b, tail_ref) in cases {
            let report = bound(&m, &identity(), a, DEFAULT_TOL).unwrap();
            assert!(
                (report.bound - b_ref).abs() <= tol_b,
                "a = {a}: bound {} vs {b_ref}",
                report.bound
            );
            assert!(
                (report.true_tail.unwrap() - tail_ref).abs() <= 1e-12,
                "a = {a}: tail {:?}",
                report.true_tail
            );
            assert!(report.true_tail.unwrap() <= report.bound + 1e-12);
            assert!((report.bound - report.log_bound.exp()).abs() <= 1e-12 * report.bound);
        }
    }

    #[test]
    fn log_bound_matches_reference_at_four() {
        let m = paper_pmf();
        let c = bound_log(&m, &identity(), 4.0, DEFAULT_TOL).unwrap();
        assert!((c - 0.8829_f64.ln()).abs() <= 1e-3, "C = {c}");
        assert!(c <= 0.0);
    }

    #[test]
    fn stationarity_residual_is_small() {
        let m = paper_pmf();
        let sol = optimize_theta(&m, &identity(), 4.0, DEFAULT_TOL).unwrap();
        assert!(sol.residual <= DEFAULT_TOL * 4.0);
        let kp = measures::cgf_prime(&m, &identity(), sol.theta_hat).unwrap();
        assert!((kp - 4.0).abs() <= 1e-10);
    }

    #[test]
    fn below_mean_threshold_is_rejected() {
        let m = paper_pmf();
        assert!(matches!(
            optimize_theta(&m, &identity(), 2.0, DEFAULT_TOL),
            Err(Error::BelowMean { .. })
        ));
    }

    #[test]
    fn threshold_above_support_is_infeasible() {
        let m = paper_pmf();
        assert!(matches!(
            optimize_theta(&m, &identity(), 8.5, DEFAULT_TOL),
            Err(Error::InfeasibleTarget { .. })
        ));
    }

    #[test]
    fn threshold_at_top_atom_gives_exact_limit() {
        let m = paper_pmf();
        let sol = optimize_theta(&m, &identity(), 8.0, DEFAULT_TOL).unwrap();
        assert_eq!(sol.attained, Attainment::InfimumAtInfinity);
        let report = bound(&m, &identity(), 8.0, DEFAULT_TOL).unwrap();
        // the limit equals the mass of the top atom, and the bound is tight
        assert!((report.bound - 0.01).abs() <= 1e-15, "bound = {}", report.bound);
        assert!((report.true_tail.unwrap() - 0.01).abs() <= 1e-15);
    }

    #[test]
    fn degenerate_constant_v_reports_one_or_zero() {
        let m = paper_pmf();
        // constant on the support [1, 8], rising beyond it
        let v = ValueFunction::user_table(vec![0.0, 8.0, 10.0], vec![3.0, 3.0, 5.0]).unwrap();
        assert!(matches!(
            optimize_theta(&m, &v, 4.0, DEFAULT_TOL),
            Err(Error::DegenerateValueFunction { .. })
        ));
        let one = bound(&m, &v, 4.0, DEFAULT_TOL).unwrap();
        assert_eq!(one.bound, 1.0);
        assert!(one.warning.is_some());
        let zero = bound(&m, &v, 9.0, DEFAULT_TOL).unwrap();
        assert_eq!(zero.bound, 0.0);
        assert_eq!(zero.log_bound, f64::NEG_INFINITY);
        assert_eq!(zero.true_tail, Some(0.0));
        assert!(zero.warning.is_some());
    }

    #[test]
    fn report_json_round_trip_preserves_numbers() {
        let m = paper_pmf();
        for a in [3.19, 4.0, 5.5, 8.0] {
            let report = bound(&m, &identity(), a, DEFAULT_TOL).unwrap();
            let s = serde_json::to_string(&report).unwrap();
            let back: BoundReport = serde_json::from_str(&s).unwrap();
            assert_eq!(report, back, "round trip at a = {a}");
        }
        // degenerate zero-bound report carries non-finite fields through null
        let v = ValueFunction::user_table(vec![0.0, 8.0, 10.0], vec![3.0, 3.0, 5.0]).unwrap();
        let zero = bound(&m, &v, 9.0, DEFAULT_TOL).unwrap();
        let s = serde_json::to_string(&zero).unwrap();
        let back: BoundReport = serde_json::from_str(&s).unwrap();
        assert_eq!(zero, back);
    }

    #[test]
    fn bound_is_monotone_in_the_threshold() {
        let m = paper_pmf();
        let mut prev = f64::INFINITY;
        let mut a = 3.19;
        while a < 8.0 {
            let b = bound(&m, &identity(), a, DEFAULT_TOL).unwrap().bound;
            assert!(b <= prev + 1e-12, "bound increased at a = {a}");
            prev = b;
            a += 0.2;
        }
    }

    #[test]
    fn minimizer_beats_other_tilts() {
        let m = paper_pmf();
        let v = identity();
        let a = 5.0;
        let sol = optimize_theta(&m, &v, a, DEFAULT_TOL).unwrap();
        let c = bound_log(&m, &v, a, DEFAULT_TOL).unwrap();
        for theta in [0.0, 0.1, 0.3, sol.theta_hat / 2.0, sol.theta_hat * 2.0, 5.0] {
            let other = cgf(&m, &v, theta).unwrap() - theta * a;
            assert!(other >= c - 1e-10, "theta = {theta}: {other} < {c}");
        }
    }
}
