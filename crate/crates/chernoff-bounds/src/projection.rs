//! Exponential tilting, the information projection, and the equivalent
//! bound forms.
//!
//! Tilting a model by `theta` reweights it by `exp(theta v(x))` and
//! renormalizes:
//!
//! ```text
//! p(x) = q(x) exp(theta v(x) - K(theta))
//! ```
//!
//! The tilt at the optimizer `theta_hat` of the tail bound is exactly the
//! divergence-minimizing element of `{P : E_P v(X) = v(a)}`, that is,
//! the projection of the base model onto the moment constraint (equivalently,
//! since relative entropy is the negated divergence, the
//! entropy-maximizing element). Its divergence from the base model has the
//! closed form `theta_hat v(a) - K(theta_hat)`, which is the negated log
//! bound; the crate computes it that way and keeps plain summation as a
//! test oracle.
//!
//! Three further expressions of the plain bound value all agree with
//! `exp(log bound)`:
//!
//! - `exp(-kl)` with `kl` the projection's divergence,
//! - the product form `prod (q_i / p_i)^(p_i)` over the atoms,
//! - the ratio form `q(a) / p(a)` of masses (or densities) at the
//!   threshold itself, which requires `a` to be an atom of the support
//!   (or a point of positive density).
//!
//! The ratio form in particular reads the bound straight off the
//! projection: no sum over the support is needed once `p` is known.

use serde::{Deserialize, Serialize};

use crate::chernoff::{self, Attainment, TiltSolution};
use crate::error::{Error, Result};
use crate::measures::{
    cgf, tilted_moments, v_stats, ContinuousModel, DiscreteModel, Family, GridDensity, Model,
    ValueFunction,
};

/// A tilted model together with its tilt diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    /// The tilted model (same representation as the base model).
    pub tilted: Model,
    pub theta_hat: f64,
    /// `log E exp(theta_hat v(X))` under the base model.
    pub log_normalizer: f64,
    /// Divergence of the tilted model from the base model.
    pub kl: f64,
}

/// Serialization-friendly summary of a projection for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProjectionRecord {
    Discrete { support: Vec<f64>, prob: Vec<f64> },
    ClosedForm { family: Family },
    TiltedDensity { theta_hat: f64, log_normalizer: f64 },
}

impl ProjectionRecord {
    pub(crate) fn from_projection(p: &Projection) -> Self {
        match &p.tilted {
            Model::Discrete(d) => ProjectionRecord::Discrete {
                support: d.support().to_vec(),
                prob: d.prob().to_vec(),
            },
            Model::Continuous(ContinuousModel::ClosedForm(f)) => ProjectionRecord::ClosedForm {
                family: f.clone(),
            },
            Model::Continuous(ContinuousModel::Grid(_)) => ProjectionRecord::TiltedDensity {
                theta_hat: p.theta_hat,
                log_normalizer: p.log_normalizer,
            },
        }
    }
}

/// Exponentially tilts the model by `theta` (no moment constraint).
///
/// Discrete and grid models are reweighted atom by atom in the log domain;
/// gaussian and exponential families tilt onto themselves in closed form.
/// The reported `kl` is the divergence of the tilted model from the base,
/// `theta K'(theta) - K(theta)`.
pub fn tilt(model: &Model, v: &ValueFunction, theta: f64) -> Result<Projection> {
    let (k, kp, _) = tilted_moments(model, v, theta)?;
    let tilted = tilt_model(model, v, theta, k)?;
    let kl = if theta == 0.0 {
        0.0
    } else {
        (theta * kp - k).max(0.0)
    };
    Ok(Projection {
        tilted,
        theta_hat: theta,
        log_normalizer: k,
        kl,
    })
}

fn tilt_model(model: &Model, v: &ValueFunction, theta: f64, log_normalizer: f64) -> Result<Model> {
    match model {
        Model::Discrete(d) => {
            let prob: Vec<f64> = d
                .support()
                .iter()
                .zip(d.prob())
                .map(|(&x, &q)| {
                    if q == 0.0 {
                        0.0
                    } else {
                        (q.ln() + theta * v.eval(x) - log_normalizer).exp()
                    }
                })
                .collect();
            Ok(Model::Discrete(DiscreteModel::new(
                d.support().to_vec(),
                prob,
            )?))
        }
        Model::Continuous(ContinuousModel::Grid(g)) => {
            let density: Vec<f64> = g
                .nodes()
                .iter()
                .zip(g.density_values())
                .map(|(&x, &q)| {
                    if q == 0.0 {
                        0.0
                    } else {
                        (q.ln() + theta * v.eval(x) - log_normalizer).exp()
                    }
                })
                .collect();
            Ok(Model::Continuous(ContinuousModel::Grid(GridDensity::new(
                g.nodes().to_vec(),
                density,
            )?)))
        }
        Model::Continuous(ContinuousModel::ClosedForm(f)) => {
            // exp(theta (intercept + slope x)) changes only the x-coefficient
            let t = match v {
                ValueFunction::Identity => theta,
                ValueFunction::Affine { slope, .. } => theta * slope,
                _ => {
                    return Err(Error::Evaluation(
                        "closed-form families tilt only under identity or affine v".into(),
                    ))
                }
            };
            let family = match *f {
                Family::Gaussian { mean, std_dev } => {
                    Family::gaussian(mean + std_dev * std_dev * t, std_dev)?
                }
                Family::Exponential { rate } => Family::exponential(rate - t)?,
            };
            Ok(Model::Continuous(ContinuousModel::ClosedForm(family)))
        }
    }
}

/// The projection of the model onto `{P : E_P v(X) = v(a)}`: the tilt at
/// the bound-minimizing `theta_hat`, with `kl = theta_hat v(a) - K(theta_hat)`.
///
/// The same `theta_hat` solves the tail-bound minimization and the moment
/// constraint; this function composes [`chernoff::optimize_theta`] with
/// [`tilt`] and overwrites `kl` with the closed form, which is exact at the
/// solver's `theta_hat` and accumulates no per-atom rounding.
pub fn i_projection(model: &Model, v: &ValueFunction, a: f64, tol: f64) -> Result<Projection> {
    i_projection_with(model, v, a, tol, chernoff::DEFAULT_MAX_ITER)
}

/// [`i_projection`] with an explicit iteration budget.
pub fn i_projection_with(
    model: &Model,
    v: &ValueFunction,
    a: f64,
    tol: f64,
    max_iter: u32,
) -> Result<Projection> {
    let sol = chernoff::optimize_theta_with(model, v, a, tol, max_iter)?;
    projection_from_solution(model, v, v.eval(a), &sol)
}

pub(crate) fn projection_from_solution(
    model: &Model,
    v: &ValueFunction,
    target: f64,
    sol: &TiltSolution,
) -> Result<Projection> {
    match sol.attained {
        Attainment::Attained | Attainment::TrivialZero => {
            let mut proj = tilt(model, v, sol.theta_hat)?;
            proj.kl = if sol.theta_hat == 0.0 {
                0.0
            } else {
                (sol.theta_hat * target - proj.log_normalizer).max(0.0)
            };
            Ok(proj)
        }
        Attainment::InfimumAtInfinity => {
            let stats = v_stats(model, v)?;
            if !(stats.bounded && target == stats.max_v) {
                // the constraint mean lies inside the range of v but the
                // solution exceeds the overflow-safe cap
                let k = cgf(model, v, sol.theta_hat)?;
                return Err(Error::GeneralizedProjectionOnly {
                    limit: (k - sol.theta_hat * target).min(0.0).exp(),
                });
            }
            match model {
                Model::Discrete(d) => {
                    // limit of the tilt: the base model conditioned on the
                    // atoms where v attains its maximum
                    let mass_at_max = stats.log_mass_at_max.exp();
                    let prob: Vec<f64> = d
                        .support()
                        .iter()
                        .zip(d.prob())
                        .map(|(&x, &q)| {
                            if q > 0.0 && v.eval(x) == stats.max_v {
                                q / mass_at_max
                            } else {
                                0.0
                            }
                        })
                        .collect();
                    let tilted = Model::Discrete(DiscreteModel::new(d.support().to_vec(), prob)?);
                    Ok(Projection {
                        tilted,
                        theta_hat: sol.theta_hat,
                        log_normalizer: cgf(model, v, sol.theta_hat)?,
                        kl: (-stats.log_mass_at_max).max(0.0),
                    })
                }
                Model::Continuous(_) => Err(Error::GeneralizedProjectionOnly {
                    limit: stats.log_mass_at_max.min(0.0).exp(),
                }),
            }
        }
    }
}

/// `sum p_i log(p_i / q_i)` with the conventions `0 log 0 = 0` and
/// `log(b/0) = +inf`. Requires identical support lists.
pub fn kl_divergence(p: &DiscreteModel, q: &DiscreteModel) -> Result<f64> {
    if p.support() != q.support() {
        return Err(Error::SupportMismatch(format!(
            "kl divergence needs identical supports ({} vs {} atoms)",
            p.len(),
            q.len()
        )));
    }
    let mut acc = 0.0;
    for (pi, qi) in p.prob().iter().zip(q.prob()) {
        if *pi == 0.0 {
            continue;
        }
        if *qi == 0.0 {
            return Ok(f64::INFINITY);
        }
        acc += pi * (pi / qi).ln();
    }
    Ok(acc)
}

/// Product form of the plain bound over the atoms:
/// `prod (q_i / p_i)^(p_i) = exp(-KL(p, q))`, accumulated in the log
/// domain.
pub fn product_form_bound(projection: &Projection, model: &DiscreteModel) -> Result<f64> {
    let tilted = projection.tilted.as_discrete().ok_or_else(|| {
        Error::SupportMismatch("product form needs a discrete projection".into())
    })?;
    if tilted.support() != model.support() {
        return Err(Error::SupportMismatch(
            "projection and model support lists differ".into(),
        ));
    }
    let mut acc = 0.0;
    for (pi, qi) in tilted.prob().iter().zip(model.prob()) {
        if *pi == 0.0 {
            continue;
        }
        if *qi == 0.0 {
            return Err(Error::InternalInvariantViolation(format!(
                "tilted mass {pi} on an atom with zero base mass"
            )));
        }
        acc += pi * (qi / pi).ln();
    }
    Ok(acc.exp())
}

/// Ratio form of the plain bound: `q(a) / p(a)` with atom masses for
/// discrete models and (interpolated or exact) densities for continuous
/// ones. For discrete models `a` must be an atom of the support under
/// exact float equality; interpolating masses would be meaningless.
pub fn ratio_form_bound(model: &Model, projection: &Projection, a: f64) -> Result<f64> {
    match model {
        Model::Discrete(q) => {
            let idx = q.atom_index(a).ok_or(Error::NotAnAtom { a })?;
            let qa = q.prob()[idx];
            if qa == 0.0 {
                return Err(Error::RatioUndefined {
                    a,
                    reason: "the base model carries zero mass at a".into(),
                });
            }
            let p = projection.tilted.as_discrete().ok_or_else(|| {
                Error::SupportMismatch("ratio form needs a discrete projection".into())
            })?;
            if p.support() != q.support() {
                return Err(Error::SupportMismatch(
                    "projection and model support lists differ".into(),
                ));
            }
            let pa = p.prob()[idx];
            if pa == 0.0 {
                return Err(Error::RatioUndefined {
                    a,
                    reason: "the projection carries zero mass at a".into(),
                });
            }
            Ok(qa / pa)
        }
        Model::Continuous(c) => {
            let qa = c.density_at(a);
            let pa = match &projection.tilted {
                Model::Continuous(tc) => tc.density_at(a),
                Model::Discrete(_) => {
                    return Err(Error::SupportMismatch(
                        "ratio form needs a continuous projection for a continuous model".into(),
                    ))
                }
            };
            if qa == 0.0 || pa == 0.0 {
                return Err(Error::RatioUndefined {
                    a,
                    reason: format!("q(a) = {qa}, tilted density = {pa}"),
                });
            }
            Ok(qa / pa)
        }
    }
}

/// The bound read off the derivative of the projection with respect to the
/// base model: `1 / (dP/dQ)(a)` with `dP/dQ(x) = exp(theta_hat v(x) -
/// K(theta_hat))`.
///
/// Numerically this equals the plain bound; the operation exists because
/// the derivative form stays meaningful for unbounded `v`, where no
/// density ratio at `a` is needed. When the minimum is not attained the
/// error carries the limit value instead.
pub fn generalized_projection_bound(
    model: &ContinuousModel,
    v: &ValueFunction,
    a: f64,
    tol: f64,
) -> Result<f64> {
    let m = Model::Continuous(model.clone());
    let sol = chernoff::optimize_theta(&m, v, a, tol)?;
    let target = v.eval(a);
    if sol.attained == Attainment::InfimumAtInfinity {
        return Err(Error::GeneralizedProjectionOnly {
            limit: chernoff::log_bound_value(&m, v, target, &sol)?.exp(),
        });
    }
    let k = cgf(&m, v, sol.theta_hat)?;
    let dpdq_at_a = (sol.theta_hat * target - k).exp();
    if dpdq_at_a == 0.0 {
        return Err(Error::RatioUndefined {
            a,
            reason: "dP/dQ vanishes at a".into(),
        });
    }
    Ok(1.0 / dpdq_at_a)
}
