//! Probability models and log-domain moment evaluation.
//!
//! Three model representations feed every solver in the crate:
//!
//! - [`DiscreteModel`]: a finite pmf on a strictly increasing support.
//! - [`ContinuousModel::Grid`]: a density tabulated on ordered nodes,
//!   integrated by the trapezoid rule on exactly those nodes.
//! - [`ContinuousModel::ClosedForm`]: a named family (gaussian,
//!   exponential) with exact density, mean, tail, and cumulant evaluators.
//!
//! The central quantity is the cumulant generating function of `v(X)`,
//!
//! ```text
//! K(theta) = log E exp(theta v(X))
//! ```
//!
//! with `K'(theta)` the tilted mean of `v(X)` and `K''(theta)` the tilted
//! variance. For atom-backed models (discrete and grid) the sums are
//! evaluated after subtracting `max_i theta v(x_i)`, so nothing overflows
//! for exponents up to the f64 limit even though the plain sum would.
//!
//! [`ValueFunction`] carries the transformation `v`; it must be
//! non-decreasing and concave on the model's support, and
//! [`validate_pairing`] checks exactly that, once, when a model and a
//! value function are bound together by a solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PROB_SUM_TOL: f64 = 1e-12;
const GRID_NORM_TOL: f64 = 1e-6;
const CONCAVITY_SLACK: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Discrete models
// ---------------------------------------------------------------------------

/// A finite-support pmf: atoms `x_1 < x_2 < ... < x_m` with masses `q_i`.
///
/// Masses must be non-negative and sum to one within `1e-12`; they are then
/// renormalized by their exact sum so that `K(0) = 0` holds to machine
/// precision. Zero-mass atoms are allowed but flagged, because the
/// mass-ratio bound form is undefined at such an atom.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDiscreteModel", into = "RawDiscreteModel")]
pub struct DiscreteModel {
    support: Vec<f64>,
    prob: Vec<f64>,
    has_zero_atoms: bool,
}

#[derive(Serialize, Deserialize)]
struct RawDiscreteModel {
    support: Vec<f64>,
    prob: Vec<f64>,
}

impl From<DiscreteModel> for RawDiscreteModel {
    fn from(m: DiscreteModel) -> Self {
        RawDiscreteModel {
            support: m.support,
            prob: m.prob,
        }
    }
}

impl TryFrom<RawDiscreteModel> for DiscreteModel {
    type Error = Error;
    fn try_from(raw: RawDiscreteModel) -> Result<Self> {
        DiscreteModel::new(raw.support, raw.prob)
    }
}

impl DiscreteModel {
    pub fn new(support: Vec<f64>, prob: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidModel("support is empty".into()));
        }
        if support.len() != prob.len() {
            return Err(Error::InvalidModel(format!(
                "support has {} atoms but prob has {} entries",
                support.len(),
                prob.len()
            )));
        }
        if support.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidModel("support contains a non-finite value".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(
                "support must be strictly increasing with no duplicates".into(),
            ));
        }
        if prob.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidModel("probabilities must be finite and >= 0".into()));
        }
        let sum: f64 = prob.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidModel(format!(
                "probabilities sum to {sum}, expected 1 within {PROB_SUM_TOL}"
            )));
        }
        let prob: Vec<f64> = prob.iter().map(|p| p / sum).collect();
        let has_zero_atoms = prob.contains(&0.0);
        Ok(Self {
            support,
            prob,
            has_zero_atoms,
        })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn prob(&self) -> &[f64] {
        &self.prob
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// True when some atom carries exactly zero mass.
    pub fn has_zero_atoms(&self) -> bool {
        self.has_zero_atoms
    }

    pub fn mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.prob)
            .map(|(x, p)| x * p)
            .sum()
    }

    /// Index of `a` in the support under exact float equality, or `None`.
    pub fn atom_index(&self, a: f64) -> Option<usize> {
        self.support
            .binary_search_by(|x| x.partial_cmp(&a).expect("finite support"))
            .ok()
    }
}

// ---------------------------------------------------------------------------
// Continuous models
// ---------------------------------------------------------------------------

/// A density tabulated at ordered nodes, integrated with the trapezoid rule.
///
/// The tabulated values are renormalized by their trapezoid integral (which
/// must already be 1 within `1e-6`), so the grid behaves as an exactly
/// normalized measure afterwards. Quadrature error is controlled entirely
/// by the caller's choice of nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDensity {
    nodes: Vec<f64>,
    density: Vec<f64>,
    /// trapezoid weight times density at each node; sums to 1
    mass: Vec<f64>,
}

impl GridDensity {
    pub fn new(nodes: Vec<f64>, density: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidModel("grid needs at least 2 nodes".into()));
        }
        if nodes.len() != density.len() {
            return Err(Error::InvalidModel(format!(
                "{} nodes but {} density values",
                nodes.len(),
                density.len()
            )));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidModel("grid nodes must be finite".into()));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel("grid nodes must be strictly increasing".into()));
        }
        if density.iter().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::InvalidModel("density values must be finite and >= 0".into()));
        }
        let weights = trapezoid_weights(&nodes);
        let integral: f64 = weights.iter().zip(&density).map(|(w, g)| w * g).sum();
        if (integral - 1.0).abs() > GRID_NORM_TOL {
            return Err(Error::InvalidModel(format!(
                "trapezoid integral of the density is {integral}, expected 1 within {GRID_NORM_TOL}"
            )));
        }
        let density: Vec<f64> = density.iter().map(|g| g / integral).collect();
        let mass: Vec<f64> = weights.iter().zip(&density).map(|(w, g)| w * g).collect();
        Ok(Self {
            nodes,
            density,
            mass,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn density_values(&self) -> &[f64] {
        &self.density
    }

    /// Name of the quadrature rule applied to the nodes.
    pub fn quadrature_rule(&self) -> &'static str {
        "trapezoid"
    }

    /// Density at `x` by linear interpolation; 0 outside the grid.
    pub fn density_at(&self, x: f64) -> f64 {
        let n = self.nodes.len();
        if x < self.nodes[0] || x > self.nodes[n - 1] {
            return 0.0;
        }
        let hi = self.nodes.partition_point(|&t| t < x).min(n - 1).max(1);
        let (x0, x1) = (self.nodes[hi - 1], self.nodes[hi]);
        let (g0, g1) = (self.density[hi - 1], self.density[hi]);
        let w = (x - x0) / (x1 - x0);
        g0 + w * (g1 - g0)
    }

    fn mean(&self) -> f64 {
        self.nodes.iter().zip(&self.mass).map(|(x, m)| x * m).sum()
    }

    fn tail(&self, a: f64) -> f64 {
        let n = self.nodes.len();
        if a <= self.nodes[0] {
            return 1.0;
        }
        if a >= self.nodes[n - 1] {
            return 0.0;
        }
        let k = self.nodes.partition_point(|&t| t <= a) - 1;
        // partial cell [a, nodes[k+1]] plus full trapezoids above
        let ga = self.density_at(a);
        let mut acc = (self.nodes[k + 1] - a) * (ga + self.density[k + 1]) / 2.0;
        for i in (k + 1)..(n - 1) {
            acc += (self.nodes[i + 1] - self.nodes[i]) * (self.density[i] + self.density[i + 1]) / 2.0;
        }
        acc.min(1.0)
    }
}

fn trapezoid_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = (nodes[i + 1] - nodes[i]) / 2.0;
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

/// A closed-form family with exact evaluators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub enum Family {
    Gaussian { mean: f64, std_dev: f64 },
    Exponential { rate: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
enum RawFamily {
    Gaussian { mean: f64, std_dev: f64 },
    Exponential { rate: f64 },
}

impl From<Family> for RawFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Gaussian { mean, std_dev } => RawFamily::Gaussian { mean, std_dev },
            Family::Exponential { rate } => RawFamily::Exponential { rate },
        }
    }
}

impl TryFrom<RawFamily> for Family {
    type Error = Error;
    fn try_from(raw: RawFamily) -> Result<Self> {
        match raw {
            RawFamily::Gaussian { mean, std_dev } => Family::gaussian(mean, std_dev),
            RawFamily::Exponential { rate } => Family::exponential(rate),
        }
    }
}

impl Family {
    pub fn gaussian(mean: f64, std_dev: f64) -> Result<Self> {
        if !mean.is_finite() || !std_dev.is_finite() || std_dev <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "gaussian needs finite mean and std_dev > 0, got ({mean}, {std_dev})"
            )));
        }
        Ok(Family::Gaussian { mean, std_dev })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::InvalidModel(format!(
                "exponential needs rate > 0, got {rate}"
            )));
        }
        Ok(Family::Exponential { rate })
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Family::Gaussian { mean, .. } => mean,
            Family::Exponential { rate } => 1.0 / rate,
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match *self {
            Family::Gaussian { mean, std_dev } => {
                let z = (x - mean) / std_dev;
                (-0.5 * z * z).exp() / (std_dev * (2.0 * std::f64::consts::PI).sqrt())
            }
            Family::Exponential { rate } => {
                if x < 0.0 {
                    0.0
                } else {
                    rate * (-rate * x).exp()
                }
            }
        }
    }

    /// Exact survival function `P(X >= a)`.
    pub fn tail(&self, a: f64) -> f64 {
        match *self {
            Family::Gaussian { mean, std_dev } => {
                0.5 * libm::erfc((a - mean) / (std_dev * std::f64::consts::SQRT_2))
            }
            Family::Exponential { rate } => {
                if a <= 0.0 {
                    1.0
                } else {
                    (-rate * a).exp()
                }
            }
        }
    }

    /// Supremum of the set of `t` with finite `E exp(t X)` (exclusive).
    fn identity_theta_sup(&self) -> f64 {
        match *self {
            Family::Gaussian { .. } => f64::INFINITY,
            Family::Exponential { rate } => rate,
        }
    }

    fn cgf_identity(&self, t: f64) -> Result<f64> {
        match *self {
            Family::Gaussian { mean, std_dev } => Ok(mean * t + 0.5 * std_dev * std_dev * t * t),
            Family::Exponential { rate } => {
                if t >= rate {
                    Err(Error::DivergentMgf {
                        theta: t,
                        reason: format!("exponential(rate = {rate}) requires theta < rate"),
                    })
                } else {
                    // log(rate / (rate - t)), written to stay accurate near 0
                    Ok(-(-t / rate).ln_1p())
                }
            }
        }
    }

    fn cgf_identity_prime(&self, t: f64) -> Result<f64> {
        match *self {
            Family::Gaussian { mean, std_dev } => Ok(mean + std_dev * std_dev * t),
            Family::Exponential { rate } => {
                if t >= rate {
                    Err(Error::DivergentMgf {
                        theta: t,
                        reason: format!("exponential(rate = {rate}) requires theta < rate"),
                    })
                } else {
                    Ok(1.0 / (rate - t))
                }
            }
        }
    }

    fn cgf_identity_second(&self, t: f64) -> Result<f64> {
        match *self {
            Family::Gaussian { std_dev, .. } => Ok(std_dev * std_dev),
            Family::Exponential { rate } => {
                if t >= rate {
                    Err(Error::DivergentMgf {
                        theta: t,
                        reason: format!("exponential(rate = {rate}) requires theta < rate"),
                    })
                } else {
                    let d = rate - t;
                    Ok(1.0 / (d * d))
                }
            }
        }
    }

    /// Infimum of the support.
    fn support_inf(&self) -> f64 {
        match *self {
            Family::Gaussian { .. } => f64::NEG_INFINITY,
            Family::Exponential { .. } => 0.0,
        }
    }
}

/// A continuous model: either a tabulated density or a closed-form family.
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuousModel {
    Grid(GridDensity),
    ClosedForm(Family),
}

impl ContinuousModel {
    /// Density at `x` (interpolated for grids, exact for families).
    pub fn density_at(&self, x: f64) -> f64 {
        match self {
            ContinuousModel::Grid(g) => g.density_at(x),
            ContinuousModel::ClosedForm(f) => f.density(x),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            ContinuousModel::Grid(g) => g.mean(),
            ContinuousModel::ClosedForm(f) => f.mean(),
        }
    }
}

/// Any probability model the solvers accept.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Discrete(DiscreteModel),
    Continuous(ContinuousModel),
}

impl From<DiscreteModel> for Model {
    fn from(m: DiscreteModel) -> Self {
        Model::Discrete(m)
    }
}

impl From<ContinuousModel> for Model {
    fn from(m: ContinuousModel) -> Self {
        Model::Continuous(m)
    }
}

impl From<Family> for Model {
    fn from(f: Family) -> Self {
        Model::Continuous(ContinuousModel::ClosedForm(f))
    }
}

impl From<GridDensity> for Model {
    fn from(g: GridDensity) -> Self {
        Model::Continuous(ContinuousModel::Grid(g))
    }
}

impl Model {
    /// E[X] under the model.
    pub fn mean(&self) -> f64 {
        match self {
            Model::Discrete(m) => m.mean(),
            Model::Continuous(c) => c.mean(),
        }
    }

    /// Atom representation (points, masses) for discrete and grid models.
    pub(crate) fn atoms(&self) -> Option<(&[f64], &[f64])> {
        match self {
            Model::Discrete(m) => Some((&m.support, &m.prob)),
            Model::Continuous(ContinuousModel::Grid(g)) => Some((&g.nodes, &g.mass)),
            Model::Continuous(ContinuousModel::ClosedForm(_)) => None,
        }
    }

    pub fn as_discrete(&self) -> Option<&DiscreteModel> {
        match self {
            Model::Discrete(m) => Some(m),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Value functions
// ---------------------------------------------------------------------------

/// A table of `(x, v(x))` knots, linearly interpolated and clamped outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueTable {
    x: Vec<f64>,
    v: Vec<f64>,
}

/// The transformation `v` applied to the random variable before tilting.
///
/// The bound's hypotheses require `v` to be non-decreasing and concave on
/// the support; that is the caller's obligation, checked once by
/// [`validate_pairing`] rather than on every evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ValueFunction {
    Identity,
    Logarithm,
    Affine { intercept: f64, slope: f64 },
    UserTable(ValueTable),
}

impl ValueFunction {
    pub fn identity() -> Self {
        ValueFunction::Identity
    }

    pub fn logarithm() -> Self {
        ValueFunction::Logarithm
    }

    /// `v(x) = intercept + slope * x`; the slope must be >= 0 so that `v`
    /// stays non-decreasing.
    pub fn affine(intercept: f64, slope: f64) -> Result<Self> {
        if !intercept.is_finite() || !slope.is_finite() {
            return Err(Error::InvalidValueFunction("affine parameters must be finite".into()));
        }
        if slope < 0.0 {
            return Err(Error::InvalidValueFunction(format!(
                "affine slope {slope} is negative, so v would be decreasing"
            )));
        }
        Ok(ValueFunction::Affine { intercept, slope })
    }

    /// Builds a user table from knots with strictly increasing `x`.
    pub fn user_table(x: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if x.len() < 2 {
            return Err(Error::InvalidValueFunction("user table needs at least 2 knots".into()));
        }
        if x.len() != v.len() {
            return Err(Error::InvalidValueFunction(format!(
                "{} x-knots but {} v-values",
                x.len(),
                v.len()
            )));
        }
        if x.iter().chain(v.iter()).any(|t| !t.is_finite()) {
            return Err(Error::InvalidValueFunction("table knots must be finite".into()));
        }
        if x.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidValueFunction(
                "table x-knots must be strictly increasing".into(),
            ));
        }
        Ok(ValueFunction::UserTable(ValueTable { x, v }))
    }

    /// Evaluates `v(x)`. May return a non-finite value (for instance
    /// `log x` at `x <= 0`); callers reject non-finite values on
    /// positive-mass regions.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ValueFunction::Identity => x,
            ValueFunction::Logarithm => x.ln(),
            ValueFunction::Affine { intercept, slope } => intercept + slope * x,
            ValueFunction::UserTable(t) => {
                let n = t.x.len();
                if x <= t.x[0] {
                    return t.v[0];
                }
                if x >= t.x[n - 1] {
                    return t.v[n - 1];
                }
                let hi = t.x.partition_point(|&k| k < x).max(1);
                let (x0, x1) = (t.x[hi - 1], t.x[hi]);
                let (v0, v1) = (t.v[hi - 1], t.v[hi]);
                v0 + (x - x0) / (x1 - x0) * (v1 - v0)
            }
        }
    }
}

/// Checks the bound's hypotheses on `v` over the model's support:
/// non-decreasing at the support points and midpoint-concave across pairs
/// of them (with the table interpolated at midpoints). The logarithm kind
/// additionally requires a strictly positive support.
///
/// Solvers call this once when binding a model to a value function; the
/// per-call moment evaluators do not repeat it.
pub fn validate_pairing(model: &Model, v: &ValueFunction) -> Result<()> {
    match model.atoms() {
        Some((points, _)) => {
            if matches!(v, ValueFunction::Logarithm) && points[0] <= 0.0 {
                return Err(Error::InvalidValueFunction(format!(
                    "logarithm requires strictly positive support, found point {}",
                    points[0]
                )));
            }
            let vals: Vec<f64> = points.iter().map(|&x| v.eval(x)).collect();
            for w in vals.windows(2) {
                if w[1] < w[0] {
                    return Err(Error::InvalidValueFunction(format!(
                        "v is decreasing on the support ({} -> {})",
                        w[0], w[1]
                    )));
                }
            }
            // Midpoint concavity over point pairs. All pairs for small
            // supports; strided indices for large grids so the check stays
            // O(n) while still probing the global shape.
            let n = points.len();
            let idx: Vec<usize> = if n <= 256 {
                (0..n).collect()
            } else {
                let stride = n / 256 + 1;
                let mut ix: Vec<usize> = (0..n).step_by(stride).collect();
                if *ix.last().unwrap() != n - 1 {
                    ix.push(n - 1);
                }
                ix
            };
            for (ai, &i) in idx.iter().enumerate() {
                for &j in &idx[ai + 1..] {
                    let mid = v.eval((points[i] + points[j]) / 2.0);
                    let chord = (vals[i] + vals[j]) / 2.0;
                    if mid < chord - CONCAVITY_SLACK {
                        return Err(Error::InvalidValueFunction(format!(
                            "v is not concave: v(midpoint of {} and {}) = {mid} < chord {chord}",
                            points[i], points[j]
                        )));
                    }
                }
            }
            Ok(())
        }
        None => {
            let family = match model {
                Model::Continuous(ContinuousModel::ClosedForm(f)) => f,
                _ => unreachable!("atoms() is None only for closed-form models"),
            };
            match v {
                ValueFunction::Identity | ValueFunction::Affine { .. } => Ok(()),
                ValueFunction::Logarithm => {
                    if family.support_inf() <= 0.0 && matches!(family, Family::Gaussian { .. }) {
                        Err(Error::InvalidValueFunction(
                            "logarithm requires strictly positive support; the gaussian support is all of R"
                                .into(),
                        ))
                    } else {
                        Err(Error::Evaluation(
                            "logarithm on closed-form families has no exact cumulant evaluator; \
                             tabulate the density on a quadrature grid instead"
                                .into(),
                        ))
                    }
                }
                ValueFunction::UserTable(_) => Err(Error::Evaluation(
                    "user tables on closed-form families are not supported; \
                     tabulate the density on a quadrature grid instead"
                        .into(),
                )),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Moment operations
// ---------------------------------------------------------------------------

/// E[v(X)] under the model: an exact sum for atoms, the family formula for
/// closed forms.
pub fn mean_v(model: &Model, v: &ValueFunction) -> Result<f64> {
    match model.atoms() {
        Some((points, mass)) => {
            let mut acc = 0.0;
            for (&x, &m) in points.iter().zip(mass) {
                if m == 0.0 {
                    continue;
                }
                let val = v.eval(x);
                if !val.is_finite() {
                    return Err(Error::Evaluation(format!(
                        "v({x}) = {val} is not finite on a positive-mass point"
                    )));
                }
                acc += m * val;
            }
            Ok(acc)
        }
        None => closed_form_mean_v(model, v),
    }
}

fn closed_form_mean_v(model: &Model, v: &ValueFunction) -> Result<f64> {
    let family = match model {
        Model::Continuous(ContinuousModel::ClosedForm(f)) => f,
        _ => unreachable!(),
    };
    match v {
        ValueFunction::Identity => Ok(family.mean()),
        ValueFunction::Affine { intercept, slope } => Ok(intercept + slope * family.mean()),
        _ => Err(unsupported_closed_form(v)),
    }
}

fn unsupported_closed_form(v: &ValueFunction) -> Error {
    Error::Evaluation(format!(
        "value function {v:?} is not supported on closed-form families; \
         tabulate the density on a quadrature grid instead"
    ))
}

/// `K(theta) = log E exp(theta v(X))`, evaluated in the log domain.
pub fn cgf(model: &Model, v: &ValueFunction, theta: f64) -> Result<f64> {
    Ok(tilted_moments(model, v, theta)?.0)
}

/// `K'(theta)`: the mean of `v(X)` under the theta-tilted model.
pub fn cgf_prime(model: &Model, v: &ValueFunction, theta: f64) -> Result<f64> {
    Ok(tilted_moments(model, v, theta)?.1)
}

/// `K''(theta)`: the variance of `v(X)` under the theta-tilted model.
pub fn cgf_second(model: &Model, v: &ValueFunction, theta: f64) -> Result<f64> {
    Ok(tilted_moments(model, v, theta)?.2)
}

/// `(K, K', K'')` over explicit atoms `(points, mass)`.
///
/// All three come from sums shifted by `max_i theta v(x_i)` over
/// positive-mass atoms; the shifted exponents are all <= 0, so the sums
/// cannot overflow regardless of `theta`.
pub(crate) fn atom_moments(
    points: &[f64],
    mass: &[f64],
    v: &ValueFunction,
    theta: f64,
) -> Result<(f64, f64, f64)> {
    let mut shift = f64::NEG_INFINITY;
    let mut vals = Vec::with_capacity(points.len());
    for (&x, &m) in points.iter().zip(mass) {
        if m == 0.0 {
            vals.push(f64::NAN);
            continue;
        }
        let val = v.eval(x);
        if !val.is_finite() {
            return Err(Error::Evaluation(format!(
                "v({x}) = {val} is not finite on a positive-mass point"
            )));
        }
        vals.push(val);
        shift = shift.max(theta * val);
    }
    let mut z = 0.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (&m, &val) in mass.iter().zip(&vals) {
        if m == 0.0 {
            continue;
        }
        let w = m * (theta * val - shift).exp();
        z += w;
        s1 += w * val;
        s2 += w * val * val;
    }
    let k = shift + z.ln();
    let mean = s1 / z;
    let var = (s2 / z - mean * mean).max(0.0);
    Ok((k, mean, var))
}

/// `(K, K', K'')` at `theta` in one pass.
pub(crate) fn tilted_moments(model: &Model, v: &ValueFunction, theta: f64) -> Result<(f64, f64, f64)> {
    if !theta.is_finite() {
        return Err(Error::Evaluation(format!("theta = {theta} is not finite")));
    }
    match model.atoms() {
        Some((points, mass)) => atom_moments(points, mass, v, theta),
        None => {
            let family = match model {
                Model::Continuous(ContinuousModel::ClosedForm(f)) => f,
                _ => unreachable!(),
            };
            match v {
                ValueFunction::Identity => Ok((
                    family.cgf_identity(theta)?,
                    family.cgf_identity_prime(theta)?,
                    family.cgf_identity_second(theta)?,
                )),
                ValueFunction::Affine { intercept, slope } => {
                    let t = theta * slope;
                    Ok((
                        theta * intercept + family.cgf_identity(t)?,
                        intercept + slope * family.cgf_identity_prime(t)?,
                        slope * slope * family.cgf_identity_second(t)?,
                    ))
                }
                _ => Err(unsupported_closed_form(v)),
            }
        }
    }
}

/// `P(X >= a)`: an exact mass sum for discrete models, the survival
/// function for closed forms, trapezoid integration for grids. Returns 1
/// below the support and 0 beyond it.
pub fn tail_prob(model: &Model, a: f64) -> f64 {
    match model {
        Model::Discrete(m) => {
            if a <= m.support[0] {
                return 1.0;
            }
            m.support
                .iter()
                .zip(&m.prob)
                .filter(|(x, _)| **x >= a)
                .map(|(_, p)| p)
                .sum()
        }
        Model::Continuous(ContinuousModel::Grid(g)) => g.tail(a),
        Model::Continuous(ContinuousModel::ClosedForm(f)) => f.tail(a),
    }
}

// ---------------------------------------------------------------------------
// Solver-facing summaries
// ---------------------------------------------------------------------------

/// Range information about `v(X)` on the positive-mass support.
#[derive(Debug, Clone, Copy)]
pub(crate) struct VStats {
    pub min_v: f64,
    pub max_v: f64,
    /// log of the total mass carried by atoms where `v` attains `max_v`;
    /// meaningless (NaN) when the support is unbounded.
    pub log_mass_at_max: f64,
    /// true for atom-backed models
    pub bounded: bool,
}

pub(crate) fn v_stats(model: &Model, v: &ValueFunction) -> Result<VStats> {
    match model.atoms() {
        Some((points, mass)) => {
            let mut min_v = f64::INFINITY;
            let mut max_v = f64::NEG_INFINITY;
            for (&x, &m) in points.iter().zip(mass) {
                if m == 0.0 {
                    continue;
                }
                let val = v.eval(x);
                if !val.is_finite() {
                    return Err(Error::Evaluation(format!(
                        "v({x}) = {val} is not finite on a positive-mass point"
                    )));
                }
                min_v = min_v.min(val);
                max_v = max_v.max(val);
            }
            let mut mass_at_max = 0.0;
            for (&x, &m) in points.iter().zip(mass) {
                if m > 0.0 && v.eval(x) == max_v {
                    mass_at_max += m;
                }
            }
            Ok(VStats {
                min_v,
                max_v,
                log_mass_at_max: mass_at_max.ln(),
                bounded: true,
            })
        }
        None => {
            let family = match model {
                Model::Continuous(ContinuousModel::ClosedForm(f)) => f,
                _ => unreachable!(),
            };
            match v {
                ValueFunction::Identity => Ok(VStats {
                    min_v: family.support_inf(),
                    max_v: f64::INFINITY,
                    log_mass_at_max: f64::NAN,
                    bounded: false,
                }),
                ValueFunction::Affine { intercept, slope } => {
                    if *slope == 0.0 {
                        Ok(VStats {
                            min_v: *intercept,
                            max_v: *intercept,
                            log_mass_at_max: 0.0,
                            bounded: false,
                        })
                    } else {
                        let inf = family.support_inf();
                        Ok(VStats {
                            min_v: if inf.is_finite() {
                                intercept + slope * inf
                            } else {
                                f64::NEG_INFINITY
                            },
                            max_v: f64::INFINITY,
                            log_mass_at_max: f64::NAN,
                            bounded: false,
                        })
                    }
                }
                _ => Err(unsupported_closed_form(v)),
            }
        }
    }
}

/// Open interval of tilt parameters with a finite cumulant. Atom models
/// converge everywhere; closed-form families may truncate one side.
pub(crate) fn theta_domain(model: &Model, v: &ValueFunction) -> Result<(f64, f64)> {
    match model {
        Model::Continuous(ContinuousModel::ClosedForm(family)) => match v {
            ValueFunction::Identity => Ok((f64::NEG_INFINITY, family.identity_theta_sup())),
            ValueFunction::Affine { slope, .. } => {
                let sup = family.identity_theta_sup();
                if *slope == 0.0 || sup.is_infinite() {
                    Ok((f64::NEG_INFINITY, f64::INFINITY))
                } else {
                    Ok((f64::NEG_INFINITY, sup / slope))
                }
            }
            _ => Err(unsupported_closed_form(v)),
        },
        _ => Ok((f64::NEG_INFINITY, f64::INFINITY)),
    }
}
