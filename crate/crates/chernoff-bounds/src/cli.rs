//! Command-line front end.
//!
//! Commands: `bound`, `project`, `sweep`, `mle`, `experiment`,
//! `reproduce-example`. Global flags: `--tol`, `--max-iter`,
//! `--format {json|csv}`, `--seed`, `--precision`.
//!
//! Data goes to the output stream; diagnostics (warnings, iteration
//! counts) go to the error stream. Exit codes: 0 on success, 1 on i/o or
//! parse problems, 2 when a mathematical hypothesis of the bound is
//! violated. JSON output is full precision and round-trips exactly; CSV
//! and table output round to `--precision` decimal places.
//!
//! Model files:
//! - discrete pmf (`.json`): `{"support":[...],"prob":[...]}`
//! - closed-form family (`.json`): `{"family":"gaussian","params":{"mean":0.0,"std_dev":1.0}}`
//!   or `{"family":"exponential","params":{"rate":1.0}}`
//! - density grid (`.csv`): header `x,density`, one node per row
//!
//! Value functions: `identity`, `log`, or `table:<path>` where the file is
//! a CSV with header `x,v` listing the knots.

use std::fs;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::chernoff::{self, BoundReport};
use crate::error::{Error, Result};
use crate::measures::{DiscreteModel, Family, GridDensity, Model, ValueFunction};
use crate::mle::{self, Sample};
use crate::projection::{self, ProjectionRecord};
use crate::rng::{multinomial_counts, Xoshiro256PlusPlus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Knobs shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tolerance: f64,
    pub max_iterations: u32,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
    /// Decimal places for CSV/table output (JSON is always full precision).
    pub precision: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerance: chernoff::DEFAULT_TOL,
            max_iterations: chernoff::DEFAULT_MAX_ITER,
            output_format: OutputFormat::Json,
            seed: None,
            precision: 6,
        }
    }
}

const USAGE: &str = "\
usage: chernoff-bounds <command> [flags]

commands:
  bound              --model <file> [--v <spec>] --a <x>
  project            --model <file> [--v <spec>] --a <x>
  sweep              --model <file> [--v <spec>] --from <x> --to <x> --step <x>
  mle                --model <file> [--v <spec>] (--sample <file> | --a <x> --n <count>)
  experiment         --model <file> [--v <spec>] --a <x> --n-list <n1,n2,...>
  reproduce-example

global flags:
  --tol <x>          stationarity tolerance (default 1e-12)
  --max-iter <k>     solver iteration budget (default 200)
  --format <f>       json | csv (default json)
  --seed <k>         generator seed for sampling commands (default 0)
  --precision <k>    decimal places for csv/table output, 1..=17 (default 6)

value function specs: identity | log | table:<file.csv>  (default identity)
";

/// Runs the CLI against explicit argument and stream handles; returns the
/// process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let command = args
        .first()
        .ok_or_else(|| Error::Parse(format!("missing command\n{USAGE}")))?;
    if command == "help" || command == "--help" || command == "-h" {
        write!(out, "{USAGE}")?;
        return Ok(());
    }
    let mut flags = FlagMap::parse(&args[1..])?;
    let config = RunConfig {
        tolerance: flags.take_parsed("--tol")?.unwrap_or(chernoff::DEFAULT_TOL),
        max_iterations: flags
            .take_parsed("--max-iter")?
            .unwrap_or(chernoff::DEFAULT_MAX_ITER),
        output_format: match flags.take("--format") {
            None => OutputFormat::Json,
            Some(f) if f == "json" => OutputFormat::Json,
            Some(f) if f == "csv" => OutputFormat::Csv,
            Some(f) => return Err(Error::Parse(format!("unknown format '{f}'"))),
        },
        seed: flags.take_parsed("--seed")?,
        precision: flags.take_parsed("--precision")?.unwrap_or(6),
    };
    if !config.tolerance.is_finite() || config.tolerance <= 0.0 {
        return Err(Error::Parse("--tol must be > 0".into()));
    }
    if config.max_iterations < 1 {
        return Err(Error::Parse("--max-iter must be >= 1".into()));
    }
    if !(1..=17).contains(&config.precision) {
        return Err(Error::Parse("--precision must be in 1..=17".into()));
    }

    match command.as_str() {
        "bound" => cmd_bound(&mut flags, &config, out, err),
        "project" => cmd_project(&mut flags, &config, out, err),
        "sweep" => cmd_sweep(&mut flags, &config, out, err),
        "mle" => cmd_mle(&mut flags, &config, out, err),
        "experiment" => cmd_experiment(&mut flags, &config, out, err),
        "reproduce-example" => {
            flags.finish()?;
            cmd_reproduce_example(&config, out)
        }
        other => Err(Error::Parse(format!("unknown command '{other}'\n{USAGE}"))),
    }
    .and_then(|()| {
        out.flush()?;
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Flag handling
// ---------------------------------------------------------------------------

struct FlagMap {
    entries: Vec<(String, String)>,
}

impl FlagMap {
    fn parse(args: &[String]) -> Result<Self> {
        let mut entries = Vec::new();
        let mut it = args.iter();
        while let Some(key) = it.next() {
            if !key.starts_with("--") {
                return Err(Error::Parse(format!("expected a flag, got '{key}'\n{USAGE}")));
            }
            let value = it
                .next()
                .ok_or_else(|| Error::Parse(format!("flag {key} needs a value")))?;
            entries.push((key.clone(), value.clone()));
        }
        Ok(Self { entries })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let idx = self.entries.iter().position(|(k, _)| k == key)?;
        Some(self.entries.remove(idx).1)
    }

    fn take_parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("could not parse {key} value '{raw}'"))),
        }
    }

    fn require(&mut self, key: &str) -> Result<String> {
        self.take(key)
            .ok_or_else(|| Error::Parse(format!("missing required flag {key}\n{USAGE}")))
    }

    fn require_parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| Error::Parse(format!("could not parse {key} value '{raw}'")))
    }

    fn finish(&self) -> Result<()> {
        if let Some((key, _)) = self.entries.first() {
            return Err(Error::Parse(format!("unknown flag {key}\n{USAGE}")));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

fn load_model(path: &str) -> Result<Model> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read model file '{path}': {e}")))?;
    if path.ends_with(".csv") {
        let (xs, ys) = parse_two_column_csv(&text, path)?;
        return Ok(Model::from(GridDensity::new(xs, ys)?));
    }
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("model file '{path}' is not valid json: {e}")))?;
    if value.get("support").is_some() {
        let m: DiscreteModel = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("bad discrete model in '{path}': {e}")))?;
        Ok(Model::from(m))
    } else if value.get("family").is_some() {
        let f: Family = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("bad closed-form model in '{path}': {e}")))?;
        Ok(Model::from(f))
    } else {
        Err(Error::Parse(format!(
            "model file '{path}' has neither a 'support' nor a 'family' key"
        )))
    }
}

fn parse_two_column_csv(text: &str, path: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if lineno == 0 {
            let first = line.split(',').next().unwrap_or("").trim();
            if first.parse::<f64>().is_err() {
                continue; // header row
            }
        }
        let mut parts = line.split(',');
        let x = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| {
                Error::Parse(format!("'{path}' line {}: expected 'x,value'", lineno + 1))
            })?;
        let y = parts
            .next()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .ok_or_else(|| {
                Error::Parse(format!("'{path}' line {}: expected 'x,value'", lineno + 1))
            })?;
        xs.push(x);
        ys.push(y);
    }
    if xs.is_empty() {
        return Err(Error::Parse(format!("'{path}' contains no data rows")));
    }
    Ok((xs, ys))
}

/// `--v` flag; identity is the default transformation when none is given.
fn value_function_flag(flags: &mut FlagMap) -> Result<ValueFunction> {
    match flags.take("--v") {
        Some(spec) => parse_value_function(&spec),
        None => Ok(ValueFunction::identity()),
    }
}

fn parse_value_function(spec: &str) -> Result<ValueFunction> {
    match spec {
        "identity" => Ok(ValueFunction::identity()),
        "log" => Ok(ValueFunction::logarithm()),
        _ => {
            if let Some(path) = spec.strip_prefix("table:") {
                let text = fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read table '{path}': {e}")))?;
                let (xs, vs) = parse_two_column_csv(&text, path)?;
                ValueFunction::user_table(xs, vs)
            } else {
                Err(Error::Parse(format!(
                    "unknown value function '{spec}' (expected identity | log | table:<file>)"
                )))
            }
        }
    }
}

fn load_sample(path: &str) -> Result<Sample> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read sample file '{path}': {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("bad sample in '{path}': {e}")))
}

fn fmt_opt(x: Option<f64>, precision: usize) -> String {
    match x {
        Some(v) => format!("{v:.precision$}"),
        None => String::new(),
    }
}

fn warn_zero_atoms(model: &Model, err: &mut dyn Write) -> Result<()> {
    if let Some(dm) = model.as_discrete() {
        if dm.has_zero_atoms() {
            writeln!(
                err,
                "warning: the pmf carries zero-mass atoms; the ratio form is undefined there"
            )?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_bound(
    flags: &mut FlagMap,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let model = load_model(&flags.require("--model")?)?;
    let v = value_function_flag(flags)?;
    let a: f64 = flags.require_parsed("--a")?;
    flags.finish()?;
    warn_zero_atoms(&model, err)?;

    let report = chernoff::bound_with(&model, &v, a, config.tolerance, config.max_iterations)?;
    writeln!(
        err,
        "solver: {} iterations, residual {:e}, {}",
        report.tilt.iterations,
        report.tilt.residual,
        match report.tilt.attained {
            chernoff::Attainment::Attained => "attained",
            chernoff::Attainment::InfimumAtInfinity => "infimum at infinity",
            chernoff::Attainment::TrivialZero => "trivial zero",
        }
    )?;
    if let Some(w) = &report.warning {
        writeln!(err, "warning: {w}")?;
    }
    emit_bound_report(&report, config, out)
}

fn emit_bound_report(report: &BoundReport, config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    match config.output_format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(report)?)?;
        }
        OutputFormat::Csv => {
            let p = config.precision;
            writeln!(
                out,
                "a,v_of_a,theta_hat,attained,log_bound,bound,true_tail,kl,product_form,ratio_form"
            )?;
            writeln!(
                out,
                "{:.p$},{:.p$},{:.p$},{},{:.p$},{:.p$},{},{:.p$},{},{}",
                report.a,
                report.v_of_a,
                report.tilt.theta_hat,
                serde_json::to_value(report.tilt.attained)?
                    .as_str()
                    .unwrap_or("?"),
                report.log_bound,
                report.bound,
                fmt_opt(report.true_tail, p),
                report.kl_value,
                fmt_opt(report.product_form, p),
                fmt_opt(report.ratio_form, p),
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct ProjectReport {
    a: f64,
    theta_hat: f64,
    log_normalizer: f64,
    kl: f64,
    projection: ProjectionRecord,
}

fn cmd_project(
    flags: &mut FlagMap,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let model = load_model(&flags.require("--model")?)?;
    let v = value_function_flag(flags)?;
    let a: f64 = flags.require_parsed("--a")?;
    flags.finish()?;
    warn_zero_atoms(&model, err)?;

    let proj = projection::i_projection_with(&model, &v, a, config.tolerance, config.max_iterations)?;
    let record = ProjectionRecord::from_projection(&proj);
    match config.output_format {
        OutputFormat::Json => {
            let r = ProjectReport {
                a,
                theta_hat: proj.theta_hat,
                log_normalizer: proj.log_normalizer,
                kl: proj.kl,
                projection: record,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
        }
        OutputFormat::Csv => {
            let p = config.precision;
            writeln!(out, "theta_hat,log_normalizer,kl")?;
            writeln!(
                out,
                "{:.p$},{:.p$},{:.p$}",
                proj.theta_hat, proj.log_normalizer, proj.kl
            )?;
            if let Model::Discrete(dm) = &proj.tilted {
                writeln!(out)?;
                writeln!(out, "x,prob,tilted_prob")?;
                let base = model.as_discrete().expect("discrete tilt of a discrete model");
                for ((x, q), t) in base.support().iter().zip(base.prob()).zip(dm.prob()) {
                    writeln!(out, "{x:.p$},{q:.p$},{t:.p$}")?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_sweep(
    flags: &mut FlagMap,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let model = load_model(&flags.require("--model")?)?;
    let v = value_function_flag(flags)?;
    let from: f64 = flags.require_parsed("--from")?;
    let to: f64 = flags.require_parsed("--to")?;
    let step: f64 = flags.require_parsed("--step")?;
    flags.finish()?;
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Parse("--step must be > 0".into()));
    }
    if to < from {
        return Err(Error::Parse("--to must be >= --from".into()));
    }
    warn_zero_atoms(&model, err)?;

    let p = config.precision;
    writeln!(out, "a,theta_hat,log_bound,bound,true_tail,kl")?;
    let mut trimmed = 0usize;
    let mut i = 0u64;
    loop {
        let a = from + i as f64 * step;
        if a > to + step * 1e-9 {
            break;
        }
        i += 1;
        match chernoff::bound_with(&model, &v, a, config.tolerance, config.max_iterations) {
            Ok(report) => writeln!(
                out,
                "{:.p$},{:.p$},{:.p$},{:.p$},{},{:.p$}",
                report.a,
                report.tilt.theta_hat,
                report.log_bound,
                report.bound,
                fmt_opt(report.true_tail, p),
                report.kl_value,
            )?,
            Err(Error::BelowMean { .. }) | Err(Error::InfeasibleTarget { .. }) => {
                trimmed += 1;
            }
            Err(e) => return Err(e),
        }
    }
    if trimmed > 0 {
        writeln!(
            err,
            "warning: trimmed {trimmed} threshold(s) outside [E[X], max support]"
        )?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct MlReport {
    theta_ml: f64,
    iterations: u32,
    residual: f64,
    v_bar: f64,
    log_likelihood: f64,
    /// bound recovered from the maximized likelihood (n-th root form)
    likelihood_bound: f64,
    /// bound evaluated directly at the sample target `v_bar`
    direct_bound: f64,
    relative_difference: f64,
}

fn cmd_mle(
    flags: &mut FlagMap,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let model = load_model(&flags.require("--model")?)?;
    let v = value_function_flag(flags)?;
    let dm = model
        .as_discrete()
        .ok_or_else(|| Error::Evaluation("mle needs a discrete model".into()))?;

    let sample = match flags.take("--sample") {
        Some(path) => {
            flags.finish()?;
            load_sample(&path)?
        }
        None => {
            let a: f64 = flags.require_parsed("--a")?;
            let n: u64 = flags.require_parsed("--n")?;
            flags.finish()?;
            if n == 0 {
                return Err(Error::Parse("--n must be >= 1".into()));
            }
            let seed = config.seed.unwrap_or(0);
            let proj =
                projection::i_projection_with(&model, &v, a, config.tolerance, config.max_iterations)?;
            let p_hat = proj
                .tilted
                .as_discrete()
                .ok_or_else(|| Error::Evaluation("simulation needs a discrete projection".into()))?;
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
            let counts = multinomial_counts(&mut rng, n, p_hat.prob());
            writeln!(
                err,
                "simulated {n} draws from the projection at a = {a} (seed {seed})"
            )?;
            Sample::new(counts)?
        }
    };

    let sol = mle::ml_estimate_with(dm, &v, &sample, config.tolerance, config.max_iterations)?;
    let l_max = mle::log_likelihood(dm, &v, sol.theta_hat, &sample)?;
    let likelihood_bound = mle::chernoff_from_likelihood(dm, &sample, l_max)?;
    let v_bar = mle::sample_mean_v(dm, &v, &sample)?;
    let direct_bound =
        (crate::measures::cgf(&model, &v, sol.theta_hat)? - sol.theta_hat * v_bar).exp();
    let relative_difference = ((likelihood_bound - direct_bound) / direct_bound).abs();
    let report = MlReport {
        theta_ml: sol.theta_hat,
        iterations: sol.iterations,
        residual: sol.residual,
        v_bar,
        log_likelihood: l_max,
        likelihood_bound,
        direct_bound,
        relative_difference,
    };
    match config.output_format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        OutputFormat::Csv => {
            let p = config.precision;
            writeln!(
                out,
                "theta_ml,v_bar,log_likelihood,likelihood_bound,direct_bound,relative_difference"
            )?;
            writeln!(
                out,
                "{:.p$},{:.p$},{:.p$},{:.p$},{:.p$},{:e}",
                report.theta_ml,
                report.v_bar,
                report.log_likelihood,
                report.likelihood_bound,
                report.direct_bound,
                report.relative_difference,
            )?;
        }
    }
    Ok(())
}

fn cmd_experiment(
    flags: &mut FlagMap,
    config: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let model = load_model(&flags.require("--model")?)?;
    let v = value_function_flag(flags)?;
    let a: f64 = flags.require_parsed("--a")?;
    let n_list_raw = flags.require("--n-list")?;
    flags.finish()?;
    let dm = model
        .as_discrete()
        .ok_or_else(|| Error::Evaluation("experiment needs a discrete model".into()))?;
    let n_list: Vec<u64> = n_list_raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad n-list entry '{s}'")))
        })
        .collect::<Result<_>>()?;
    let seed = config.seed.unwrap_or(0);
    writeln!(err, "drawing from the projection at a = {a} with seed {seed}")?;

    let rows = mle::asymptotic_experiment(dm, &v, a, &n_list, seed)?;
    let p = config.precision;
    writeln!(
        out,
        "n,loglik_over_n,minus_entropy_target,deviation,empirical_max_dev"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{:.p$},{:.p$},{:.p$},{:.p$}",
            r.n, r.loglik_over_n, r.minus_entropy_target, r.deviation, r.empirical_max_dev
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// reproduce-example
// ---------------------------------------------------------------------------

/// The worked example shipped with the crate: support 1..=8 with pmf
/// [0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01].
pub fn example_pmf() -> DiscreteModel {
    DiscreteModel::new(
        vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
        vec![0.05, 0.4, 0.2, 0.15, 0.10, 0.07, 0.02, 0.01],
    )
    .expect("the embedded pmf is valid")
}

/// Reference values the example reproduces, with comparison tolerances.
pub const EXAMPLE_ROWS: [(f64, f64, f64, f64); 4] = [
    // (a, bound reference, bound tolerance, true tail)
    (4.0, 0.8829, 5e-4, 0.35),
    (5.0, 0.5675, 5e-4, 0.2),
    (6.0, 0.27, 5e-3, 0.1),
    (7.0, 0.087, 5e-4, 0.03),
];

/// Reference projection at `a = 4`, printed to four decimals.
pub const EXAMPLE_PROJECTION: [f64; 8] = [
    0.0236, 0.2526, 0.1692, 0.1699, 0.1517, 0.1422, 0.0544, 0.0364,
];
const EXAMPLE_PROJECTION_TOL: f64 = 5e-4;
const EXAMPLE_TAIL_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct ExampleRowOut {
    a: f64,
    bound: f64,
    bound_reference: f64,
    true_tail: f64,
    tail_reference: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ExampleOut {
    rows: Vec<ExampleRowOut>,
    projection: Vec<f64>,
    projection_reference: Vec<f64>,
    projection_max_abs_dev: f64,
    all_pass: bool,
}

fn cmd_reproduce_example(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    let model = Model::from(example_pmf());
    let v = ValueFunction::identity();

    let mut rows = Vec::new();
    let mut all_pass = true;
    for (a, bound_ref, bound_tol, tail_ref) in EXAMPLE_ROWS {
        let report = chernoff::bound_with(&model, &v, a, config.tolerance, config.max_iterations)?;
        let tail = report.true_tail.unwrap_or(f64::NAN);
        let pass =
            (report.bound - bound_ref).abs() <= bound_tol && (tail - tail_ref).abs() <= EXAMPLE_TAIL_TOL;
        all_pass &= pass;
        rows.push(ExampleRowOut {
            a,
            bound: report.bound,
            bound_reference: bound_ref,
            true_tail: tail,
            tail_reference: tail_ref,
            pass,
        });
    }

    let proj = projection::i_projection_with(&model, &v, 4.0, config.tolerance, config.max_iterations)?;
    let computed = proj
        .tilted
        .as_discrete()
        .expect("discrete projection")
        .prob()
        .to_vec();
    let max_dev = computed
        .iter()
        .zip(EXAMPLE_PROJECTION)
        .map(|(c, r)| (c - r).abs())
        .fold(0.0, f64::max);
    let proj_pass = max_dev <= EXAMPLE_PROJECTION_TOL;
    all_pass &= proj_pass;

    match config.output_format {
        OutputFormat::Json => {
            let report = ExampleOut {
                rows,
                projection: computed,
                projection_reference: EXAMPLE_PROJECTION.to_vec(),
                projection_max_abs_dev: max_dev,
                all_pass,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        OutputFormat::Csv => {
            let p = config.precision;
            writeln!(out, "a,bound,bound_reference,true_tail,tail_reference,status")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:.1},{:.p$},{},{:.p$},{},{}",
                    r.a,
                    r.bound,
                    r.bound_reference,
                    r.true_tail,
                    r.tail_reference,
                    if r.pass { "PASS" } else { "FAIL" }
                )?;
            }
            writeln!(out)?;
            writeln!(out, "atom,projection,projection_reference,status")?;
            for (i, (c, r)) in computed.iter().zip(EXAMPLE_PROJECTION).enumerate() {
                writeln!(
                    out,
                    "{},{c:.p$},{r},{}",
                    i + 1,
                    if (c - r).abs() <= EXAMPLE_PROJECTION_TOL {
                        "PASS"
                    } else {
                        "FAIL"
                    }
                )?;
            }
        }
    }
    Ok(())
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("json: {e}"))
    }
}

impl From<std::fmt::Error> for Error {
    fn from(e: std::fmt::Error) -> Self {
        Error::Parse(format!("format: {e}"))
    }
}

/// Convenience wrapper used by tests: runs the CLI on string arguments and
/// captures both streams.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_command_is_a_usage_error() {
        let (code, _, err) = run_captured(&[]);
        assert_eq!(code, 1);
        assert!(err.contains("usage"));
    }

    #[test]
    fn help_prints_usage_and_succeeds() {
        let (code, out, _) = run_captured(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("usage"));
    }

    #[test]
    fn unknown_flags_are_rejected() {
        let (code, _, err) = run_captured(&["reproduce-example", "--bogus", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("--bogus"), "{err}");
    }

    #[test]
    fn reproduce_example_passes_in_json() {
        let (code, out, _) = run_captured(&["reproduce-example"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["all_pass"], serde_json::Value::Bool(true), "{out}");
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn reproduce_example_csv_has_pass_column() {
        let (code, out, _) = run_captured(&["reproduce-example", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("PASS").count(), 12, "{out}");
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn reproduce_example_respects_precision() {
        let (code, out, _) = run_captured(&["reproduce-example", "--format", "csv", "--precision", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("4.0,0.88,0.8829,0.35,0.35,PASS"), "{out}");
    }

    #[test]
    fn looser_tolerance_still_passes() {
        let (code, out, _) = run_captured(&["reproduce-example", "--tol", "1e-3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["all_pass"], serde_json::Value::Bool(true));
    }
}
