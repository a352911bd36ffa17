//! Line-oriented configuration: `[section]` headers, `key = value` pairs and
//! `#` comments. Keys before the first header belong to `[run]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::evolution::sigma_admissible;
use crate::experiments::{admissible_pair, ExperimentKind, ScalingPlan, SingularParams, StrichartzParams, H_MAX};
use crate::par::Execution;
use crate::symbol::Symbol;

/// Raw `key = value` pairs of one section with their line numbers.
#[derive(Debug, Default)]
struct Section {
    entries: BTreeMap<String, (usize, String)>,
}

fn parse_sections(text: &str) -> Result<BTreeMap<String, Section>> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current = "run".to_string();
    sections.entry(current.clone()).or_default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(Error::Parse { line: line_no, message: format!("unterminated section header `{line}`") });
            };
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Parse { line: line_no, message: "empty section name".into() });
            }
            current = name.to_string();
            sections.entry(current.clone()).or_default();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse { line: line_no, message: format!("expected `key = value`, found `{line}`") });
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(Error::Parse { line: line_no, message: format!("invalid key `{key}`") });
        }
        if value.is_empty() {
            return Err(Error::Parse { line: line_no, message: format!("key `{key}` has no value") });
        }
        let section = sections.get_mut(&current).expect("section inserted above");
        if section.entries.insert(key.to_string(), (line_no, value.to_string())).is_some() {
            return Err(Error::Parse { line: line_no, message: format!("duplicate key `{key}` in [{current}]") });
        }
    }
    Ok(sections)
}

/// Number literal or `exp(x)`.
fn parse_number(text: &str) -> std::result::Result<f64, String> {
    let text = text.trim();
    let value = if let Some(inner) = text.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        inner.trim().parse::<f64>().map_err(|e| format!("`{text}`: {e}"))?.exp()
    } else {
        match text {
            "inf" | "infinity" => f64::INFINITY,
            _ => text.parse::<f64>().map_err(|e| format!("`{text}`: {e}"))?,
        }
    };
    if value.is_nan() {
        return Err(format!("`{text}` is not a number"));
    }
    Ok(value)
}

/// Typed access to one section; every key must be consumed.
struct Reader<'a> {
    name: &'a str,
    section: &'a Section,
    used: Vec<&'a str>,
    missing: Vec<&'static str>,
}

impl<'a> Reader<'a> {
    fn new(name: &'a str, section: &'a Section) -> Self {
        Reader { name, section, used: Vec::new(), missing: Vec::new() }
    }

    fn raw(&mut self, key: &'static str) -> Option<(usize, &'a str)> {
        let (line, value) = self.section.entries.get(key)?;
        self.used.push(key);
        Some((*line, value.as_str()))
    }

    fn error(&self, key: &str, line: usize, message: impl std::fmt::Display) -> Error {
        Error::Config(format!("[{}] key `{key}` (line {line}): {message}", self.name))
    }

    fn typed<T>(&mut self, key: &'static str, parse: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, value)) => parse(value).map(Some).map_err(|m| self.error(key, line, m)),
        }
    }

    fn required<T>(&mut self, key: &'static str, parse: impl Fn(&str) -> std::result::Result<T, String>) -> Result<Option<T>> {
        let value = self.typed(key, parse)?;
        if value.is_none() {
            self.missing.push(key);
        }
        Ok(value)
    }

    fn number(&mut self, key: &'static str, default: f64) -> Result<f64> {
        Ok(self.typed(key, parse_number)?.unwrap_or(default))
    }

    fn finish(self) -> Result<()> {
        if !self.missing.is_empty() {
            return Err(Error::Config(format!(
                "[{}] missing required keys: {}",
                self.name,
                self.missing.join(", ")
            )));
        }
        if let Some((key, (line, _))) = self.section.entries.iter().find(|(k, _)| !self.used.contains(&k.as_str())) {
            return Err(Error::Config(format!("[{}] unknown key `{key}` (line {line})", self.name)));
        }
        Ok(())
    }
}

fn number_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    text.split(',').map(parse_number).collect()
}

fn integer(text: &str) -> std::result::Result<u64, String> {
    text.trim().parse::<u64>().map_err(|e| format!("`{text}`: {e}"))
}

fn usize_value(text: &str) -> std::result::Result<usize, String> {
    integer(text).map(|v| v as usize)
}

fn usize_list(text: &str) -> std::result::Result<Vec<usize>, String> {
    text.split(',').map(usize_value).collect()
}

fn boolean(text: &str) -> std::result::Result<bool, String> {
    match text.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(format!("`{other}` is not `true` or `false`")),
    }
}

fn symbol(text: &str) -> std::result::Result<Symbol, String> {
    Symbol::parse(text).map_err(|e| e.to_string())
}

fn execution(text: &str) -> std::result::Result<Execution, String> {
    match text.trim() {
        "parallel" => Ok(Execution::Parallel),
        "sequential" => Ok(Execution::Sequential),
        other => Err(format!("`{other}` is not `parallel` or `sequential`")),
    }
}

fn dimension(text: &str) -> std::result::Result<usize, String> {
    match usize_value(text)? {
        d @ (1 | 2) => Ok(d),
        d => Err(format!("dimension {d} must be 1 or 2")),
    }
}

fn power_of_two(text: &str) -> std::result::Result<usize, String> {
    let n = usize_value(text)?;
    if n >= 8 && n.is_power_of_two() {
        Ok(n)
    } else {
        Err(format!("n = {n} must be a power of two >= 8"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    /// `amplitude · e^{−|x|²}`.
    Gaussian,
    /// Random Fourier coefficients under a Gaussian envelope, drawn from the seed.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateConfig {
    pub d: usize,
    pub n: usize,
    pub half_length: f64,
    pub symbol: Symbol,
    pub lambda: f64,
    pub sigma: f64,
    pub dt: f64,
    pub final_time: f64,
    pub eps: f64,
    pub snapshot_every: usize,
    pub dealias: bool,
    pub initial: InitialData,
    pub amplitude: f64,
}

/// Parameters shared by the scaling-plan drivers.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanConfig {
    pub d: usize,
    pub sigma: f64,
    pub s: f64,
    pub symbol: Symbol,
    pub omega: f64,
    pub theta: f64,
    pub delta: f64,
    pub lambda: f64,
}

impl PlanConfig {
    pub fn plan(&self) -> Result<ScalingPlan> {
        ScalingPlan::compute(self.d, self.sigma, self.s, self.symbol.class(), self.omega, self.theta, self.delta)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InflateConfig {
    pub plan: PlanConfig,
    pub h_list: Vec<f64>,
    /// Nodes per axis of the rescaled-variable grid.
    pub n: usize,
    pub half_length: f64,
    pub min_steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeApproxConfig {
    pub plan: PlanConfig,
    pub eps_list: Vec<f64>,
    pub r: u32,
    pub n: usize,
    pub half_length: f64,
    pub min_steps: usize,
    pub disable_dispersion: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrichartzConfig {
    pub symbol: Symbol,
    pub params: StrichartzParams,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DriverConfig {
    Simulate(SimulateConfig),
    Inflate(InflateConfig),
    OdeApprox(OdeApproxConfig),
    Strichartz(StrichartzConfig),
    Singular(SingularParams),
}

impl DriverConfig {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            DriverConfig::Simulate(_) => ExperimentKind::Simulate,
            DriverConfig::Inflate(_) => ExperimentKind::Inflate,
            DriverConfig::OdeApprox(_) => ExperimentKind::OdeApprox,
            DriverConfig::Strichartz(_) => ExperimentKind::Strichartz,
            DriverConfig::Singular(_) => ExperimentKind::Singular,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub execution: Execution,
    pub output_dir: Option<PathBuf>,
    pub driver: DriverConfig,
}

pub fn kind_from_name(name: &str) -> Option<ExperimentKind> {
    [
        ExperimentKind::Simulate,
        ExperimentKind::Inflate,
        ExperimentKind::OdeApprox,
        ExperimentKind::Strichartz,
        ExperimentKind::Singular,
    ]
    .into_iter()
    .find(|k| k.name() == name)
}

fn read_plan(r: &mut Reader) -> Result<Option<PlanConfig>> {
    let d = r.required("d", dimension)?;
    let sigma = r.required("sigma", parse_number)?;
    let s = r.required("s", parse_number)?;
    let symbol = r.required("symbol", symbol)?;
    let omega = r.number("omega", 1.0)?;
    let theta = r.number("theta", 0.05)?;
    let delta = r.number("delta", 0.1)?;
    let lambda = r.number("lambda", 1.0)?;
    Ok(match (d, sigma, s, symbol) {
        (Some(d), Some(sigma), Some(s), Some(symbol)) => {
            Some(PlanConfig { d, sigma, s, symbol, omega, theta, delta, lambda })
        }
        _ => None,
    })
}

fn schema_error(kind: ExperimentKind, e: Error) -> Error {
    match e {
        Error::Hypothesis { what, hypothesis } => {
            Error::Config(format!("[{}] {what}; violated hypothesis: {hypothesis}", kind.name()))
        }
        other => Error::Config(format!("[{}] {other}", kind.name())),
    }
}

fn check_plan(kind: ExperimentKind, cfg: &PlanConfig) -> Result<ScalingPlan> {
    if !cfg.lambda.is_finite() {
        return Err(Error::Config(format!("[{}] lambda = {} must be finite", kind.name(), cfg.lambda)));
    }
    if let Some(native) = cfg.symbol.native_dim() {
        if native != cfg.d {
            return Err(Error::Config(format!(
                "[{}] symbol `{}` lives in dimension {native}, not d = {}",
                kind.name(),
                cfg.symbol,
                cfg.d
            )));
        }
    }
    if !(cfg.sigma > 0.0) {
        return Err(Error::Config(format!(
            "[{}] sigma = {} must be positive; violated hypothesis: sigma > 0",
            kind.name(),
            cfg.sigma
        )));
    }
    if !sigma_admissible(cfg.sigma, cfg.d) {
        return Err(Error::Config(format!(
            "[{}] sigma = {} is neither an integer nor satisfies 2 sigma >= r > d/2 for an integer r; \
             violated hypothesis: sigma integer, or 2 sigma >= r > d/2",
            kind.name(),
            cfg.sigma
        )));
    }
    cfg.plan().map_err(|e| schema_error(kind, e))
}

fn check_list(kind: ExperimentKind, key: &str, list: &[f64], hi: f64, inclusive: bool) -> Result<()> {
    let in_range = |v: f64| v > 0.0 && if inclusive { v <= hi } else { v < hi };
    if list.len() < 2 || list.iter().any(|&v| !in_range(v)) || list.windows(2).any(|w| !(w[1] < w[0])) {
        let bracket = if inclusive { "]" } else { ")" };
        return Err(Error::Config(format!(
            "[{}] key `{key}`: {list:?} must hold >= 2 strictly decreasing values in (0, {hi}{bracket}",
            kind.name()
        )));
    }
    Ok(())
}

fn read_driver(kind: ExperimentKind, r: &mut Reader, execution: Execution) -> Result<Option<DriverConfig>> {
    let cfg = match kind {
        ExperimentKind::Simulate => {
            let d = r.required("d", dimension)?;
            let n = r.required("n", power_of_two)?;
            let half_length = r.required("half_length", parse_number)?;
            let symbol = r.required("symbol", symbol)?;
            let sigma = r.required("sigma", parse_number)?;
            let dt = r.required("dt", parse_number)?;
            let final_time = r.required("final_time", parse_number)?;
            let lambda = r.number("lambda", 1.0)?;
            let eps = r.number("eps", 1.0)?;
            let snapshot_every = r.typed("snapshot_every", usize_value)?.unwrap_or(1);
            let dealias = r.typed("dealias", boolean)?.unwrap_or(false);
            let initial = r
                .typed("initial", |v| match v {
                    "gaussian" => Ok(InitialData::Gaussian),
                    "random" => Ok(InitialData::Random),
                    other => Err(format!("`{other}` is not `gaussian` or `random`")),
                })?
                .unwrap_or(InitialData::Gaussian);
            let amplitude = r.number("amplitude", 1.0)?;
            match (d, n, half_length, symbol, sigma, dt, final_time) {
                (Some(d), Some(n), Some(half_length), Some(symbol), Some(sigma), Some(dt), Some(final_time)) => {
                    Some(DriverConfig::Simulate(SimulateConfig {
                        d,
                        n,
                        half_length,
                        symbol,
                        lambda,
                        sigma,
                        dt,
                        final_time,
                        eps,
                        snapshot_every,
                        dealias,
                        initial,
                        amplitude,
                    }))
                }
                _ => None,
            }
        }
        ExperimentKind::Inflate => {
            let plan = read_plan(r)?;
            let h_list = r.required("h_list", number_list)?;
            let n = r.typed("n", power_of_two)?.unwrap_or(256);
            let half_length = r.number("half_length", 8.0)?;
            let min_steps = r.typed("min_steps", usize_value)?.unwrap_or(64);
            match (plan, h_list) {
                (Some(plan), Some(h_list)) => {
                    Some(DriverConfig::Inflate(InflateConfig { plan, h_list, n, half_length, min_steps }))
                }
                _ => None,
            }
        }
        ExperimentKind::OdeApprox => {
            let plan = read_plan(r)?;
            let eps_list = r.required("eps_list", number_list)?;
            let r_index = r.typed("r", integer)?;
            let n = r.typed("n", power_of_two)?.unwrap_or(256);
            let half_length = r.number("half_length", 8.0)?;
            let min_steps = r.typed("min_steps", usize_value)?.unwrap_or(64);
            let disable_dispersion = r.typed("disable_dispersion", boolean)?.unwrap_or(false);
            match (plan, eps_list) {
                (Some(plan), Some(eps_list)) => {
                    let r_index = r_index.unwrap_or(plan.d as u64 / 2 + 1) as u32;
                    Some(DriverConfig::OdeApprox(OdeApproxConfig {
                        plan,
                        eps_list,
                        r: r_index,
                        n,
                        half_length,
                        min_steps,
                        disable_dispersion,
                    }))
                }
                _ => None,
            }
        }
        ExperimentKind::Strichartz => {
            let defaults = StrichartzParams::default();
            let d = r.required("d", dimension)?;
            let p = r.required("p", parse_number)?;
            let q = r.required("q", parse_number)?;
            let symbol = r.required("symbol", symbol)?;
            let n_list = r.required("n_list", usize_list)?;
            let k_grid = r.typed("k_grid", number_list)?.unwrap_or(defaults.k_grid);
            let t_start = r.number("t_start", defaults.interval.0)?;
            let t_end = r.number("t_end", defaults.interval.1)?;
            let n_max = r.typed("n_max", usize_value)?.unwrap_or(defaults.n_max);
            let time_ratio = r.number("time_ratio", defaults.time_ratio)?;
            let contrast = r.typed("contrast", boolean)?.unwrap_or(defaults.contrast);
            match (d, p, q, symbol, n_list) {
                (Some(d), Some(p), Some(q), Some(symbol), Some(n_list)) => Some(DriverConfig::Strichartz(StrichartzConfig {
                    symbol,
                    params: StrichartzParams {
                        d,
                        p,
                        q,
                        k_grid,
                        n_list,
                        interval: (t_start, t_end),
                        n_max,
                        time_ratio,
                        contrast,
                        execution,
                    },
                })),
                _ => None,
            }
        }
        ExperimentKind::Singular => {
            let defaults = SingularParams::default();
            let sigma = r.required("sigma", parse_number)?;
            let t = r.required("t", parse_number)?;
            let rho_list = r.required("rho_list", number_list)?;
            let lambda = r.number("lambda", defaults.lambda)?;
            let delta_amp = r.number("amplitude", defaults.delta_amp)?;
            let rel_tol = r.number("rel_tol", defaults.rel_tol)?;
            match (sigma, t, rho_list) {
                (Some(sigma), Some(t), Some(rho_list)) => Some(DriverConfig::Singular(SingularParams {
                    sigma,
                    lambda,
                    t,
                    delta_amp,
                    rho_list,
                    rel_tol,
                    execution,
                })),
                _ => None,
            }
        }
    };
    Ok(cfg)
}

impl RunConfig {
    /// Parse and validate a configuration for `kind`. The file must contain a
    /// section named after the subcommand.
    pub fn parse(text: &str, kind: ExperimentKind) -> Result<RunConfig> {
        let sections = parse_sections(text)?;
        if let Some(name) = sections.keys().find(|k| k.as_str() != "run" && k.as_str() != kind.name()) {
            return Err(Error::Config(format!(
                "unknown section [{name}]; expected [run] and [{}]",
                kind.name()
            )));
        }
        let empty = Section::default();
        let run_section = sections.get("run").unwrap_or(&empty);
        let mut run = Reader::new("run", run_section);
        let seed = run.typed("seed", integer)?.unwrap_or(0);
        let execution = run.typed("execution", execution)?.unwrap_or_default();
        let output_dir = run.typed("output_dir", |v| Ok(PathBuf::from(v)))?;
        run.finish()?;

        let Some(section) = sections.get(kind.name()) else {
            return Err(Error::Config(format!("missing section [{}]", kind.name())));
        };
        let mut reader = Reader::new(kind.name(), section);
        let driver = read_driver(kind, &mut reader, execution)?;
        reader.finish()?;
        let driver = driver.expect("all required keys present after finish");
        let cfg = RunConfig { seed, execution, output_dir, driver };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn kind(&self) -> ExperimentKind {
        self.driver.kind()
    }

    /// Check every hypothesis the drivers rely on, before any computation.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind();
        let name = kind.name();
        let fail = |msg: String| Err(Error::Config(format!("[{name}] {msg}")));
        match &self.driver {
            DriverConfig::Simulate(c) => {
                if let Some(native) = c.symbol.native_dim() {
                    if native != c.d {
                        return fail(format!("symbol `{}` lives in dimension {native}, not d = {}", c.symbol, c.d));
                    }
                }
                if !(c.half_length > 0.0) || !c.half_length.is_finite() {
                    return fail(format!("key `half_length`: {} must be positive", c.half_length));
                }
                if !(c.amplitude.is_finite()) {
                    return fail(format!("key `amplitude`: {} must be finite", c.amplitude));
                }
                let solve = crate::evolution::SolveConfig::new(c.symbol.clone(), c.lambda, c.sigma, c.dt, c.final_time)
                    .with_eps(c.eps)
                    .with_snapshot_every(c.snapshot_every);
                solve.validate().map_err(|e| schema_error(kind, e))
            }
            DriverConfig::Inflate(c) => {
                let plan = check_plan(kind, &c.plan)?;
                check_list(kind, "h_list", &c.h_list, H_MAX, true)?;
                for &h in &c.h_list {
                    plan.check_h(h).map_err(|e| schema_error(kind, e))?;
                }
                if !(c.half_length > 0.0) || !c.half_length.is_finite() {
                    return fail(format!("key `half_length`: {} must be positive", c.half_length));
                }
                if c.min_steps == 0 {
                    return fail("key `min_steps` must be >= 1".into());
                }
                Ok(())
            }
            DriverConfig::OdeApprox(c) => {
                let plan = check_plan(kind, &c.plan)?;
                check_list(kind, "eps_list", &c.eps_list, 1.0, false)?;
                crate::experiments::ode_approx::check_r(c.r, c.plan.d, c.plan.sigma)
                    .map_err(|e| schema_error(kind, e))?;
                for &eps in &c.eps_list {
                    plan.check_h(plan.h_for_eps(eps)).map_err(|e| schema_error(kind, e))?;
                }
                if !(c.half_length > 0.0) || !c.half_length.is_finite() {
                    return fail(format!("key `half_length`: {} must be positive", c.half_length));
                }
                if c.min_steps == 0 {
                    return fail("key `min_steps` must be >= 1".into());
                }
                Ok(())
            }
            DriverConfig::Strichartz(c) => {
                if !admissible_pair(c.params.p, c.params.q, c.params.d) {
                    return fail(format!(
                        "(p, q) = ({}, {}) is not admissible in d = {}; violated hypothesis: \
                         p, q >= 2, (p, q) != (2, inf), 2/p = d(1/2 - 1/q)",
                        c.params.p, c.params.q, c.params.d
                    ));
                }
                if let Some(native) = c.symbol.native_dim() {
                    if native != c.params.d {
                        return fail(format!(
                            "symbol `{}` lives in dimension {native}, not d = {}",
                            c.symbol, c.params.d
                        ));
                    }
                }
                c.params.validate().map_err(|e| schema_error(kind, e))
            }
            DriverConfig::Singular(c) => c.validate().map_err(|e| schema_error(kind, e)),
        }
    }

    /// Canonical text form; parsing it yields an equal configuration.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let num = |v: f64| -> String {
            if v.is_infinite() {
                "inf".to_string()
            } else {
                format!("{v:?}")
            }
        };
        let list = |v: &[f64]| v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ");
        let ints = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let mut line = |key: &str, value: String| {
            writeln!(out, "{key} = {value}").expect("writing to a String");
        };
        line("seed", self.seed.to_string());
        line(
            "execution",
            match self.execution {
                Execution::Parallel => "parallel".into(),
                Execution::Sequential => "sequential".into(),
            },
        );
        if let Some(dir) = &self.output_dir {
            line("output_dir", dir.display().to_string());
        }
        let mut body = String::new();
        let mut kv = |key: &str, value: String| {
            writeln!(body, "{key} = {value}").expect("writing to a String");
        };
        let plan_keys = |kv: &mut dyn FnMut(&str, String), p: &PlanConfig| {
            kv("d", p.d.to_string());
            kv("sigma", num(p.sigma));
            kv("s", num(p.s));
            kv("symbol", p.symbol.to_string());
            kv("omega", num(p.omega));
            kv("theta", num(p.theta));
            kv("delta", num(p.delta));
            kv("lambda", num(p.lambda));
        };
        match &self.driver {
            DriverConfig::Simulate(c) => {
                kv("d", c.d.to_string());
                kv("n", c.n.to_string());
                kv("half_length", num(c.half_length));
                kv("symbol", c.symbol.to_string());
                kv("lambda", num(c.lambda));
                kv("sigma", num(c.sigma));
                kv("dt", num(c.dt));
                kv("final_time", num(c.final_time));
                kv("eps", num(c.eps));
                kv("snapshot_every", c.snapshot_every.to_string());
                kv("dealias", c.dealias.to_string());
                kv(
                    "initial",
                    match c.initial {
                        InitialData::Gaussian => "gaussian".into(),
                        InitialData::Random => "random".into(),
                    },
                );
                kv("amplitude", num(c.amplitude));
            }
            DriverConfig::Inflate(c) => {
                plan_keys(&mut kv, &c.plan);
                kv("h_list", list(&c.h_list));
                kv("n", c.n.to_string());
                kv("half_length", num(c.half_length));
                kv("min_steps", c.min_steps.to_string());
            }
            DriverConfig::OdeApprox(c) => {
                plan_keys(&mut kv, &c.plan);
                kv("eps_list", list(&c.eps_list));
                kv("r", c.r.to_string());
                kv("n", c.n.to_string());
                kv("half_length", num(c.half_length));
                kv("min_steps", c.min_steps.to_string());
                kv("disable_dispersion", c.disable_dispersion.to_string());
            }
            DriverConfig::Strichartz(c) => {
                let p = &c.params;
                kv("d", p.d.to_string());
                kv("p", num(p.p));
                kv("q", num(p.q));
                kv("symbol", c.symbol.to_string());
                kv("n_list", ints(&p.n_list));
                kv("k_grid", list(&p.k_grid));
                kv("t_start", num(p.interval.0));
                kv("t_end", num(p.interval.1));
                kv("n_max", p.n_max.to_string());
                kv("time_ratio", num(p.time_ratio));
                kv("contrast", p.contrast.to_string());
            }
            DriverConfig::Singular(c) => {
                kv("sigma", num(c.sigma));
                kv("t", num(c.t));
                kv("rho_list", list(&c.rho_list));
                kv("lambda", num(c.lambda));
                kv("amplitude", num(c.delta_amp));
                kv("rel_tol", num(c.rel_tol));
            }
        }
        format!("[run]\n{out}\n[{}]\n{body}", self.kind().name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INFLATE: &str = "\
# bounded acceptance run
[inflate]
d = 1
sigma = 2
s = 0.25
symbol = arctan_step(h=1)
h_list = exp(-2), exp(-3), exp(-4)
";

    #[test]
    fn parses_inflate_with_defaults() {
        let cfg = RunConfig::parse(INFLATE, ExperimentKind::Inflate).unwrap();
        let DriverConfig::Inflate(c) = &cfg.driver else { panic!() };
        assert_eq!(c.plan.theta, 0.05);
        assert_eq!(c.plan.delta, 0.1);
        assert_eq!(c.plan.omega, 1.0);
        assert_eq!(c.h_list[0], (-2f64).exp());
        assert_eq!(cfg.seed, 0);
    }

    #[test]
    fn round_trip() {
        let cfg = RunConfig::parse(INFLATE, ExperimentKind::Inflate).unwrap();
        let text = cfg.to_config_string();
        let again = RunConfig::parse(&text, ExperimentKind::Inflate).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(text, again.to_config_string());
    }

    #[test]
    fn empty_section_lists_required_keys() {
        let err = RunConfig::parse("[inflate]\n", ExperimentKind::Inflate).unwrap_err().to_string();
        for key in ["d", "sigma", "s", "symbol", "h_list"] {
            assert!(err.contains(key), "{err}");
        }
    }

    #[test]
    fn bounded_regularity_cap() {
        let text = "[inflate]\nd = 1\nsigma = 2\ns = 0.6\nsymbol = arctan_step(h=1)\nh_list = 0.1, 0.05\n";
        let err = RunConfig::parse(text, ExperimentKind::Inflate).unwrap_err().to_string();
        assert!(err.contains("s < d/2"), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = RunConfig::parse("[inflate\n", ExperimentKind::Inflate).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = RunConfig::parse("seed = 1\n\nnonsense\n", ExperimentKind::Inflate).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = RunConfig::parse("[inflate]\nd = x\n", ExperimentKind::Inflate).unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("`d`"), "{err}");
    }

    #[test]
    fn unknown_keys_and_sections() {
        let err = RunConfig::parse(&format!("{INFLATE}colour = 3\n"), ExperimentKind::Inflate).unwrap_err();
        assert!(err.to_string().contains("colour"));
        let err = RunConfig::parse(INFLATE, ExperimentKind::Singular).unwrap_err();
        assert!(err.to_string().contains("[inflate]"));
    }

    #[test]
    fn exp_literal() {
        assert_eq!(parse_number("exp(-1)").unwrap(), (-1f64).exp());
        assert_eq!(parse_number(" 2.5e-3 ").unwrap(), 2.5e-3);
        assert!(parse_number("exp(x)").is_err());
        assert!(parse_number("nan").is_err());
    }
}
