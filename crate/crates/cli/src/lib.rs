//! The `tropzeta` command line: argument parsing, configuration and output.
//!
//! Options resolve as flag, then `TROPZETA_*` environment variable, then a
//! `key = value` config file (`--config`, `TROPZETA_CONFIG`, or `./tropzeta.toml`),
//! then the built-in default.

pub mod json;
pub mod svg;
pub mod verify;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use tropzeta_core::corner_cutting::{caustic, enumerate_cuts_with, CutTree};
use tropzeta_core::domain_model::{ConvexDomain, DomainSpec};
use tropzeta_core::equiaffine::{chart_length, domain_length, LengthMethod};
use tropzeta_core::farey_hata::{endpoint_model, farey_zeta, sigma_b, WeightSpec};
use tropzeta_core::lattice_arith::arithmetic_functions;
use tropzeta_core::minimal_model::compute_minimal_model;
use tropzeta_core::scalar::{format_rational, parse_rational};
use tropzeta_core::special_models::{
    construct_d_alpha, double_series_residue, mordell_tornheim_at_two, residue_per_equiaffine_length, witten_residue_two_thirds, witten_su3,
    zeta_l, zeta_l_residue_two_thirds, zeta_l_residue_zero, WITTEN_AT_ZERO,
};
use tropzeta_core::zeta_engine::{
    is_integer_point, polygon_residue, residue_two_thirds, residue_two_thirds_tree, zeta_identity_exact, zeta_via_identity, zeta_via_identity_tree,
    zeta_via_mellin, zeta_via_mellin_tree,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tropzeta_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical_regime() => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) if e.is_numerical_regime() => "numerical_regime",
            CliError::Core(_) => "domain",
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
        }
    }

    /// `{"error":"domain","reason":"..."}` on one line.
    pub fn machine_line(&self) -> String {
        json!({"error": self.kind(), "reason": self.to_string()}).to_string()
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "tropzeta", version, about = "Tropical zeta functions of convex planar domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Aligned human-readable tables instead of JSON.
    #[arg(long, global = true, env = "TROPZETA_PRETTY")]
    pub pretty: bool,
    /// Worker threads for cut enumeration.
    #[arg(long, global = true, env = "TROPZETA_THREADS")]
    pub threads: Option<usize>,
    /// Config file of `key = value` lines.
    #[arg(long, global = true, env = "TROPZETA_CONFIG")]
    pub config: Option<PathBuf>,
}

/// A domain JSON file, or a builtin tag (`domain_L`, `L`, `disk`, `parabolic_triangle`) when no such file exists.
#[derive(Debug, Clone, Args)]
pub struct DomainArg {
    pub domain: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Identity,
    Mellin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Parabola,
    #[value(name = "L")]
    L,
    DAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal model Ω̂ with m, l, k and its type tag.
    MinimalModel {
        #[command(flatten)]
        domain: DomainArg,
    },
    /// Corner-cut tree down to size ε.
    Cuts {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long, env = "TROPZETA_EPS")]
        eps: Option<f64>,
        /// Write (a,b,c,d,size,depth,chart) rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Wave front Ω_t.
    Wavefront {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        t: f64,
        /// Cut threshold for smooth domains (default t/2).
        #[arg(long, env = "TROPZETA_EPS")]
        eps: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Tropical caustic, the corner locus of ρ_Ω.
    Caustic {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long, env = "TROPZETA_EPS")]
        eps: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Z_Ω(s).
    Zeta {
        #[command(flatten)]
        domain: DomainArg,
        /// `a`, `a+bi` or `a-bi`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, env = "TROPZETA_EPS")]
        eps: Option<f64>,
        #[arg(long, value_enum)]
        route: Option<Route>,
    },
    /// Residue of Z_Ω at 2/3, 1 or 0.
    Residue {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        at: String,
        #[arg(long = "eps-min", alias = "eps", env = "TROPZETA_EPS")]
        eps_min: Option<f64>,
    },
    /// Equiaffine length of ∂Ω.
    Equiaffine {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long, default_value = "graph")]
        method: String,
        #[arg(long, env = "TROPZETA_EPS")]
        eps: Option<f64>,
    },
    /// Farey zeta function Z_f(s) and its endpoint model.
    Farey {
        /// `quadratic`, `cubic`, or a weight JSON file.
        #[arg(long, default_value = "quadratic")]
        weight: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, env = "TROPZETA_BOUND")]
        bound: Option<u64>,
    },
    /// Σ_b(s) against its main term.
    SigmaB {
        #[arg(long)]
        b: u64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "quadratic")]
        weight: String,
    },
    /// Constants and series of the special models.
    Model {
        #[arg(value_enum)]
        name: ModelName,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        /// Cutoff X of the double series (terms with pq(p+q) ≤ X).
        #[arg(long, default_value_t = 1e6)]
        cutoff: f64,
    },
    /// Acceptance suite.
    Verify {
        /// `quick` and `full` run the same fifteen criteria; each fits its time budget at the stated protocol.
        #[arg(long, value_enum, default_value = "quick")]
        suite: Suite,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// Command output before rendering.
pub struct Output {
    pub value: Value,
    pub digits: usize,
    /// Exit code when the command itself succeeded (nonzero for a failed `verify`).
    pub code: i32,
    /// Preformatted human form, if the command has one.
    pub human: Option<String>,
}

impl Output {
    fn json(value: Value) -> Self {
        Self { value, digits: 17, code: 0, human: None }
    }
}

/// `key = value` settings read from a config file.
#[derive(Debug, Default)]
pub struct Config(BTreeMap<String, toml::Value>);

const CONFIG_KEYS: [&str; 5] = ["eps", "threads", "pretty", "route", "bound"];

impl Config {
    pub fn load(explicit: Option<&Path>) -> CliResult<Self> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let p = PathBuf::from("tropzeta.toml");
                if !p.exists() {
                    return Ok(Self::default());
                }
                p
            }
        };
        let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Parse(format!("config: {}", e.message())))?;
        if let Some(k) = table.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(CliError::Parse(format!("config: unknown key {k:?}")));
        }
        Ok(Self(table.into_iter().collect()))
    }

    fn f64(&self, key: &str) -> CliResult<Option<f64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(x)) => Ok(Some(*x)),
            Some(toml::Value::Integer(x)) => Ok(Some(*x as f64)),
            Some(v) => Err(CliError::Parse(format!("config: {key} must be a number, got {v}"))),
        }
    }

    fn u64(&self, key: &str) -> CliResult<Option<u64>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(x)) if *x >= 0 => Ok(Some(*x as u64)),
            Some(v) => Err(CliError::Parse(format!("config: {key} must be a nonnegative integer, got {v}"))),
        }
    }

    fn bool(&self, key: &str) -> CliResult<Option<bool>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::Boolean(b)) => Ok(Some(*b)),
            Some(v) => Err(CliError::Parse(format!("config: {key} must be a boolean, got {v}"))),
        }
    }

    fn string(&self, key: &str) -> CliResult<Option<String>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(CliError::Parse(format!("config: {key} must be a string, got {v}"))),
        }
    }
}

/// `"3"`, `"3+0i"`, `"0.5-14.1i"`.
pub fn parse_complex(text: &str) -> CliResult<Complex64> {
    Complex64::from_str(text.trim()).map_err(|_| CliError::Parse(format!("bad complex number {text:?}")))
}

pub fn load_domain(arg: &str) -> CliResult<ConvexDomain> {
    let path = Path::new(arg);
    let spec: DomainSpec = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: arg.to_string(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{arg}: {e}")))?
    } else {
        match arg {
            "domain_L" | "L" | "disk" | "parabolic_triangle" => {
                DomainSpec::Builtin { tag: arg.to_string(), radius: None, alpha: None, n_max: None, p: None, q: None }
            }
            _ => return Err(CliError::Usage(format!("{arg}: no such file or builtin domain"))),
        }
    };
    Ok(spec.build()?)
}

fn load_weight(arg: &str) -> CliResult<WeightSpec> {
    match arg {
        "quadratic" | "cubic" => Ok(WeightSpec::Builtin(arg.to_string())),
        path => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
            serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
        }
    }
}

struct Ctx {
    threads: usize,
    config: Config,
}

impl Ctx {
    fn eps(&self, flag: Option<f64>, default: f64) -> CliResult<f64> {
        Ok(flag.or(self.config.f64("eps")?).unwrap_or(default))
    }

    fn tree(&self, domain: &ConvexDomain, eps: f64) -> CliResult<CutTree> {
        let mm = compute_minimal_model(domain)?;
        Ok(enumerate_cuts_with(domain, mm, eps, self.threads)?)
    }
}

fn points(v: &[[f64; 2]]) -> Value {
    json::value(&v)
}

/// Boundary outline used in drawings: the domain polygon, or the frame with every materialized cut.
fn outline(domain: &ConvexDomain, tree: Option<&CutTree>) -> CliResult<Vec<[f64; 2]>> {
    Ok(match (domain, tree) {
        (ConvexDomain::Polygon(p), _) => p.vertices_f64(),
        (ConvexDomain::Smooth(_), Some(t)) => t.partial_cut_polygon(t.threshold)?.vertices(),
        (ConvexDomain::Smooth(s), None) => s.hat.vertices(),
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn minimal_model(domain: &ConvexDomain) -> CliResult<Output> {
    let mm = compute_minimal_model(domain)?;
    let polygon = match &mm.polygon {
        Some(p) => json::value(&p.vertices().iter().map(|[x, y]| [format_rational(x), format_rational(y)]).collect::<Vec<_>>()),
        None => points(&mm.hat.vertices()),
    };
    let exact = match (&mm.m_exact, &mm.l_exact, &mm.k_exact) {
        (Some(m), Some(l), Some(k)) => json!({"m": format_rational(m), "l": format_rational(l), "k": format_rational(k)}),
        _ => Value::Null,
    };
    Ok(Output::json(json!({
        "polygon": polygon,
        "m": mm.m,
        "l": mm.l,
        "k": mm.k,
        "exact": exact,
        "locus": points(&mm.locus),
        "type_tag": json::value(&mm.type_tag),
        "segment_params": json::value(&mm.segment_params),
        "support_directions": mm.support_directions.iter().map(|u| [u.x, u.y]).collect::<Vec<_>>(),
    })))
}

fn cuts(ctx: &Ctx, domain: &ConvexDomain, eps: f64, csv_path: Option<&Path>) -> CliResult<Output> {
    let tree = ctx.tree(domain, eps)?;
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let io = |e: csv::Error| CliError::Parse(format!("{}: {e}", path.display()));
        w.write_record(["a", "b", "c", "d", "size", "depth", "chart"]).map_err(io)?;
        for n in &tree.nodes {
            let q = n.quad;
            let row = [q.a.to_string(), q.b.to_string(), q.c.to_string(), q.d.to_string(), format!("{:.16e}", n.size), n.depth.to_string(), n.chart.to_string()];
            w.write_record(&row).map_err(io)?;
        }
        w.flush().map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    let sizes = tree.sizes();
    Ok(Output::json(json!({
        "threshold": tree.threshold,
        "count": sizes.len(),
        "frontier": tree.frontier.len(),
        "k_squared_start": tree.k_squared_start,
        "removed_area": sizes.iter().map(|s| s * s / 2.0).sum::<f64>(),
        "largest": sizes.iter().take(10).collect::<Vec<_>>(),
        "charts": tree.charts.len(),
    })))
}

fn wavefront(ctx: &Ctx, domain: &ConvexDomain, t: f64, eps: Option<f64>, svg_path: Option<&Path>) -> CliResult<Output> {
    let eps = ctx.eps(eps, t / 2.0)?.min(t);
    let tree = ctx.tree(domain, eps)?;
    let front = tree.wave_front(t)?;
    if let Some(path) = svg_path {
        let boundary = outline(domain, Some(&tree))?;
        let mut canvas = svg::Canvas::new(&boundary);
        canvas.polygon(&boundary, "#c0392b", false);
        canvas.polygon(&front.vertices, "#2c3e9f", false);
        write_file(path, &canvas.finish())?;
    }
    Ok(Output::json(json::value(&front)))
}

fn caustic_cmd(domain: &ConvexDomain, eps: f64, svg_path: Option<&Path>) -> CliResult<Output> {
    let k = caustic(domain, eps)?;
    if let Some(path) = svg_path {
        let boundary = outline(domain, None)?;
        let mut canvas = svg::Canvas::new(&boundary);
        canvas.polygon(&boundary, "#c0392b", true);
        for e in &k.edges {
            canvas.segment(e.from, e.to, 1.0 + e.weight as f64, "#000000");
        }
        write_file(path, &canvas.finish())?;
    }
    Ok(Output::json(json!({"edges": json::value(&k.edges), "total_weighted_length": k.total_weighted_length()})))
}

fn zeta(ctx: &Ctx, domain: &ConvexDomain, s: Complex64, eps: f64, route: Route) -> CliResult<Output> {
    let est = match (domain, route) {
        (ConvexDomain::Polygon(_), Route::Identity) => zeta_via_identity(domain, s, eps)?,
        (ConvexDomain::Polygon(_), Route::Mellin) => zeta_via_mellin(domain, s, eps)?,
        (ConvexDomain::Smooth(_), Route::Identity) => zeta_via_identity_tree(&ctx.tree(domain, eps)?, s)?,
        (ConvexDomain::Smooth(_), Route::Mellin) => {
            if s.re <= 2.0 {
                return Err(tropzeta_core::Error::MellinDivergent.into());
            }
            zeta_via_mellin_tree(&ctx.tree(domain, eps)?, s)?
        }
    };
    let mut v = json::value(&est);
    v["route"] = json!(if route == Route::Identity { "identity" } else { "mellin" });
    if let (Some(p), Some(n)) = (domain.as_polygon(), is_integer_point(s)) {
        if n >= 2 {
            v["exact"] = json!(format_rational(&zeta_identity_exact(p, n)?));
        }
    }
    Ok(Output::json(v))
}

fn residue(ctx: &Ctx, domain: &ConvexDomain, at: &str, eps_min: f64) -> CliResult<Output> {
    let loc = parse_rational(at).ok_or_else(|| CliError::Parse(format!("bad residue location {at:?}")))?;
    let est = match format_rational(&loc).as_str() {
        "2/3" => match domain {
            ConvexDomain::Polygon(_) => residue_two_thirds(domain, eps_min)?,
            ConvexDomain::Smooth(_) => residue_two_thirds_tree(&ctx.tree(domain, eps_min)?)?,
        },
        n @ ("1" | "0") => {
            let p = domain.as_polygon().ok_or_else(|| CliError::Usage("residues at 1 and 0 are computed for rational polygons".into()))?;
            polygon_residue(p, n.parse().expect("0 or 1"))?
        }
        other => return Err(CliError::Usage(format!("no pole at s = {other}; use 2/3, 1 or 0"))),
    };
    Ok(Output::json(json::value(&est)))
}

fn equiaffine(domain: &ConvexDomain, method: LengthMethod, eps: f64) -> CliResult<Output> {
    let charts = match domain {
        ConvexDomain::Smooth(s) => s.charts.iter().map(|c| chart_length(c, method, eps)).collect::<tropzeta_core::Result<Vec<_>>>()?,
        ConvexDomain::Polygon(_) => vec![],
    };
    Ok(Output::json(json!({
        "method": json::value(&method),
        "eps": eps,
        "length": domain_length(domain, method, eps)?,
        "charts": charts,
    })))
}

fn farey(weight: &str, s: Complex64, bound: u64) -> CliResult<Output> {
    let w = load_weight(weight)?.build()?;
    let (lo, hi) = w.check_assumption()?;
    Ok(Output::json(json!({
        "bound": bound,
        "curvature_range": [lo, hi],
        "zeta": json::value(&farey_zeta(&w, s, bound)?),
        "endpoint": json::value(&endpoint_model(&w, s, bound)?),
    })))
}

fn sigma_b_cmd(b: u64, s: Complex64, weight: &str) -> CliResult<Output> {
    let w = load_weight(weight)?.build()?;
    let r = sigma_b(&w, s, b)?;
    Ok(Output::json(json!({
        "b": b,
        "phi": arithmetic_functions(b).phi,
        "value": json::value(&r.value),
        "main_term": json::value(&r.main_term),
        "deviation": r.deviation,
    })))
}

fn model(name: ModelName, s: Option<Complex64>, alpha: f64, n_max: u64, cutoff: f64) -> CliResult<Output> {
    let v = match name {
        ModelName::Parabola => {
            let mut v = json!({
                "double_series_residue": double_series_residue(),
                "witten_residue_two_thirds": witten_residue_two_thirds(),
                "witten_at_zero": WITTEN_AT_ZERO,
                "primitive_series_at_two": format_rational(&mordell_tornheim_at_two()),
            });
            if let Some(s) = s {
                v["witten_su3"] = json::value(&witten_su3(s, cutoff)?);
            }
            v
        }
        ModelName::L => {
            let mut v = json!({
                "area": "10/3",
                "residue_two_thirds": zeta_l_residue_two_thirds(),
                "residue_zero": zeta_l_residue_zero()?,
                "residue_one": "8",
                "equiaffine_length": 4f64.powf(4.0 / 3.0),
                "residue_per_equiaffine_length": residue_per_equiaffine_length(),
            });
            if let Some(s) = s {
                v["zeta"] = json::value(&zeta_l(s, cutoff)?);
            }
            v
        }
        ModelName::DAlpha => {
            let m = construct_d_alpha(alpha, n_max)?;
            let worst = m.sizes.iter().zip(&m.expected).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);
            let mut v = json!({
                "alpha": alpha,
                "n_max": n_max,
                "terms": m.sizes.len(),
                "largest": m.sizes.iter().take(10).collect::<Vec<_>>(),
                "max_relative_term_error": worst,
            });
            if let Some(s) = s {
                v["boundary_series"] = json::value(&m.boundary_series(s));
                v["expected_series"] = json::value(&m.expected_series(s));
            }
            v
        }
    };
    Ok(Output { digits: 15, ..Output::json(v) })
}

fn verify_cmd(only: &[u8]) -> Output {
    let ids: Vec<u8> = if only.is_empty() { verify::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let outcomes = verify::run_all(&ids);
    let all = outcomes.iter().all(|o| o.pass) && outcomes.len() == ids.len();
    let human = outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n") + "\n";
    Output {
        value: json!({"pass": all, "criteria": json::value(&outcomes)}),
        digits: 17,
        code: if all { 0 } else { 1 },
        human: Some(human),
    }
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    let config = Config::load(cli.config.as_deref())?;
    let threads = match cli.threads.or(config.u64("threads")?.map(|t| t as usize)) {
        Some(t) => t.max(1),
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let ctx = Ctx { threads, config };
    match &cli.command {
        Command::MinimalModel { domain } => minimal_model(&load_domain(&domain.domain)?),
        Command::Cuts { domain, eps, csv } => cuts(&ctx, &load_domain(&domain.domain)?, ctx.eps(*eps, 1e-4)?, csv.as_deref()),
        Command::Wavefront { domain, t, eps, svg } => wavefront(&ctx, &load_domain(&domain.domain)?, *t, *eps, svg.as_deref()),
        Command::Caustic { domain, eps, svg } => caustic_cmd(&load_domain(&domain.domain)?, ctx.eps(*eps, 1e-3)?, svg.as_deref()),
        Command::Zeta { domain, s, eps, route } => {
            let route = match route {
                Some(r) => *r,
                None => match ctx.config.string("route")? {
                    Some(r) => Route::from_str(&r, true).map_err(|_| CliError::Parse(format!("config: bad route {r:?}")))?,
                    None => Route::Identity,
                },
            };
            zeta(&ctx, &load_domain(&domain.domain)?, parse_complex(s)?, ctx.eps(*eps, 1e-6)?, route)
        }
        Command::Residue { domain, at, eps_min } => residue(&ctx, &load_domain(&domain.domain)?, at, ctx.eps(*eps_min, 1e-7)?),
        Command::Equiaffine { domain, method, eps } => {
            equiaffine(&load_domain(&domain.domain)?, LengthMethod::from_str(method)?, ctx.eps(*eps, 1e-5)?)
        }
        Command::Farey { weight, s, bound } => {
            let bound = bound.or(ctx.config.u64("bound")?).unwrap_or(1000);
            farey(weight, parse_complex(s)?, bound)
        }
        Command::SigmaB { b, s, weight } => sigma_b_cmd(*b, parse_complex(s)?, weight),
        Command::Model { name, s, alpha, n_max, cutoff } => model(*name, s.as_deref().map(parse_complex).transpose()?, *alpha, *n_max, *cutoff),
        Command::Verify { only, .. } => Ok(verify_cmd(only)),
    }
}

/// Parses `argv`, runs the command, prints the result and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", CliError::Usage(first.to_string()).machine_line());
            return 1;
        }
    };
    let pretty = cli.pretty || Config::load(cli.config.as_deref()).ok().and_then(|c| c.bool("pretty").ok().flatten()).unwrap_or(false);
    match execute(&cli) {
        Ok(out) => {
            if pretty {
                print!("{}", out.human.clone().unwrap_or_else(|| json::render_table(&out.value, out.digits)));
            } else {
                println!("{}", json::render(&out.value, out.digits));
            }
            out.code
        }
        Err(e) => {
            eprintln!("{}", e.machine_line());
            e.exit_code()
        }
    }
}
