//! The `epd` command-line front end.
//!
//! Every command builds a [`Table`]. `compute` and `verify` print it as
//! aligned text; `sweep` and `scan-kak` stream CSV or JSON. With `--out` the
//! table goes to a file and a `<out>.manifest.json` sidecar records the seed,
//! parameters and command line that produced it.

mod numbers;
mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::engine::{
    exact_cycle, exact_dense, exact_gram, EpEpdResult, Method, CYCLE_MAX_DIM, DENSE_MAX_DIM, GRAM_MAX_DIM,
};
use crate::error::{Error, Result};
use crate::gates::{build, closed_form_ep_epd, scan_kak, GateFamily, GateSpec};
use crate::mc::{estimate_ep_epd, SamplerConfig};
use crate::tensor::{read_matrix_json, ComplexMatrix};
use crate::verify::{self, VerifyOptions};

pub use numbers::{grid_values, parse_grid, parse_number, GridSpec};
pub use output::{fmt12, Cell, ManifestCore, RunManifest, Table};

/// Largest EP over two-qubit gates.
const MAX_TWO_QUBIT_EP: f64 = 2.0 / 9.0;
/// Bound slack for the landscape scan.
const SCAN_SLACK: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "epd", version, about = "Entangling power and its fluctuations for bipartite unitaries")]
pub struct Cli {
    /// Monte Carlo seed.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    /// Write the table here and a manifest next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Dense,
    Cycle,
    Gram,
    Mc,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// EP, EPD and η for one gate.
    Compute(ComputeArgs),
    /// Closed form and engine values over a 1- or 2-parameter grid.
    Sweep(SweepArgs),
    /// Closed-form landscape over the canonical cube [0, π/4]³.
    ScanKak(ScanArgs),
    /// Run the acceptance criteria.
    Verify(VerifyArgs),
}

/// Named gate parameters. Angles accept `pi` expressions such as `pi/8`.
#[derive(Debug, Args, Default)]
struct GateParams {
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    phi: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    b1: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    b2: Option<f64>,
    #[arg(long, value_parser = number_arg, allow_hyphen_values = true)]
    b3: Option<f64>,
    /// Local dimension for `swap` and `gcx`.
    #[arg(long)]
    d: Option<usize>,
}

impl GateParams {
    fn to_map(&self) -> BTreeMap<String, f64> {
        let named = [
            ("theta", self.theta),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("delta", self.delta),
            ("phi", self.phi),
            ("b1", self.b1),
            ("b2", self.b2),
            ("b3", self.b3),
            ("d", self.d.map(|d| d as f64)),
        ];
        named
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
            .collect()
    }
}

fn number_arg(s: &str) -> std::result::Result<f64, String> {
    parse_number(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Catalog family: cnot, cp, cu, swap_alpha, iswap, kak, swap, gcx, f4.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    gate: Option<String>,
    /// JSON matrix file with `dims`, `re` and `im`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    params: GateParams,
}

#[derive(Debug, Args)]
struct SweepArgs {
    family: String,
    /// `name=start:stop:step`, stop inclusive. Give one or two.
    #[arg(long = "grid", required = true, num_args = 1)]
    grids: Vec<String>,
    #[command(flatten)]
    params: GateParams,
}

#[derive(Debug, Args)]
struct ScanArgs {
    /// Points per axis.
    #[arg(long, default_value_t = 21)]
    resolution: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
    level: LevelArg,
    #[arg(long, hide = true)]
    flip_projector_sign: bool,
}

/// What a command produced.
struct Outcome {
    table: Table,
    parameters: Value,
    /// Lines for the terminal when the table goes to a file.
    summary: Vec<String>,
    /// Print the table as aligned text instead of CSV/JSON on stdout.
    text: bool,
    /// An acceptance condition failed.
    failed: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 on invalid input, 2 when
/// an acceptance check fails.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let echo: Vec<String> = std::iter::once("epd".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect();
    match run(&cli, echo) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Runs a parsed command. `Ok(false)` means an acceptance check failed.
pub fn run(cli: &Cli, echo: Vec<String>) -> Result<bool> {
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Compute(a) => compute(cli, a)?,
        Command::Sweep(a) => sweep(cli, a)?,
        Command::ScanKak(a) => scan(a)?,
        Command::Verify(a) => verify_cmd(cli, a)?,
    };
    let core = ManifestCore {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: echo,
        seed: cli.seed,
        samples: cli.samples,
        method: format!("{:?}", cli.method).to_lowercase(),
        format: format!("{:?}", cli.format).to_lowercase(),
        parameters: outcome.parameters,
    };
    let manifest = RunManifest::new(core, start.elapsed().as_secs_f64());
    let rendered = match cli.format {
        Format::Csv => outcome.table.to_csv(&manifest.sha256)?,
        Format::Json => outcome.table.to_json(&manifest)?,
    };
    let mut stdout = std::io::stdout().lock();
    if let Some(path) = &cli.out {
        fs::write(path, &rendered)?;
        output::write_manifest(path, &manifest)?;
    }
    if outcome.text {
        write!(stdout, "{}", outcome.table.to_text())?;
    } else if cli.out.is_none() {
        write!(stdout, "{rendered}")?;
    }
    if outcome.text || cli.out.is_some() {
        for line in &outcome.summary {
            writeln!(stdout, "{line}")?;
        }
    }
    if let Some(path) = &cli.out {
        writeln!(stdout, "wrote {} ({} rows)", path.display(), outcome.table.rows.len())?;
    }
    Ok(!outcome.failed)
}

fn family_arg(name: &str) -> Result<GateFamily> {
    name.parse()
}

fn mc_config(cli: &Cli, dims: (usize, usize)) -> SamplerConfig {
    SamplerConfig {
        seed: cli.seed,
        samples: cli.samples,
        dims,
    }
}

fn engine(method: MethodArg, u: &ComplexMatrix, dims: (usize, usize), cfg: &SamplerConfig) -> Result<EpEpdResult> {
    let (d1, d2) = dims;
    match method {
        MethodArg::Dense => exact_dense(u, d1, d2),
        MethodArg::Cycle => exact_cycle(u, d1, d2),
        MethodArg::Gram => exact_gram(u, d1, d2),
        MethodArg::Mc => Ok(estimate_ep_epd(u, cfg)?.to_result()),
        MethodArg::Closed | MethodArg::All => unreachable!("not an engine route"),
    }
}

fn compute(cli: &Cli, args: &ComputeArgs) -> Result<Outcome> {
    let (spec, u, dims, mut parameters) = match (&args.gate, &args.file) {
        (Some(name), _) => {
            let spec = GateSpec::from_params(family_arg(name)?, &args.params.to_map())?;
            let u = build(&spec)?;
            (Some(spec), u, spec.dims(), json!({ "gate": spec }))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let (u, layout) = read_matrix_json(&text)?;
            let &[d1, d2] = layout.dims() else {
                return Err(Error::Format(format!(
                    "dims {:?} must name exactly two subsystems",
                    layout.dims()
                )));
            };
            let digest = hex::encode(Sha256::digest(text.as_bytes()));
            let params = json!({ "file": path.display().to_string(), "file_sha256": digest, "dims": [d1, d2] });
            (None, u, (d1, d2), params)
        }
        (None, None) => return Err(Error::Format("give a gate name or --file".into())),
    };
    let dim = dims.0 * dims.1;
    let routes: Vec<MethodArg> = match cli.method {
        MethodArg::All => {
            let mut r = Vec::new();
            if spec.is_some() {
                r.push(MethodArg::Closed);
            }
            if dim <= DENSE_MAX_DIM {
                r.push(MethodArg::Dense);
            }
            if dim <= CYCLE_MAX_DIM {
                r.push(MethodArg::Cycle);
            }
            if dim <= GRAM_MAX_DIM {
                r.push(MethodArg::Gram);
            }
            r.push(MethodArg::Mc);
            r
        }
        m => vec![m],
    };
    let cfg = mc_config(cli, dims);
    let mut results = Vec::with_capacity(routes.len());
    for route in routes {
        let r = match route {
            MethodArg::Closed => match &spec {
                Some(s) => closed_form_ep_epd(s)?,
                None => return Err(Error::Domain("a matrix file has no closed form".into())),
            },
            m => engine(m, &u, dims, &cfg)?,
        };
        results.push(r);
    }
    let reference = [Method::ExactCycle, Method::ExactGram, Method::ExactDense, Method::ClosedForm, Method::MonteCarlo]
        .into_iter()
        .find_map(|m| results.iter().find(|r| r.method == m))
        .copied()
        .expect("at least one route ran");

    let mut table = Table::new(&["method", "ep", "epd", "eta", "ep_stderr", "epd_stderr", "delta_ep", "delta_epd"]);
    for r in &results {
        table.push(vec![
            r.method.to_string().into(),
            r.ep.into(),
            r.epd.into(),
            r.eta().into(),
            r.ep_stderr.into(),
            r.epd_stderr.into(),
            (r.ep - reference.ep).into(),
            (r.epd - reference.epd).into(),
        ]);
    }
    let name = spec.map_or_else(|| "matrix".to_string(), |s| s.to_string());
    let eta = reference.eta().map_or_else(|| "undefined".to_string(), fmt12);
    let summary = vec![format!(
        "{name} (d1={}, d2={}): ep={} epd={} eta={eta} [{}]",
        dims.0,
        dims.1,
        fmt12(reference.ep),
        fmt12(reference.epd),
        reference.method
    )];
    parameters["methods"] = json!(results.iter().map(|r| r.method.to_string()).collect::<Vec<_>>());
    Ok(Outcome {
        table,
        parameters,
        summary,
        text: true,
        failed: false,
    })
}

fn sweep(cli: &Cli, args: &SweepArgs) -> Result<Outcome> {
    let family = family_arg(&args.family)?;
    if family.param_names().is_empty() {
        return Err(Error::Domain(format!("{family} has no parameter to sweep")));
    }
    if args.grids.len() > 2 {
        return Err(Error::Domain(format!("at most two grids, got {}", args.grids.len())));
    }
    let grids: Vec<GridSpec> = args.grids.iter().map(|g| parse_grid(g)).collect::<Result<_>>()?;
    let fixed = args.params.to_map();
    for g in &grids {
        if !family.param_names().contains(&g.name.as_str()) {
            return Err(Error::Domain(format!(
                "{family} has no parameter {:?}; expected {:?}",
                g.name,
                family.param_names()
            )));
        }
        if fixed.contains_key(&g.name) {
            return Err(Error::Domain(format!("{} is both fixed and swept", g.name)));
        }
    }
    if grids.len() == 2 && grids[0].name == grids[1].name {
        return Err(Error::Domain(format!("{} is swept twice", grids[0].name)));
    }

    let points: Vec<Vec<f64>> = match grids.as_slice() {
        [a] => a.values.iter().map(|&x| vec![x]).collect(),
        [a, b] => a
            .values
            .iter()
            .flat_map(|&x| b.values.iter().map(move |&y| vec![x, y]))
            .collect(),
        _ => unreachable!("one or two grids"),
    };
    let specs: Vec<GateSpec> = points
        .iter()
        .map(|p| {
            let mut m = fixed.clone();
            for (g, &v) in grids.iter().zip(p) {
                m.insert(g.name.clone(), v);
            }
            GateSpec::from_params(family, &m)
        })
        .collect::<Result<_>>()?;

    let route = match cli.method {
        MethodArg::All => Some(MethodArg::Cycle),
        MethodArg::Closed => None,
        m => Some(m),
    };
    let rows: Vec<(EpEpdResult, Option<EpEpdResult>)> = specs
        .par_iter()
        .map(|spec| {
            let closed = closed_form_ep_epd(spec)?;
            let engine_value = match route {
                Some(m) => Some(engine(m, &build(spec)?, spec.dims(), &mc_config(cli, spec.dims()))?),
                None => None,
            };
            Ok((closed, engine_value))
        })
        .collect::<Result<_>>()?;

    let mut columns: Vec<&str> = grids.iter().map(|g| g.name.as_str()).collect();
    columns.extend(["ep_closed", "epd_closed", "ep_engine", "epd_engine", "eta_closed", "eta_engine"]);
    let mut table = Table::new(&columns);
    for (p, (closed, eng)) in points.iter().zip(&rows) {
        let mut row: Vec<Cell> = p.iter().map(|&x| Cell::Num(x)).collect();
        row.extend([
            closed.ep.into(),
            closed.epd.into(),
            eng.map(|e| e.ep).into(),
            eng.map(|e| e.epd).into(),
            closed.eta().into(),
            eng.and_then(|e| e.eta()).into(),
        ]);
        table.push(row);
    }
    let parameters = json!({
        "family": family,
        "grids": args.grids,
        "fixed": fixed,
        "engine": route.map(|m| format!("{m:?}").to_lowercase()),
    });
    Ok(Outcome {
        table,
        parameters,
        summary: vec![],
        text: false,
        failed: false,
    })
}

fn scan(args: &ScanArgs) -> Result<Outcome> {
    let samples = scan_kak(args.resolution)?;
    let max_ep = samples.iter().map(|s| s.ep).fold(f64::NEG_INFINITY, f64::max);
    let max_epd = samples.iter().map(|s| s.epd).fold(f64::NEG_INFINITY, f64::max);
    let epd_bound = 1.0 / (3.0 * 5f64.sqrt());
    let mut table = Table::new(&["b1", "b2", "b3", "ep", "epd", "max_ep", "max_epd"]);
    for s in &samples {
        table.push(vec![
            s.b1.into(),
            s.b2.into(),
            s.b3.into(),
            s.ep.into(),
            s.epd.into(),
            (s.ep >= max_ep - 1e-12).into(),
            (s.epd >= max_epd - 1e-12).into(),
        ]);
    }
    let finite = samples.iter().all(|s| s.ep.is_finite() && s.epd.is_finite());
    let ep_ok = max_ep <= MAX_TWO_QUBIT_EP + SCAN_SLACK;
    let epd_ok = max_epd <= epd_bound + SCAN_SLACK;
    let mut summary = vec![
        format!("max ep  = {} (bound {})", fmt12(max_ep), fmt12(MAX_TWO_QUBIT_EP)),
        format!("max epd = {} (bound {})", fmt12(max_epd), fmt12(epd_bound)),
    ];
    let failed = !(finite && ep_ok && epd_ok);
    if failed {
        summary.push("landscape bounds violated".into());
        for line in &summary {
            eprintln!("{line}");
        }
    }
    Ok(Outcome {
        table,
        parameters: json!({ "resolution": args.resolution }),
        summary,
        text: false,
        failed,
    })
}

fn verify_cmd(cli: &Cli, args: &VerifyArgs) -> Result<Outcome> {
    let opts = VerifyOptions {
        level: match args.level {
            LevelArg::Quick => verify::Level::Quick,
            LevelArg::Full => verify::Level::Full,
        },
        seed: cli.seed,
        samples: cli.samples,
        flip_projector_sign: args.flip_projector_sign,
    };
    let reports = verify::run(&opts)?;
    let mut table = Table::new(&["criterion", "check", "expected", "computed", "delta", "tolerance", "status"]);
    let mut summary = Vec::new();
    for rep in &reports {
        for c in &rep.checks {
            table.push(vec![
                Cell::Int(rep.id as i64),
                c.label.clone().into(),
                c.expected.into(),
                c.computed.into(),
                c.delta().into(),
                c.tolerance.into(),
                (if c.passed { "pass" } else { "FAIL" }).into(),
            ]);
        }
        let status = if rep.passed() { "PASS" } else { "FAIL" };
        summary.push(format!(
            "criterion {} ({}): {status} [{} checks, {:.2} s]",
            rep.id,
            rep.title,
            rep.checks.len(),
            rep.seconds
        ));
    }
    let failed = reports.iter().any(|r| !r.passed());
    summary.push(if failed { "verify: FAIL".into() } else { "verify: PASS".into() });
    Ok(Outcome {
        table,
        parameters: json!({ "level": opts.level, "flip_projector_sign": opts.flip_projector_sign }),
        summary,
        text: true,
        failed,
    })
}
