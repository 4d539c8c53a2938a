//! `symprod` — membership tests, induced maps, fiber recovery and
//! experiment probes for symmetric products of planar domains.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use symprod_cli::{
    config::load_config, lipschitz_cone_batch, lipschitz_cone_probe, smoothness_loss_probe,
    sweep_report, CliError, LipschitzConfig, ProbeReport, Result, SmoothnessConfig, SweepConfig,
};
use symprod_core::{
    gamma_inverse, sigma_phi_direct, sigma_phi_integral, symprod_contains, DomainSpec, GammaDisc,
    HoloMap, SymPoint,
};

#[derive(Parser)]
#[command(
    name = "symprod",
    about = "Numerics for n-fold symmetric products of planar domains",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point of coefficient space against a symmetric product.
    Contains(ContainsArgs),
    /// Evaluate the induced map of a one-variable holomorphic function.
    Map(MapArgs),
    /// Recover the fiber over a point from disc contour integrals.
    Gamma(GammaArgs),
    /// Run an experiment probe and emit a reproducible report.
    #[command(subcommand)]
    Probe(ProbeCommand),
}

#[derive(Args)]
struct ContainsArgs {
    /// Domain JSON file; the unit disc when omitted.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Margin half-width for the boundary band.
    #[arg(long, default_value_t = 0.0)]
    margin: f64,
    /// Coefficients as 2n reals: re1 im1 re2 im2 ...
    #[arg(long, num_args = 2.., allow_negative_numbers = true, required = true)]
    s: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteChoice {
    Direct,
    Integral,
    Both,
}

#[derive(Args)]
struct MapArgs {
    /// Map descriptor JSON file.
    #[arg(long)]
    phi: PathBuf,
    #[arg(long, value_enum, default_value_t = RouteChoice::Direct)]
    route: RouteChoice,
    /// Domain JSON file (for the integral route); the unit disc when omitted.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Quadrature nodes per boundary curve for the integral route.
    #[arg(long, default_value_t = 2048)]
    nodes: usize,
    #[arg(long, num_args = 2.., allow_negative_numbers = true, required = true)]
    s: Vec<f64>,
}

#[derive(Args)]
struct GammaArgs {
    /// Domain JSON file; the unit disc when omitted.
    #[arg(long)]
    domain: Option<PathBuf>,
    /// Discs as "re,im,radius,multiplicity", repeatable.
    #[arg(long = "disc", required = true, allow_hyphen_values = true)]
    discs: Vec<String>,
    #[arg(long, default_value_t = 512)]
    nodes: usize,
    #[arg(long, num_args = 2.., allow_negative_numbers = true, required = true)]
    s: Vec<f64>,
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Cone obstruction along segments through the boundary point (2, 1).
    Lipschitz(ProbeArgs),
    /// Smoothness-loss exponent of the Cauchy-type operator on the diagonal.
    Smoothness(ProbeArgs),
    /// Batch sweeps over sampled invariants.
    Sweep(ProbeArgs),
}

#[derive(Args)]
struct ProbeArgs {
    /// Probe config JSON file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed recorded in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here (also printed to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-sample CSV here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Contains(args) => contains(args),
        Command::Map(args) => map(args),
        Command::Gamma(args) => gamma(args),
        Command::Probe(p) => probe(p),
    }
}

fn parse_sym_point(reals: &[f64]) -> Result<SymPoint> {
    if reals.len() % 2 != 0 {
        return Err(CliError::Config(format!(
            "--s needs an even number of reals (re/im pairs), got {}",
            reals.len()
        )));
    }
    SymPoint::new(
        reals
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect(),
    )
    .map_err(CliError::Core)
}

fn load_domain(path: &Option<PathBuf>) -> Result<DomainSpec> {
    match path {
        Some(p) => DomainSpec::from_json_file(p).map_err(CliError::Core),
        None => Ok(DomainSpec::unit_disc()),
    }
}

fn emit(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value).map_err(|e| CliError::Report(e.to_string()))?);
    Ok(())
}

fn contains(args: ContainsArgs) -> Result<()> {
    let domain = load_domain(&args.domain)?;
    let s = parse_sym_point(&args.s)?;
    let point = symprod_contains(&domain, &s, args.margin)?;
    emit(&json!({
        "s": s,
        "margin": args.margin,
        "classification": point.classification,
        "stratum": point.stratum,
        "clusters": point.roots.clusters(),
        "roots": point.roots.roots(),
    }))
}

fn map(args: MapArgs) -> Result<()> {
    let domain = load_domain(&args.domain)?;
    let phi: HoloMap = load_config(&args.phi)?;
    let s = parse_sym_point(&args.s)?;
    match args.route {
        RouteChoice::Direct => {
            let out = sigma_phi_direct(&phi, &s)?;
            emit(&json!({ "direct": out }))
        }
        RouteChoice::Integral => {
            let out = sigma_phi_integral(&phi, &s, &domain, args.nodes)?;
            emit(&json!({ "integral": out }))
        }
        RouteChoice::Both => {
            let direct = sigma_phi_direct(&phi, &s)?;
            let integral = sigma_phi_integral(&phi, &s, &domain, args.nodes)?;
            let difference = direct.value.max_dist(&integral.value);
            emit(&json!({
                "direct": direct,
                "integral": integral,
                "max_difference": difference,
            }))
        }
    }
}

fn parse_disc(text: &str) -> Result<GammaDisc> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Config(format!(
            "disc must be re,im,radius,multiplicity; got `{text}`"
        )));
    }
    let parse = |i: usize, what: &str| -> Result<f64> {
        parts[i]
            .trim()
            .parse::<f64>()
            .map_err(|e| CliError::Config(format!("disc {what} `{}`: {e}", parts[i])))
    };
    let multiplicity = parts[3]
        .trim()
        .parse::<usize>()
        .map_err(|e| CliError::Config(format!("disc multiplicity `{}`: {e}", parts[3])))?;
    Ok(GammaDisc {
        center: Complex64::new(parse(0, "center re")?, parse(1, "center im")?),
        radius: parse(2, "radius")?,
        multiplicity,
    })
}

fn gamma(args: GammaArgs) -> Result<()> {
    let domain = load_domain(&args.domain)?;
    let s = parse_sym_point(&args.s)?;
    let discs: Vec<GammaDisc> = args
        .discs
        .iter()
        .map(|d| parse_disc(d))
        .collect::<Result<_>>()?;
    let recovered = gamma_inverse(&s, &discs, &domain, args.nodes)?;
    let back = symprod_core::elem_sym(recovered.roots()).map_err(CliError::Core)?;
    emit(&json!({
        "clusters": recovered.clusters(),
        "roots": recovered.roots(),
        "symmetrization_residual": back.max_dist(&s),
    }))
}

fn probe(command: ProbeCommand) -> Result<()> {
    let (args, report) = match command {
        ProbeCommand::Lipschitz(args) => {
            let config: LipschitzConfig = load_config(&args.config)?;
            let seed = args.seed.unwrap_or(config.seed);
            let report = if config.random.is_some() {
                lipschitz_cone_batch(&config, seed)?
            } else {
                let (a, b) = match (config.a, config.b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(CliError::Config(
                            "lipschitz config needs either `a` and `b` or a `random` section".into(),
                        ))
                    }
                };
                lipschitz_cone_probe(a, b, &config.t_values, seed)?
            };
            (args, report)
        }
        ProbeCommand::Smoothness(args) => {
            let config: SmoothnessConfig = load_config(&args.config)?;
            let seed = args.seed.unwrap_or(config.seed);
            (args, smoothness_loss_probe(&config, seed)?)
        }
        ProbeCommand::Sweep(args) => {
            let mut config: SweepConfig = load_config(&args.config)?;
            if let Some(seed) = args.seed {
                config.seed = seed;
            }
            (args, sweep_report(&config)?)
        }
    };
    write_report(&args, &report)
}

fn write_report(args: &ProbeArgs, report: &ProbeReport) -> Result<()> {
    let text = report.to_json_string()?;
    println!("{text}");
    if let Some(path) = &args.out {
        std::fs::write(path, &text)?;
    }
    if let Some(path) = &args.csv {
        std::fs::write(path, report.to_csv_string())?;
    }
    Ok(())
}
