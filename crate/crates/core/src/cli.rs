//! Command-line front end: curve tables, outage simulations, figure data
//! reproduction, and protocol comparison.
//!
//! Exit codes: 0 success, 2 configuration error, 3 budget refusal,
//! 4 I/O failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::AntennaConfig;
use crate::curve::{fmt_sig15, pp_dmt};
use crate::error::DmtError;
use crate::mc::{estimate_outage, fit_diversity, OutageSpec, Protocol};
use crate::protocols::{
    ddf_dmt, fdf_dmt, full_duplex_dmt, max_multiplexing, vdf_allocation, vdf_dmt,
};
use crate::{Rational, RationalPolyline};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Default wall-clock cap for simulations, seconds.
const DEFAULT_BUDGET_SECS: f64 = 600.0;

#[derive(Parser)]
#[command(name = "relay-dmt", version, about = "DMT curves and outage simulation for MIMO multi-hop relay channels")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate protocol tradeoff curves on an r-grid.
    Curve(CurveArgs),
    /// Monte Carlo outage simulation with diversity-slope fitting.
    Sim(SimArgs),
    /// Emit the data behind the reference figures as CSV files.
    Reproduce(ReproduceArgs),
    /// Tabulate several protocols and check their dominance ordering.
    Compare(CurveArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Antenna counts, e.g. 4,2,3
    #[arg(long)]
    config: AntennaConfig,
    /// Comma-separated protocols: full_duplex, fdf, vdf, ddf
    #[arg(long, value_delimiter = ',', required = true)]
    protocol: Vec<CurveProtocol>,
    /// Source time fraction for fdf, as a decimal or fraction (e.g. 0.3 or 3/10)
    #[arg(long)]
    a: Option<String>,
    /// r-grid start:stop:step (half-open; the degrees-of-freedom endpoint is
    /// appended), or a single value
    #[arg(long, default_value = "0:1:0.01")]
    r: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimArgs {
    /// Antenna counts, e.g. 1,1,1
    #[arg(long)]
    config: AntennaConfig,
    #[arg(long, value_enum)]
    protocol: SimProtocol,
    /// Multiplexing gain
    #[arg(long)]
    r: f64,
    /// Fixed rate in bits per channel use, overriding R = r log2 SNR
    #[arg(long)]
    rate: Option<f64>,
    /// Source time fraction for fdf
    #[arg(long)]
    a: Option<f64>,
    /// SNR grid in dB, lo:hi:step
    #[arg(long)]
    snr: String,
    /// Samples per SNR point (scientific notation accepted, e.g. 1e6)
    #[arg(long)]
    samples: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Wall-clock budget in seconds; the run is refused if the pre-run
    /// estimate exceeds it
    #[arg(long, default_value_t = DEFAULT_BUDGET_SECS)]
    max_seconds: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Which figure's data to emit
    #[arg(value_enum)]
    figure: Figure,
    /// Output directory; falls back to RELAY_DMT_OUTDIR, then the current
    /// directory
    #[arg(long)]
    outdir: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CurveProtocol {
    FullDuplex,
    Fdf,
    Vdf,
    Ddf,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SimProtocol {
    FullDuplex,
    Fdf,
    Vdf,
    Ddf,
    Cutset,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Figure {
    Fig2,
    Fig3,
    Fig4,
}

/// Runs the CLI; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Curve(args) => run_curve(args, false),
        Command::Compare(args) => run_curve(args, true),
        Command::Sim(args) => run_sim(args),
        Command::Reproduce(args) => run_reproduce(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("refused: {msg}");
            EXIT_BUDGET
        }
        Err(CliError::Io(err)) => {
            eprintln!("i/o error: {err}");
            EXIT_IO
        }
    }
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<DmtError> for CliError {
    fn from(err: DmtError) -> Self {
        CliError::Config(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

type CliResult = Result<(), CliError>;

fn run_curve(args: CurveArgs, check_ordering: bool) -> CliResult {
    let config = args.config;
    let grid = parse_r_grid(&args.r, &config)?;
    let fdf_a = match args.a.as_deref() {
        Some(text) => Some(parse_rational(text)?),
        None => None,
    };

    let mut rows: Vec<(String, f64, f64)> = Vec::new();
    let mut per_protocol: Vec<(String, Vec<f64>)> = Vec::new();
    for protocol in &args.protocol {
        let (label, values) = curve_values(*protocol, &config, fdf_a, &grid)?;
        for (&r, &d) in grid.iter().zip(&values) {
            rows.push((label.clone(), r, d));
        }
        per_protocol.push((label, values));
    }

    let text = match args.format {
        Format::Csv => curve_csv(&config, &rows),
        Format::Json => {
            let json_rows: Vec<_> = rows
                .iter()
                .map(|(p, r, d)| json!({"protocol": p, "r": r, "d": d}))
                .collect();
            let mut doc = json!({"config": config, "rows": json_rows});
            let mut curves = serde_json::Map::new();
            for protocol in &args.protocol {
                if let Some(curve) = exact_curve(*protocol, &config, fdf_a)? {
                    let label = protocol_label(*protocol, fdf_a);
                    curves.insert(label, serde_json::to_value(&curve).expect("serializable"));
                }
            }
            if !curves.is_empty() {
                doc["curves"] = serde_json::Value::Object(curves);
            }
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    write_output(args.output.as_deref(), &text)?;

    if check_ordering {
        let ranked: Vec<&(String, Vec<f64>)> = {
            let order = ["fdf", "vdf", "ddf", "full_duplex"];
            let mut v: Vec<&(String, Vec<f64>)> = per_protocol.iter().collect();
            v.sort_by_key(|(label, _)| {
                order.iter().position(|o| label.starts_with(o)).unwrap_or(order.len())
            });
            v
        };
        let mut ok = true;
        for pair in ranked.windows(2) {
            let (lo_label, lo) = pair[0];
            let (hi_label, hi) = pair[1];
            for ((&r, &a), &b) in grid.iter().zip(lo).zip(hi) {
                if a > b + 1e-9 {
                    ok = false;
                    eprintln!("ordering violated at r = {r}: {lo_label} = {a} > {hi_label} = {b}");
                }
            }
        }
        println!("ordering fdf <= vdf <= ddf <= full_duplex holds: {ok}");
        if !ok {
            return Err(CliError::Config("protocol ordering violated".into()));
        }
    }
    Ok(())
}

fn curve_values(
    protocol: CurveProtocol,
    config: &AntennaConfig,
    fdf_a: Option<Rational>,
    grid: &[f64],
) -> Result<(String, Vec<f64>), CliError> {
    let label = protocol_label(protocol, fdf_a);
    let values = match protocol {
        CurveProtocol::FullDuplex => {
            let curve = full_duplex_dmt(config).to_f64();
            grid.iter().map(|r| curve.eval(r)).collect::<Result<_, _>>()?
        }
        CurveProtocol::Fdf => {
            let a = fdf_a
                .ok_or_else(|| CliError::Config("fdf requires --a".into()))?;
            let curve = fdf_dmt(config, a)?.to_f64();
            grid.iter().map(|r| curve.eval(r)).collect::<Result<_, _>>()?
        }
        CurveProtocol::Vdf => grid
            .iter()
            .map(|&r| vdf_dmt(config, r))
            .collect::<Result<_, _>>()?,
        CurveProtocol::Ddf => grid
            .iter()
            .map(|&r| ddf_dmt(config, r))
            .collect::<Result<_, _>>()?,
    };
    Ok((label, values))
}

fn exact_curve(
    protocol: CurveProtocol,
    config: &AntennaConfig,
    fdf_a: Option<Rational>,
) -> Result<Option<RationalPolyline>, CliError> {
    Ok(match protocol {
        CurveProtocol::FullDuplex => Some(full_duplex_dmt(config)),
        CurveProtocol::Fdf => {
            let a = fdf_a.ok_or_else(|| CliError::Config("fdf requires --a".into()))?;
            Some(fdf_dmt(config, a)?)
        }
        _ => None,
    })
}

fn protocol_label(protocol: CurveProtocol, fdf_a: Option<Rational>) -> String {
    match protocol {
        CurveProtocol::FullDuplex => "full_duplex".into(),
        CurveProtocol::Fdf => match fdf_a {
            Some(a) => format!("fdf_a{}", fmt_sig15(rational_f64(a))),
            None => "fdf".into(),
        },
        CurveProtocol::Vdf => "vdf".into(),
        CurveProtocol::Ddf => "ddf".into(),
    }
}

fn run_sim(args: SimArgs) -> CliResult {
    let config = args.config;
    let snr_grid = parse_snr_grid(&args.snr)?;
    let n_samples = parse_samples(&args.samples)?;
    if n_samples < 10_000 {
        return Err(CliError::Config(format!(
            "simulation needs at least 1e4 samples per point, got {n_samples}"
        )));
    }

    let estimated = estimate_runtime_secs(&config, n_samples, snr_grid.len());
    if estimated > args.max_seconds {
        return Err(CliError::Budget(format!(
            "estimated runtime {estimated:.0} s exceeds the {:.0} s budget \
             ({n_samples} samples x {} SNR points); raise --max-seconds to force",
            args.max_seconds,
            snr_grid.len()
        )));
    }

    let protocol = match args.protocol {
        SimProtocol::FullDuplex => Protocol::FullDuplex,
        SimProtocol::Fdf => {
            let a = args.a.ok_or_else(|| CliError::Config("fdf requires --a".into()))?;
            Protocol::Fdf { a }
        }
        SimProtocol::Vdf => Protocol::Vdf { a: vdf_allocation(&config, args.r)? },
        SimProtocol::Ddf => Protocol::Ddf,
        SimProtocol::Cutset => Protocol::Cutset,
    };
    let mut spec = OutageSpec::new(config, protocol, args.r)?;
    if let Some(rate) = args.rate {
        spec = spec.with_fixed_rate(rate)?;
    }

    let started = Instant::now();
    let mut estimates = Vec::with_capacity(snr_grid.len());
    for &snr_db in &snr_grid {
        estimates.push(estimate_outage(&spec, snr_db, n_samples, args.seed)?);
    }
    let elapsed = started.elapsed().as_secs_f64();

    let analytic = analytic_diversity(&spec)?;
    let fit = fit_diversity(&estimates, 100).ok();

    let text = match args.format {
        Format::Csv => {
            let mut out = String::from(
                "protocol,M1,M2,M3,r,snr_db,rate_bits,n_samples,outages,p_hat,ci_low,ci_high,seed\n",
            );
            for e in &estimates {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    spec.protocol.name(),
                    config.m1(),
                    config.m2(),
                    config.m3(),
                    fmt_sig15(spec.r),
                    fmt_sig15(e.snr_db),
                    fmt_sig15(e.rate_bits),
                    e.n_samples,
                    e.outages,
                    fmt_sig15(e.p_hat),
                    fmt_sig15(e.ci_low),
                    fmt_sig15(e.ci_high),
                    e.seed
                );
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "spec": spec,
                "points": estimates,
                "slope_fit": fit,
                "analytic_diversity": analytic,
                "elapsed_secs": elapsed,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    write_output(args.output.as_deref(), &text)?;

    match &fit {
        Some(f) => println!(
            "fitted slope {:.4} +/- {:.4} over {} reliable points; analytic diversity {:.4}",
            f.slope,
            f.slope_stderr,
            f.snr_grid_db.len(),
            analytic
        ),
        None => println!(
            "slope not fitted (need >= 3 grid points with >= 100 outage events); \
             analytic diversity {analytic:.4}"
        ),
    }
    Ok(())
}

fn analytic_diversity(spec: &OutageSpec) -> Result<f64, CliError> {
    let config = &spec.config;
    let r = if spec.fixed_rate.is_some() { 0.0 } else { spec.r };
    Ok(match spec.protocol {
        Protocol::FullDuplex => full_duplex_dmt(config).to_f64().eval(&r)?,
        Protocol::Fdf { a } => {
            let a = Rational::approximate_float(a)
                .ok_or_else(|| CliError::Config(format!("bad allocation {a}")))?;
            fdf_dmt(config, a)?.to_f64().eval(&r)?
        }
        Protocol::Vdf { .. } => vdf_dmt(config, r)?,
        // The cut-set outage exponent coincides with DDF.
        Protocol::Ddf | Protocol::Cutset => ddf_dmt(config, r)?,
    })
}

/// Crude per-sample cost model for the budget check, single-threaded worst
/// case.
fn estimate_runtime_secs(config: &AntennaConfig, n_samples: u64, n_snr: usize) -> f64 {
    let (m1, m2, m3) = (config.m1() as f64, config.m2() as f64, config.m3() as f64);
    let ns_per_sample = 150.0 + 40.0 * (m1 * m2 + m2 * m3) + 25.0 * (m2.powi(3) + m3.powi(3));
    n_samples as f64 * n_snr as f64 * ns_per_sample * 1e-9
}

fn run_reproduce(args: ReproduceArgs) -> CliResult {
    let outdir = args
        .outdir
        .or_else(|| std::env::var_os("RELAY_DMT_OUTDIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&outdir)?;

    struct NamedCurve {
        name: String,
        values: Vec<(f64, f64)>,
    }
    let mut curves: Vec<NamedCurve> = Vec::new();
    let mut checks: Vec<serde_json::Value> = Vec::new();

    let (figure_name, config) = match args.figure {
        Figure::Fig2 => ("fig2", AntennaConfig::new(4, 2, 3)?),
        Figure::Fig3 => ("fig3", AntennaConfig::new(4, 1, 3)?),
        Figure::Fig4 => ("fig4", AntennaConfig::new(2, 2, 2)?),
    };
    let mut check = |name: &str, r: f64, expected: f64, actual: f64| {
        checks.push(json!({
            "curve": name,
            "r": r,
            "expected": expected,
            "actual": actual,
            "ok": (expected - actual).abs() <= 1e-9,
        }));
    };

    let sample_poly = |curve: &RationalPolyline| -> Vec<(f64, f64)> {
        let stop = rational_f64(curve.first_zero());
        let f = curve.to_f64();
        grid_with_endpoint(0.0, stop, 0.005)
            .into_iter()
            .map(|r| (r, f.eval(&r).expect("r >= 0")))
            .collect()
    };
    let sample_fn = |stop: f64, f: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
        grid_with_endpoint(0.0, stop, 0.005).into_iter().map(|r| (r, f(r))).collect()
    };

    match args.figure {
        Figure::Fig2 => {
            let d42 = pp_dmt::<Rational>(4, 2)?;
            let d23 = pp_dmt::<Rational>(2, 3)?;
            let a = Rational::new(3, 10);
            let fdf = fdf_dmt(&config, a)?;
            curves.push(NamedCurve { name: "pp_4_2".into(), values: sample_poly(&d42) });
            curves.push(NamedCurve { name: "pp_2_3".into(), values: sample_poly(&d23) });
            curves.push(NamedCurve { name: "fdf_a0.3".into(), values: sample_poly(&fdf) });
            check("fdf_a0.3", 0.0, 6.0, fdf.to_f64().eval(&0.0)?);
            check("fdf_a0.3 first zero", 0.6, 0.6, rational_f64(fdf.first_zero()));
        }
        Figure::Fig3 => {
            let d41 = pp_dmt::<Rational>(4, 1)?;
            let d13 = pp_dmt::<Rational>(1, 3)?;
            let full = full_duplex_dmt(&config);
            let fdf = fdf_dmt(&config, Rational::new(1, 2))?;
            let mm = rational_f64(max_multiplexing(&config));
            curves.push(NamedCurve { name: "cutset_hop1".into(), values: sample_poly(&d41) });
            curves.push(NamedCurve { name: "cutset_hop2".into(), values: sample_poly(&d13) });
            curves.push(NamedCurve { name: "full_duplex".into(), values: sample_poly(&full) });
            curves.push(NamedCurve {
                name: "ddf".into(),
                values: sample_fn(mm, &|r| ddf_dmt(&config, r).expect("r >= 0")),
            });
            curves.push(NamedCurve {
                name: "vdf".into(),
                values: sample_fn(mm, &|r| vdf_dmt(&config, r).expect("r >= 0")),
            });
            curves.push(NamedCurve { name: "fdf_a0.5".into(), values: sample_poly(&fdf) });
            check("ddf", 0.0, 3.0, ddf_dmt(&config, 0.0)?);
            check("ddf", 0.5, 0.0, ddf_dmt(&config, 0.5)?);
        }
        Figure::Fig4 => {
            let full = full_duplex_dmt(&config);
            let vdf = fdf_dmt(&config, Rational::new(1, 2))?;
            curves.push(NamedCurve { name: "full_duplex".into(), values: sample_poly(&full) });
            curves.push(NamedCurve {
                name: "ddf".into(),
                values: sample_fn(1.0, &|r| ddf_dmt(&config, r).expect("r >= 0")),
            });
            curves.push(NamedCurve { name: "vdf".into(), values: sample_poly(&vdf) });
            for (r, expected) in [(0.0, 4.0), (0.5, 2.0), (2.0 / 3.0, 1.0), (1.0, 0.0)] {
                check("ddf", r, expected, ddf_dmt(&config, r)?);
            }
        }
    }

    let mut files = Vec::new();
    for curve in &curves {
        let file = outdir.join(format!("{figure_name}_{}.csv", curve.name.replace('.', "")));
        let mut text = String::from("protocol,M1,M2,M3,r,d\n");
        for &(r, d) in &curve.values {
            let _ = writeln!(
                text,
                "{},{},{},{},{},{}",
                curve.name,
                config.m1(),
                config.m2(),
                config.m3(),
                fmt_sig15(r),
                fmt_sig15(d)
            );
        }
        std::fs::write(&file, text)?;
        files.push(file.to_string_lossy().into_owned());
    }

    let manifest = json!({
        "figure": figure_name,
        "config": config,
        "command_line": std::env::args().collect::<Vec<_>>(),
        "version": env!("CARGO_PKG_VERSION"),
        "grid_step": 0.005,
        "files": files,
        "endpoint_checks": checks,
    });
    let manifest_path = outdir.join(format!("{figure_name}_manifest.json"));
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest).expect("serializable") + "\n")?;
    println!("wrote {} curve files and {}", curves.len(), manifest_path.display());
    Ok(())
}

fn curve_csv(config: &AntennaConfig, rows: &[(String, f64, f64)]) -> String {
    let mut out = String::from("protocol,M1,M2,M3,r,d\n");
    for (protocol, r, d) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            protocol,
            config.m1(),
            config.m2(),
            config.m3(),
            fmt_sig15(*r),
            fmt_sig15(*d)
        );
    }
    out
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parses "start:stop:step" (half-open) or a single value; appends the
/// degrees-of-freedom endpoint when it falls inside the range.
fn parse_r_grid(text: &str, config: &AntennaConfig) -> Result<Vec<f64>, CliError> {
    let mm = rational_f64(max_multiplexing(config));
    let parts: Vec<&str> = text.split(':').collect();
    let mut grid = match parts.as_slice() {
        [single] => vec![parse_f64(single, "r")?],
        [start, stop, step] => {
            let start = parse_f64(start, "r start")?;
            let stop = parse_f64(stop, "r stop")?;
            let step = parse_f64(step, "r step")?;
            if step <= 0.0 || stop < start || start < 0.0 {
                return Err(CliError::Config(format!("bad r grid {text:?}")));
            }
            let mut grid = Vec::new();
            let mut i = 0u64;
            loop {
                let r = start + i as f64 * step;
                if r >= stop {
                    break;
                }
                grid.push(r);
                i += 1;
            }
            if mm >= start && mm <= stop && !grid.contains(&mm) {
                let pos = grid.partition_point(|&r| r < mm);
                grid.insert(pos, mm);
            }
            grid
        }
        _ => return Err(CliError::Config(format!("bad r grid {text:?}"))),
    };
    grid.dedup();
    if grid.is_empty() {
        return Err(CliError::Config(format!("empty r grid {text:?}")));
    }
    Ok(grid)
}

fn parse_snr_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(CliError::Config(format!("bad SNR grid {text:?}, expected lo:hi:step")));
    };
    let lo = parse_f64(lo, "snr lo")?;
    let hi = parse_f64(hi, "snr hi")?;
    let step = parse_f64(step, "snr step")?;
    if step <= 0.0 || hi < lo {
        return Err(CliError::Config(format!("bad SNR grid {text:?}")));
    }
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let snr = lo + i as f64 * step;
        if snr > hi + 1e-9 {
            break;
        }
        grid.push(snr);
        i += 1;
    }
    Ok(grid)
}

fn parse_samples(text: &str) -> Result<u64, CliError> {
    let value = parse_f64(text, "samples")?;
    if !((1.0..=1e12).contains(&value) && value.fract() == 0.0) {
        return Err(CliError::Config(format!("bad sample count {text:?}")));
    }
    Ok(value as u64)
}

fn parse_f64(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Config(format!("bad {what} value {text:?}")))
}

/// Parses a decimal ("0.3") or fraction ("3/10") into an exact rational.
fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let text = text.trim();
    let bad = || CliError::Config(format!("bad rational {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.len() > 15 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let frac_value: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        return Ok(Rational::from_integer(int) + Rational::new(frac_value, scale));
    }
    let int: i64 = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(int))
}

fn grid_with_endpoint(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let r = start + i as f64 * step;
        if r >= stop {
            break;
        }
        grid.push(r);
        i += 1;
    }
    grid.push(stop);
    grid
}

fn rational_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.3").unwrap(), Rational::new(3, 10));
        assert_eq!(parse_rational("3/10").unwrap(), Rational::new(3, 10));
        assert_eq!(parse_rational("1").unwrap(), Rational::from_integer(1));
        assert_eq!(parse_rational(".25").unwrap(), Rational::new(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn r_grid_appends_dof_endpoint() {
        let config = AntennaConfig::new(2, 2, 2).unwrap();
        let grid = parse_r_grid("0:1:0.25", &config).unwrap();
        assert_eq!(grid, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let config = AntennaConfig::new(1, 1, 1).unwrap();
        let grid = parse_r_grid("0:1:0.4", &config).unwrap();
        assert_eq!(grid, vec![0.0, 0.4, 0.5, 0.8]);
        assert!(parse_r_grid("0:1:-1", &config).is_err());
    }

    #[test]
    fn snr_grid_inclusive() {
        assert_eq!(parse_snr_grid("25:45:5").unwrap(), vec![25.0, 30.0, 35.0, 40.0, 45.0]);
        assert!(parse_snr_grid("45:25:5").is_err());
        assert!(parse_snr_grid("25:45").is_err());
    }

    #[test]
    fn samples_accept_scientific() {
        assert_eq!(parse_samples("1e6").unwrap(), 1_000_000);
        assert_eq!(parse_samples("20000").unwrap(), 20_000);
        assert!(parse_samples("1.5").is_err());
        assert!(parse_samples("-3").is_err());
    }
}
