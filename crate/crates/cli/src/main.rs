//! `uclab` — batch experiment runner for the uncertainty-constant toolkit.
//!
//! Subcommands compute localization reports, build frames, run the
//! periodization pipeline and the minimizer scan, and emit plot-ready CSV
//! (always '.' decimal, fixed column order) or JSON (shortest round-trip
//! float formatting). The exit status is nonzero iff an assertion suite in
//! the run failed; configuration and I/O errors exit with status 2.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use uclab_core::bridge::{periodize, three_halves_pipeline, PipelineTrace};
use uclab_core::frames::{build_frame, default_support_radius, MaskSpec, MaskTableLevel};
use uclab_core::minimizer::system_residual;
use uclab_core::sampling;
use uclab_core::wavelets::BuiltinWavelet;
use uclab_core::{PeriodicSignal, PiecewiseLinearSpectrum, SampledLineSignal};

#[derive(Debug, Error)]
enum CliError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("unknown wavelet name: {0} (expected gauss-deriv | mexican-gauss | gaussian)")]
    UnknownName(String),
}

#[derive(Parser)]
#[command(name = "uclab", version, about = "uncertainty-constant laboratory")]
struct Cli {
    /// Worker threads for level sweeps and grid scans (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Breitenberger report for a periodic signal (JSON in, JSON out).
    UcPeriodic {
        /// Input PeriodicSignal JSON: {"k0": int, "coeffs": [[re, im], ...]}.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Heisenberg report for a real-line signal (sampled or spectrum JSON).
    UcLine {
        /// SampledLineSignal JSON {"x_min", "dx", "samples"} or
        /// PiecewiseLinearSpectrum JSON {"q", "offset", "k0", "nodes"};
        /// detected by shape.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a UEP frame, check the mask-matrix identity per level, export.
    Frame(FrameArgs),
    /// Truncation/embedding/recentering pipeline across levels.
    Pipeline(PipelineArgs),
    /// UC_B per periodization level against the UC_H quadrature target.
    Convergence(ConvergenceArgs),
    /// Residual-norm grid scan of the Gamma-ratio system.
    MinimizerScan(ScanArgs),
    /// Randomized embedding-identity suite (seeded by UCLAB_SEED).
    Identities(IdentitiesArgs),
}

#[derive(Args)]
struct FrameArgs {
    /// "haar" or a path to a mask-table JSON: [{"j": 1, "values": [[re,im], ...]}, ...].
    #[arg(long, default_value = "haar")]
    mask: String,
    /// Number of wavelet levels J.
    #[arg(long, default_value_t = 8)]
    levels: u32,
    /// Resolved band half-width (default 2^{J+2}).
    #[arg(long)]
    support_radius: Option<i64>,
    /// Pass threshold for the mask-matrix deviation.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// CSV output: level, uep_deviation.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for per-level signal JSON exports (phi_j.json, psi_j.json).
    #[arg(long)]
    export_dir: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Built-in wavelet spectrum for the periodization.
    #[arg(long, default_value = "gauss-deriv")]
    wavelet: String,
    /// Inclusive level range, e.g. 4..12.
    #[arg(long, default_value = "4..12")]
    levels: String,
    /// Base of the q_j = base^j sequence.
    #[arg(long, default_value_t = 2.0)]
    q_base: f64,
    /// Condition constant; estimated from the levels when absent.
    #[arg(long)]
    c_est: Option<f64>,
    /// Last-to-first ratio threshold for the two limit conditions.
    #[arg(long, default_value_t = 0.1)]
    trend_threshold: f64,
    /// Slack below 3/2 allowed for the final-level constant.
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
    /// Relative tail energy allowed when truncating the periodization.
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// CSV output (see README for the fixed column order).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long, default_value = "gauss-deriv")]
    wavelet: String,
    /// Inclusive level range, e.g. 5..10.
    #[arg(long, default_value = "5..10")]
    levels: String,
    #[arg(long, default_value_t = 2.0)]
    q_base: f64,
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Final-level error threshold for the pass verdict.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    eps: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 500)]
    grid: usize,
    #[arg(long, default_value_t = 0.1)]
    alpha_min: f64,
    #[arg(long, default_value_t = 20.0)]
    alpha_max: f64,
    #[arg(long, default_value_t = -20.0)]
    beta_min: f64,
    #[arg(long, default_value_t = 20.0)]
    beta_max: f64,
    /// CSV output: alpha, beta, r1, r2, residual_norm.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdentitiesArgs {
    #[arg(long, default_value_t = 500)]
    count: usize,
    /// Maximum coefficient support of the random signals.
    #[arg(long, default_value_t = 64)]
    support: usize,
    /// Comma-separated grid densities.
    #[arg(long, default_value = "1,2,8,64")]
    q: String,
    /// Pass threshold on the relative identity residuals.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("uclab: failed to set worker count: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("uclab: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns Ok(true) when every assertion in the run passed.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::UcPeriodic { input, out } => {
            let signal: PeriodicSignal = read_json(&input)?;
            let report = signal.breitenberger_uc()?;
            emit_json(&report, out.as_deref())?;
            Ok(true)
        }
        Command::UcLine { input, out } => {
            let report = line_report(&input)?;
            emit_json(&report, out.as_deref())?;
            Ok(true)
        }
        Command::Frame(args) => frame_cmd(args),
        Command::Pipeline(args) => pipeline_cmd(args),
        Command::Convergence(args) => convergence_cmd(args),
        Command::MinimizerScan(args) => scan_cmd(args),
        Command::Identities(args) => identities_cmd(args),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", path.display())).into())
}

fn emit_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    println!("{text}");
    if let Some(path) = out {
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn write_output(path: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            fs::write(p, contents).with_context(|| format!("writing {}", p.display()))?;
        }
        None => print!("{contents}"),
    }
    Ok(())
}

fn line_report(path: &Path) -> anyhow::Result<uclab_core::LineUcReport> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    if let Ok(sampled) = serde_json::from_str::<SampledLineSignal>(&text) {
        let sampled = SampledLineSignal::new(sampled.x_min, sampled.dx, sampled.samples)?;
        return Ok(sampled.uc()?);
    }
    if let Ok(spectrum) = serde_json::from_str::<PiecewiseLinearSpectrum>(&text) {
        let spectrum = PiecewiseLinearSpectrum::new(
            spectrum.q,
            spectrum.offset,
            spectrum.k0,
            spectrum.nodes,
        )?;
        return Ok(spectrum.uc()?);
    }
    bail!(CliError::ConfigInvalid(format!(
        "{}: neither a sampled signal nor a spectrum",
        path.display()
    )))
}

fn wavelet_by_name(name: &str) -> anyhow::Result<BuiltinWavelet> {
    BuiltinWavelet::by_name(name).ok_or_else(|| CliError::UnknownName(name.into()).into())
}

fn parse_level_range(text: &str) -> anyhow::Result<Vec<u32>> {
    let parts: Vec<&str> = text.split("..").collect();
    let invalid = || CliError::ConfigInvalid(format!("bad level range '{text}', expected a..b"));
    if parts.len() != 2 {
        bail!(invalid());
    }
    let a: u32 = parts[0].trim().parse().map_err(|_| invalid())?;
    let b: u32 = parts[1].trim().parse().map_err(|_| invalid())?;
    if a > b {
        bail!(invalid());
    }
    Ok((a..=b).collect())
}

fn periodized_levels(
    wavelet: BuiltinWavelet,
    js: &[u32],
    q_base: f64,
    tail_tol: f64,
) -> anyhow::Result<Vec<(PeriodicSignal, f64)>> {
    if !q_base.is_finite() || q_base <= 1.0 {
        bail!(CliError::ConfigInvalid(format!("q base {q_base} must exceed 1")));
    }
    if !tail_tol.is_finite() || tail_tol <= 0.0 {
        bail!(CliError::ConfigInvalid(format!(
            "tail tolerance {tail_tol} must be positive"
        )));
    }
    js.iter()
        .map(|&j| {
            let psi = periodize(|xi| Complex64::new(wavelet.spectrum(xi), 0.0), j, tail_tol)?;
            Ok((psi, q_base.powi(j as i32)))
        })
        .collect()
}

fn frame_cmd(args: FrameArgs) -> anyhow::Result<bool> {
    if !args.tol.is_finite() || args.tol <= 0.0 {
        bail!(CliError::ConfigInvalid("tolerance must be positive".into()));
    }
    let mask = if args.mask == "haar" {
        MaskSpec::haar()
    } else {
        let levels: Vec<MaskTableLevel> = read_json(Path::new(&args.mask))?;
        MaskSpec::from_table(levels)?
    };
    let radius = args
        .support_radius
        .unwrap_or_else(|| default_support_radius(args.levels));
    let frame = build_frame(mask, args.levels, radius)?;

    let mut csv = String::from("level,uep_deviation\n");
    let mut worst = 0.0f64;
    for j in 1..=args.levels {
        let dev = frame.uep_matrix_check(j);
        worst = worst.max(dev);
        csv.push_str(&format!("{j},{dev}\n"));
    }
    write_output(args.out.as_deref(), &csv)?;

    if let Some(dir) = &args.export_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (j, phi) in frame.phi.iter().enumerate() {
            fs::write(dir.join(format!("phi_{j}.json")), serde_json::to_string(phi)?)?;
        }
        for (j, psi) in frame.psi.iter().enumerate() {
            fs::write(dir.join(format!("psi_{j}.json")), serde_json::to_string(psi)?)?;
        }
    }

    let pass = worst <= args.tol;
    eprintln!(
        "frame: J = {}, support radius {radius}, worst mask-matrix deviation {worst:e} ({})",
        args.levels,
        if pass { "pass" } else { "FAIL" }
    );
    Ok(pass)
}

fn pipeline_csv(trace: &PipelineTrace, js: &[u32]) -> String {
    let mut csv = String::from(
        "j,q_j,s1,s2,s3,s4,s5,s6,uc_periodic,uc_truncated,uc_embedded,uc_recentred,freq_centre_embedded\n",
    );
    for ((j, cond), level) in js
        .iter()
        .zip(trace.conditions.levels.iter())
        .zip(trace.levels.iter())
    {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            j,
            level.q,
            cond.s1,
            cond.s2,
            cond.s3,
            cond.s4,
            cond.s5,
            cond.s6,
            level.uc_periodic,
            level.uc_truncated,
            level.uc_embedded,
            level.uc_recentred,
            level.freq_centre_embedded,
        ));
    }
    csv
}

fn pipeline_cmd(args: PipelineArgs) -> anyhow::Result<bool> {
    let wavelet = wavelet_by_name(&args.wavelet)?;
    let js = parse_level_range(&args.levels)?;
    let levels = periodized_levels(wavelet, &js, args.q_base, args.tail_tol)?;
    let trace = three_halves_pipeline(&levels, args.c_est, args.trend_threshold, args.tol)?;
    write_output(args.out.as_deref(), &pipeline_csv(&trace, &js))?;
    eprintln!(
        "pipeline: C_est {:.6}, band |k| <= {}, final UC_B {:.6} (threshold {:.3}), conditions {}, centre violations {} -> {}",
        trace.conditions.c_est,
        trace.truncation_band,
        trace.final_uc,
        trace.threshold,
        if trace.conditions.pass { "pass" } else { "FAIL" },
        trace.centre_violations,
        if trace.passed { "pass" } else { "FAIL" }
    );
    Ok(trace.passed)
}

fn convergence_cmd(args: ConvergenceArgs) -> anyhow::Result<bool> {
    let wavelet = wavelet_by_name(&args.wavelet)?;
    let js = parse_level_range(&args.levels)?;
    let levels = periodized_levels(wavelet, &js, args.q_base, args.tail_tol)?;
    let target = wavelet.uc_by_quadrature().uc;

    let mut csv = String::from("level,q,uc,abs_err\n");
    let mut errors = Vec::new();
    for (j, (psi, q)) in js.iter().zip(levels.iter()) {
        let uc = psi.breitenberger_uc()?.uc;
        let err = (uc - target).abs();
        errors.push(err);
        csv.push_str(&format!("{j},{q},{uc},{err}\n"));
    }
    csv.push_str(&format!("target,,{target},\n"));
    write_output(args.out.as_deref(), &csv)?;

    let monotone = errors.windows(2).all(|w| w[1] <= w[0]);
    let final_err = *errors.last().unwrap_or(&f64::NAN);
    let pass = monotone && final_err < args.tol;
    eprintln!(
        "convergence: UC_H target {target:.9}, final |UC_B - UC_H| {final_err:e}, monotone {monotone} -> {}",
        if pass { "pass" } else { "FAIL" }
    );
    Ok(pass)
}

fn scan_cmd(args: ScanArgs) -> anyhow::Result<bool> {
    if args.grid < 2 {
        bail!(CliError::ConfigInvalid("grid must be at least 2".into()));
    }
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (args.grid - 1) as f64;
    let mut csv = String::with_capacity(args.grid * args.grid * 32);
    csv.push_str("alpha,beta,r1,r2,residual_norm\n");
    let mut min = f64::INFINITY;
    let mut argmin = (f64::NAN, f64::NAN);
    let mut skipped = 0usize;
    for ia in 0..args.grid {
        let alpha = step(args.alpha_min, args.alpha_max, ia);
        for ib in 0..args.grid {
            let beta = step(args.beta_min, args.beta_max, ib);
            match system_residual(alpha, beta, args.eps) {
                Ok(res) => {
                    let norm = res.norm();
                    csv.push_str(&format!("{alpha},{beta},{},{},{norm}\n", res.r1, res.r2));
                    if norm < min {
                        min = norm;
                        argmin = (alpha, beta);
                    }
                }
                Err(uclab_core::Error::AtPole { .. }) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    write_output(args.out.as_deref(), &csv)?;
    eprintln!(
        "minimizer-scan: eps {}, min residual {min:e} at (alpha {}, beta {}), {skipped} grid points skipped near poles",
        args.eps, argmin.0, argmin.1
    );
    Ok(true)
}

fn identities_cmd(args: IdentitiesArgs) -> anyhow::Result<bool> {
    let qs: Vec<f64> = args
        .q
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::ConfigInvalid(format!("bad q value '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    if qs.iter().any(|&q| !q.is_finite() || q <= 0.0) {
        bail!(CliError::ConfigInvalid("q values must be positive".into()));
    }
    if !args.tol.is_finite() || args.tol <= 0.0 {
        bail!(CliError::ConfigInvalid("tolerance must be positive".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(sampling::seed_from_env(0x05ee_d1ab));
    let mut csv = String::from("index,q,norm_rel,weight_rel,moment_rel,second_moment_rel\n");
    let mut worst = 0.0f64;
    let mut produced = 0usize;
    while produced < args.count {
        let psi = sampling::random_signal(&mut rng, args.support.max(1), 48);
        if psi.is_zero() {
            continue;
        }
        let q = qs[rng.gen_range(0..qs.len())];
        let ids = uclab_core::bridge::embedding_identities(&psi, q)?;
        let rows = [
            (ids.norm_residual / ids.norm_scale).abs(),
            (ids.weight_residual / ids.weight_scale).abs(),
            (ids.moment_residual / ids.moment_scale).abs(),
            (ids.second_moment_residual / ids.second_moment_scale).abs(),
        ];
        worst = worst.max(rows[0]).max(rows[1]).max(rows[2]).max(rows[3]);
        csv.push_str(&format!(
            "{produced},{q},{},{},{},{}\n",
            rows[0], rows[1], rows[2], rows[3]
        ));
        produced += 1;
    }
    write_output(args.out.as_deref(), &csv)?;
    let pass = worst <= args.tol;
    eprintln!(
        "identities: {} signals, worst relative residual {worst:e} (tolerance {:e}) -> {}",
        args.count,
        args.tol,
        if pass { "pass" } else { "FAIL" }
    );
    Ok(pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_range_parsing() {
        assert_eq!(parse_level_range("4..7").unwrap(), vec![4, 5, 6, 7]);
        assert!(parse_level_range("7..4").is_err());
        assert!(parse_level_range("x..4").is_err());
        assert!(parse_level_range("4").is_err());
    }

    #[test]
    fn unknown_wavelet_is_reported() {
        let err = wavelet_by_name("bogus").unwrap_err();
        assert!(err.to_string().contains("unknown wavelet"));
    }
}
