//! Command-line front end: single-point reports, CSV grid sweeps, channel
//! probes, and truncated Fock-space diagnostics.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical or tolerance failure,
//! 4 I/O failure. Every error prints a single diagnostic line to stderr
//! naming the offending flag or file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cvgauss::channel::ChoiChannel;
use cvgauss::states::GiParams;
use cvgauss::symplectic::CovarianceMatrix;
use cvgauss::{criteria, fock, measures, states};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::json;

const LN_2: f64 = std::f64::consts::LN_2;

/// Exact CSV header emitted by the sweep subcommand.
pub const CSV_HEADER: &str = "r,p,nu,nu_tilde,purity,S,eof,discord,mutual_information,ppt_entangled,steerable,ccnr_detects,eof_exceeds_half_mi";

#[derive(Parser)]
#[command(
    name = "cvgauss",
    version,
    about = "Two-mode Gaussian isotropic states: reports, sweeps, channel probes, Fock diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Covariance matrix, symplectic spectrum, purity, and entropies at one point
    State(EntropyArgs),
    /// Entanglement criteria verdicts (PPT, steering, realignment) at one point
    Criteria(PointArgs),
    /// Correlation measures (EoF, Gaussian discord, mutual information) at one point
    Measures(EntropyArgs),
    /// Evaluate the grid and emit one CSV row per (r, p) point
    Sweep(SweepArgs),
    /// Apply the state's isomorphic channel to a probe input
    Channel(ChannelArgs),
    /// Build the truncated Fock representation and check it against closed forms
    Fock(FockArgs),
}

#[derive(Args)]
struct PointArgs {
    /// Squeezing parameter, >= 0
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
    /// Mixing probability, in [0, 1]
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Report entropies in bits instead of nats (presentation only)
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Lower end of the r grid, in [0, 2]
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    r_min: f64,
    /// Upper end of the r grid, in [0, 2]
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    r_max: f64,
    /// Number of r grid points
    #[arg(long, default_value_t = 50)]
    r_steps: usize,
    /// Lower end of the p grid, in [0, 1]
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    p_min: f64,
    /// Upper end of the p grid, in [0, 1]
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    p_max: f64,
    /// Number of p grid points
    #[arg(long, default_value_t = 50)]
    p_steps: usize,
    /// Write the CSV to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChannelArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Probe state fed through the channel
    #[arg(long, value_enum)]
    input: InputKind,
    /// Mean photon number of the thermal probe (required iff --input thermal)
    #[arg(long, allow_negative_numbers = true)]
    nbar: Option<f64>,
}

#[derive(Args)]
struct FockArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Per-mode Fock-space dimension, in [4, 64]
    #[arg(long, default_value_t = 40)]
    cutoff: usize,
    /// Exit nonzero if any diagnostic misses its tolerance
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Coherent,
    Thermal,
}

/// A failed command: exit code plus the single diagnostic line.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<cvgauss::Error> for Failure {
    fn from(e: cvgauss::Error) -> Self {
        let code = if matches!(e, cvgauss::Error::Io(_)) { 4 } else { 3 };
        Self { code, message: e.to_string() }
    }
}

/// Parses the command line, runs the subcommand, and returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            eprintln!("error: {}", clap_error_line(&e));
            return 2;
        }
    };
    let result = match cli.cmd {
        Cmd::State(args) => cmd_state(&args),
        Cmd::Criteria(args) => cmd_criteria(&args),
        Cmd::Measures(args) => cmd_measures(&args),
        Cmd::Sweep(args) => cmd_sweep(&args),
        Cmd::Channel(args) => cmd_channel(&args),
        Cmd::Fock(args) => cmd_fock(&args),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Collapses a multi-line clap diagnostic to one line, dropping the usage
/// block; the retained part still names the offending flag or value.
fn clap_error_line(e: &clap::Error) -> String {
    let rendered = e.to_string();
    let mut parts = Vec::new();
    for line in rendered.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("Usage:") || line.starts_with("For more information") {
            break;
        }
        parts.push(line);
    }
    let joined = parts.join(" ");
    joined.strip_prefix("error: ").unwrap_or(&joined).to_string()
}

fn validate_point(r: f64, p: f64) -> Result<GiParams, Failure> {
    if !r.is_finite() || r < 0.0 {
        return Err(Failure::usage(format!("--r must be a finite number >= 0, got {r}")));
    }
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Failure::usage(format!("--p must lie in [0, 1], got {p}")));
    }
    Ok(GiParams::new(r, p).expect("validated above"))
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content).map_err(|e| Failure {
            code: 4,
            message: format!("cannot write --out file {}: {e}", path.display()),
        }),
    }
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("no non-finite values serialized");
    s.push('\n');
    s
}

fn matrix_json(cm: &CovarianceMatrix) -> serde_json::Value {
    let e = cm.entries();
    let rows: Vec<Vec<f64>> =
        (0..e.nrows()).map(|i| (0..e.ncols()).map(|j| e[(i, j)]).collect()).collect();
    json!(rows)
}

fn matrix_text(cm: &CovarianceMatrix, indent: &str) -> String {
    let e = cm.entries();
    (0..e.nrows())
        .map(|i| {
            let row: Vec<String> = (0..e.ncols()).map(|j| fmt_sig9(e[(i, j)])).collect();
            format!("{indent}[{}]", row.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_state(args: &EntropyArgs) -> Result<(), Failure> {
    let params = validate_point(args.point.r, args.point.p)?;
    let gamma = states::gamma_gi(params);
    let props = states::properties(params);
    let unit = if args.bits { "bits" } else { "nats" };
    let scale = if args.bits { LN_2 } else { 1.0 };
    let content = match args.point.format {
        Format::Json => json_line(json!({
            "r": params.r(),
            "p": params.p(),
            "cm": matrix_json(&gamma),
            "nu": props.nu,
            "nu_tilde": props.nu_tilde,
            "purity": props.purity,
            "S": props.von_neumann / scale,
            "local_entropy": props.local_entropy / scale,
            "entropy_unit": unit,
        })),
        Format::Text => format!(
            "isotropic state at r = {}, p = {}\n\
             covariance matrix:\n{}\n\
             nu            = {}\n\
             nu_tilde      = {}\n\
             purity        = {}\n\
             S             = {} {unit}\n\
             local entropy = {} {unit}\n",
            fmt_sig9(params.r()),
            fmt_sig9(params.p()),
            matrix_text(&gamma, "  "),
            fmt_sig9(props.nu),
            fmt_sig9(props.nu_tilde),
            fmt_sig9(props.purity),
            fmt_sig9(props.von_neumann / scale),
            fmt_sig9(props.local_entropy / scale),
        ),
    };
    emit(args.point.out.as_deref(), &content)
}

fn cmd_criteria(args: &PointArgs) -> Result<(), Failure> {
    let params = validate_point(args.r, args.p)?;
    let rep = criteria::report(params);
    let content = match args.format {
        Format::Json => json_line(json!({
            "r": params.r(),
            "p": params.p(),
            "ppt_entangled": rep.ppt_entangled,
            "ppt_margin": rep.ppt_margin,
            "steerable": rep.steerable,
            "steering_threshold": rep.steering_threshold,
            "ccnr_detects": rep.ccnr_detects,
            "realigned_norm": rep.realigned_norm,
        })),
        Format::Text => format!(
            "entanglement criteria at r = {}, p = {}\n\
             ppt:         {} (margin tanh r - p = {})\n\
             steering:    {} (threshold p = {})\n\
             realignment: {} (realigned trace norm = {})\n",
            fmt_sig9(params.r()),
            fmt_sig9(params.p()),
            if rep.ppt_entangled { "entangled" } else { "separable" },
            fmt_sig9(rep.ppt_margin),
            if rep.steerable { "steerable" } else { "not steerable" },
            fmt_sig9(rep.steering_threshold),
            if rep.ccnr_detects { "detected" } else { "not detected" },
            fmt_sig9(rep.realigned_norm),
        ),
    };
    emit(args.out.as_deref(), &content)
}

fn cmd_measures(args: &EntropyArgs) -> Result<(), Failure> {
    let params = validate_point(args.point.r, args.point.p)?;
    let rep = measures::report(params);
    let exceeds = measures::eof_exceeds_half_mi(params);
    let unit = if args.bits { "bits" } else { "nats" };
    let scale = if args.bits { LN_2 } else { 1.0 };
    let content = match args.point.format {
        Format::Json => json_line(json!({
            "r": params.r(),
            "p": params.p(),
            "eof": rep.eof / scale,
            "discord": rep.discord / scale,
            "mutual_information": rep.mutual_information / scale,
            "x": rep.x,
            "eof_exceeds_half_mi": exceeds,
            "entropy_unit": unit,
        })),
        Format::Text => format!(
            "correlation measures at r = {}, p = {}\n\
             eof                = {} {unit}\n\
             gaussian discord   = {} {unit}\n\
             mutual information = {} {unit}\n\
             x = min(1, nu_tilde) = {}\n\
             eof exceeds half the mutual information: {}\n",
            fmt_sig9(params.r()),
            fmt_sig9(params.p()),
            fmt_sig9(rep.eof / scale),
            fmt_sig9(rep.discord / scale),
            fmt_sig9(rep.mutual_information / scale),
            fmt_sig9(rep.x),
            if exceeds { "yes" } else { "no" },
        ),
    };
    emit(args.point.out.as_deref(), &content)
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    for (name, value) in [("--r-min", args.r_min), ("--r-max", args.r_max)] {
        if !value.is_finite() || !(0.0..=2.0).contains(&value) {
            return Err(Failure::usage(format!("{name} must lie in [0, 2], got {value}")));
        }
    }
    for (name, value) in [("--p-min", args.p_min), ("--p-max", args.p_max)] {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Failure::usage(format!("{name} must lie in [0, 1], got {value}")));
        }
    }
    if args.r_min > args.r_max {
        return Err(Failure::usage(format!(
            "--r-min ({}) must not exceed --r-max ({})",
            args.r_min, args.r_max
        )));
    }
    if args.p_min > args.p_max {
        return Err(Failure::usage(format!(
            "--p-min ({}) must not exceed --p-max ({})",
            args.p_min, args.p_max
        )));
    }
    for (name, steps) in [("--r-steps", args.r_steps), ("--p-steps", args.p_steps)] {
        if steps < 1 || steps > 100_000 {
            return Err(Failure::usage(format!("{name} must lie in 1..=100000, got {steps}")));
        }
    }
    let records =
        sweep_records(args.r_min, args.r_max, args.r_steps, args.p_min, args.p_max, args.p_steps);
    emit(args.out.as_deref(), &render_csv(&records))
}

fn cmd_channel(args: &ChannelArgs) -> Result<(), Failure> {
    let params = validate_point(args.point.r, args.point.p)?;
    let input = match (args.input, args.nbar) {
        (InputKind::Coherent, None) => CovarianceMatrix::new(1, DMatrix::identity(2, 2)),
        (InputKind::Coherent, Some(_)) => {
            return Err(Failure::usage("--nbar applies only to --input thermal"));
        }
        (InputKind::Thermal, None) => {
            return Err(Failure::usage("--nbar is required when --input thermal"));
        }
        (InputKind::Thermal, Some(nbar)) => {
            if !nbar.is_finite() || nbar < 0.0 {
                return Err(Failure::usage(format!(
                    "--nbar must be a finite number >= 0, got {nbar}"
                )));
            }
            CovarianceMatrix::new(1, DMatrix::from_diagonal_element(2, 2, 2.0 * nbar + 1.0))
        }
    }
    .expect("probe covariance matrices are symmetric by construction");
    let output = ChoiChannel::from_params(params).apply(&input)?;
    let noise_in = input.entries().diagonal().mean();
    let noise_out = output.entries().diagonal().mean();
    let verdict = if noise_out > noise_in + 1e-12 {
        "noisier"
    } else if noise_out < noise_in - 1e-12 {
        "less noisy"
    } else {
        "unchanged"
    };
    let kind = match args.input {
        InputKind::Coherent => "coherent",
        InputKind::Thermal => "thermal",
    };
    let content = match args.point.format {
        Format::Json => json_line(json!({
            "r": params.r(),
            "p": params.p(),
            "input": {
                "kind": kind,
                "nbar": args.nbar,
                "cm": matrix_json(&input),
            },
            "output_cm": matrix_json(&output),
            "verdict": verdict,
        })),
        Format::Text => format!(
            "channel at r = {}, p = {}\n\
             input ({kind}{}):\n{}\n\
             output:\n{}\n\
             verdict: {verdict}\n",
            fmt_sig9(params.r()),
            fmt_sig9(params.p()),
            args.nbar.map(|n| format!(", nbar = {}", fmt_sig9(n))).unwrap_or_default(),
            matrix_text(&input, "  "),
            matrix_text(&output, "  "),
        ),
    };
    emit(args.point.out.as_deref(), &content)
}

fn cmd_fock(args: &FockArgs) -> Result<(), Failure> {
    let params = validate_point(args.point.r, args.point.p)?;
    if !(4..=64).contains(&args.cutoff) {
        return Err(Failure::usage(format!("--cutoff must lie in [4, 64], got {}", args.cutoff)));
    }
    let op = fock::fock_gi(params, args.cutoff)?;
    let props = states::properties(params);
    let trace = op.trace();
    let purity = op.purity();
    let cm = fock::cm_from_fock(&op)?;
    let cm_residual = (cm.entries() - states::gamma_gi(params).entries()).amax();
    let min_pt = op.partial_transpose_b().min_eigenvalue();
    let closed_entangled = criteria::ppt(params).0;

    let trace_ok = (trace - 1.0).abs() <= 1e-6;
    let purity_ok = (purity - props.purity).abs() <= 1e-4;
    let cm_ok = cm_residual <= 1e-6;
    // The truncated sign is only meaningful away from the p = tanh r boundary.
    let sign_checked = (params.p() - params.r().tanh()).abs() > 0.02;
    let sign_ok = !sign_checked || (min_pt < -1e-8) == closed_entangled;
    let all_ok = trace_ok && purity_ok && cm_ok && sign_ok;

    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let content = match args.point.format {
        Format::Json => json_line(json!({
            "r": params.r(),
            "p": params.p(),
            "cutoff": args.cutoff,
            "trace": trace,
            "trace_ok": trace_ok,
            "purity": purity,
            "purity_closed": props.purity,
            "purity_ok": purity_ok,
            "cm_residual": cm_residual,
            "cm_residual_ok": cm_ok,
            "min_pt_eigenvalue": min_pt,
            "closed_form_entangled": closed_entangled,
            "sign_checked": sign_checked,
            "sign_ok": sign_ok,
            "all_ok": all_ok,
        })),
        Format::Text => format!(
            "fock diagnostics at r = {}, p = {}, cutoff = {}\n\
             trace             = {:.12}   |trace - 1| = {:.3e}  (tol 1e-6)  {}\n\
             purity            = {:.12}   closed form {:.12}, |diff| = {:.3e}  (tol 1e-4)  {}\n\
             cm residual       = {:.3e}  (tol 1e-6)  {}\n\
             min PT eigenvalue = {:.6e}  closed-form verdict: {}  {}\n\
             {}\n",
            fmt_sig9(params.r()),
            fmt_sig9(params.p()),
            args.cutoff,
            trace,
            (trace - 1.0).abs(),
            mark(trace_ok),
            purity,
            props.purity,
            (purity - props.purity).abs(),
            mark(purity_ok),
            cm_residual,
            mark(cm_ok),
            min_pt,
            if closed_entangled { "entangled" } else { "separable" },
            if !sign_checked {
                "sign check skipped (within 0.02 of the p = tanh r boundary)"
            } else if sign_ok {
                "sign agrees"
            } else {
                "sign DISAGREES"
            },
            if all_ok { "all checks passed" } else { "CHECKS FAILED" },
        ),
    };
    emit(args.point.out.as_deref(), &content)?;
    if args.check && !all_ok {
        let mut failed = Vec::new();
        if !trace_ok {
            failed.push("trace");
        }
        if !purity_ok {
            failed.push("purity");
        }
        if !cm_ok {
            failed.push("cm residual");
        }
        if !sign_ok {
            failed.push("PT sign");
        }
        return Err(Failure {
            code: 3,
            message: format!(
                "fock diagnostics failed tolerance ({}); try a larger --cutoff",
                failed.join(", ")
            ),
        });
    }
    Ok(())
}

/// One sweep grid point with everything the CSV row carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub r: f64,
    pub p: f64,
    pub nu: f64,
    pub nu_tilde: f64,
    pub purity: f64,
    pub s: f64,
    pub eof: f64,
    pub discord: f64,
    pub mutual_information: f64,
    pub ppt_entangled: bool,
    pub steerable: bool,
    pub ccnr_detects: bool,
    pub eof_exceeds_half_mi: bool,
}

fn point_record(r: f64, p: f64) -> SweepRecord {
    let params = GiParams::new(r, p).expect("grid stays inside the domain");
    let props = states::properties(params);
    let crit = criteria::report(params);
    let meas = measures::report(params);
    SweepRecord {
        r,
        p,
        nu: props.nu,
        nu_tilde: props.nu_tilde,
        purity: props.purity,
        s: props.von_neumann,
        eof: meas.eof,
        discord: meas.discord,
        mutual_information: meas.mutual_information,
        ppt_entangled: crit.ppt_entangled,
        steerable: crit.steerable,
        ccnr_detects: crit.ccnr_detects,
        eof_exceeds_half_mi: measures::eof_exceeds_half_mi(params),
    }
}

fn grid_value(min: f64, max: f64, steps: usize, i: usize) -> f64 {
    if steps == 1 || i == 0 {
        min
    } else if i == steps - 1 {
        max
    } else {
        min + (max - min) * i as f64 / (steps - 1) as f64
    }
}

/// Evaluates the full grid in parallel; rows come back sorted by (r, p)
/// because the grid is generated in that order and the parallel collect
/// preserves it.
pub fn sweep_records(
    r_min: f64,
    r_max: f64,
    r_steps: usize,
    p_min: f64,
    p_max: f64,
    p_steps: usize,
) -> Vec<SweepRecord> {
    let points: Vec<(f64, f64)> = (0..r_steps)
        .flat_map(|i| {
            let r = grid_value(r_min, r_max, r_steps, i);
            (0..p_steps).map(move |j| (r, grid_value(p_min, p_max, p_steps, j)))
        })
        .collect();
    points.into_par_iter().map(|(r, p)| point_record(r, p)).collect()
}

/// Renders records as CSV: pinned header, floats at 9 significant digits,
/// booleans as 0/1. Byte-identical for identical inputs.
pub fn render_csv(records: &[SweepRecord]) -> String {
    let bit = |b: bool| if b { "1" } else { "0" };
    let mut out = String::with_capacity(32 + records.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_sig9(rec.r),
            fmt_sig9(rec.p),
            fmt_sig9(rec.nu),
            fmt_sig9(rec.nu_tilde),
            fmt_sig9(rec.purity),
            fmt_sig9(rec.s),
            fmt_sig9(rec.eof),
            fmt_sig9(rec.discord),
            fmt_sig9(rec.mutual_information),
            bit(rec.ppt_entangled),
            bit(rec.steerable),
            bit(rec.ccnr_detects),
            bit(rec.eof_exceeds_half_mi),
        ));
    }
    out
}

/// Shortest decimal rendering of x rounded to 9 significant digits:
/// trailing zeros dropped, plain notation for moderate exponents,
/// e-notation beyond that. Deterministic for identical input bits.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{x:.8e}");
    let (mantissa, exponent) = formatted.split_once('e').expect("e-format always has exponent");
    let exp: i32 = exponent.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let body = if (-12..=12).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if digits.len() > int_len {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            } else {
                format!("{}{}", digits, "0".repeat(int_len - digits.len()))
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        }
    } else if digits.len() > 1 {
        format!("{}.{}e{}", &digits[..1], &digits[1..], exp)
    } else {
        format!("{digits}e{exp}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits_shortest_form() {
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-0.0), "0");
        assert_eq!(fmt_sig9(1.0), "1");
        assert_eq!(fmt_sig9(0.5), "0.5");
        assert_eq!(fmt_sig9(2.0), "2");
        assert_eq!(fmt_sig9(100.0), "100");
        assert_eq!(fmt_sig9(3.296299032779973), "3.29629903");
        assert_eq!(fmt_sig9(1.948765487160122), "1.94876549");
        assert_eq!(fmt_sig9(0.09203368130473502), "0.0920336813");
        assert_eq!(fmt_sig9(2.9677421506213209), "2.96774215");
        assert_eq!(fmt_sig9(0.2615941559557649), "0.261594156");
        assert_eq!(fmt_sig9(-0.2384058440442351), "-0.238405844");
        assert_eq!(fmt_sig9(1.8134302039235094), "1.8134302");
        assert_eq!(fmt_sig9(1.25e-13), "1.25e-13");
        assert_eq!(fmt_sig9(-3.0e13), "-3e13");
        assert_eq!(fmt_sig9(999999999.5), "1000000000");
        assert_eq!(fmt_sig9(1e-12), "0.000000000001");
    }

    #[test]
    fn grid_hits_both_endpoints_exactly() {
        assert_eq!(grid_value(0.01, 2.0, 5, 0), 0.01);
        assert_eq!(grid_value(0.01, 2.0, 5, 4), 2.0);
        assert_eq!(grid_value(0.3, 0.3, 1, 0), 0.3);
        assert_eq!(grid_value(0.0, 1.0, 3, 1), 0.5);
    }

    #[test]
    fn sweep_rows_are_sorted_and_unique() {
        let records = sweep_records(0.0, 2.0, 4, 0.0, 1.0, 3);
        assert_eq!(records.len(), 12);
        for pair in records.windows(2) {
            let a = (pair[0].r, pair[0].p);
            let b = (pair[1].r, pair[1].p);
            assert!(a < b, "rows out of order: {a:?} vs {b:?}");
        }
        assert_eq!(records[0].r, 0.0);
        assert_eq!(records[11].r, 2.0);
        assert_eq!(records[11].p, 1.0);
    }

    #[test]
    fn csv_rendering_is_deterministic() {
        let a = render_csv(&sweep_records(0.0, 1.0, 3, 0.0, 1.0, 3));
        let b = render_csv(&sweep_records(0.0, 1.0, 3, 0.0, 1.0, 3));
        assert_eq!(a, b);
        assert!(a.starts_with(CSV_HEADER));
        assert!(a.contains("\n0,0.5,1,1,1,0,0,0,0,0,0,0,0\n"));
    }
}
