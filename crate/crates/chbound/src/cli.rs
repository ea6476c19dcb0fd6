//! Command-line front end.
//!
//! Subcommands: `params`, `bound`, `verify`, `sweep`, `appendix-table`.
//! Data goes to stdout, diagnostics to stderr. Exit status 0 = success,
//! 1 = verification failure, 2 = usage or validation error.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::bounds::{
    asymptotic_coefficient, beta0_bound, castelnuovo_bound, clifford_h0_upper, d0_threshold,
    g0_bound, g_candidates_r9, g_interval, g_sharp_r6, projection_range, surface_sections_lower,
    BoundResult, SectionData,
};
use crate::params::{derive, derive_ri, ProblemInstance};
use crate::sweep::{emit_csv, emit_json, sweep, JsonInt};
use crate::verify::{
    appendix_r4_table, suite_all, suite_appendix, verify_r6_sharpness_identity, verify_remark_r1,
    verify_stima_numeric, VerificationReport,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "chbound",
    version,
    about = "Exact genus bounds for projective curves avoiding low-degree hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the derived division parameters for (r, i) and optionally d
    Params {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, value_parser = parse_bigint)]
        d: Option<BigInt>,
    },
    /// Compute one bound and print it with its regime metadata
    Bound {
        #[arg(long, value_enum)]
        kind: BoundKind,
        /// Ambient dimension (arbitrary precision for kind castelnuovo)
        #[arg(long, value_parser = parse_bigint)]
        r: Option<BigInt>,
        /// Curve degree
        #[arg(long, value_parser = parse_bigint)]
        d: Option<BigInt>,
        /// Hypersurface degree
        #[arg(long)]
        i: Option<u32>,
        /// Surface degree (kinds clifford, suff)
        #[arg(long, value_parser = parse_bigint)]
        s: Option<BigInt>,
        /// Sectional genus (kinds clifford, suff, range)
        #[arg(long, value_parser = parse_bigint)]
        pi: Option<BigInt>,
        /// Twist (kind clifford)
        #[arg(long)]
        j: Option<u32>,
    },
    /// Run a verification suite; non-zero exit iff any case fails
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 60)]
        r_max: u32,
        #[arg(long, default_value_t = 30)]
        i_max: u32,
        #[arg(long, default_value_t = 100_000)]
        d_max: u64,
    },
    /// Stream the bound table for inclusive ranges `A..B`
    Sweep {
        #[arg(long, value_parser = parse_range)]
        r: (u64, u64),
        #[arg(long, value_parser = parse_range)]
        i: (u64, u64),
        #[arg(long, value_parser = parse_range)]
        d: (u64, u64),
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        /// Worker threads for row computation (output is identical for any value)
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the sixteen quartic-space margin rows
    AppendixTable {
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Castelnuovo,
    G0,
    Beta0,
    Clifford,
    Suff,
    Range,
    D0,
    R6,
    R9,
    Interval,
    Asymptotic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Stima,
    Appendix,
    R6,
    RemarkR1,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    s.parse().map_err(|_| format!("invalid integer: {s}"))
}

/// Inclusive range `A..B`; a bare `A` means `A..A`.
fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let lo: u64 = a.trim().parse().map_err(|_| format!("invalid range start: {a}"))?;
    let hi: u64 = b.trim().parse().map_err(|_| format!("invalid range end: {b}"))?;
    if lo > hi {
        return Err(format!("empty range: {s}"));
    }
    Ok((lo, hi))
}

/// Parses and executes argv, writing data to `out` and diagnostics to
/// `err`. Returns the process exit status.
pub fn run<I, T, W, E>(argv: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(RunError::Lib(e)) => {
            let _ = writeln!(err, "chbound: {e}");
            2
        }
        Err(RunError::Io(e)) => {
            let _ = writeln!(err, "chbound: output error: {e}");
            2
        }
    }
}

enum RunError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Lib(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn execute<W: Write>(cmd: Cmd, out: &mut W) -> std::result::Result<i32, RunError> {
    match cmd {
        Cmd::Params { r, i, d } => {
            let value = match d {
                Some(d) => {
                    let p = derive(&ProblemInstance::new(r, d.clone(), i)?)?;
                    json!({
                        "r": r, "i": i, "d": JsonInt(d),
                        "alpha": JsonInt(p.alpha), "beta": JsonInt(p.beta),
                        "s0": JsonInt(p.s0), "m": JsonInt(p.m),
                        "epsilon": JsonInt(p.epsilon), "c0": JsonInt(p.c0),
                        "gamma": JsonInt(p.gamma), "mu": p.mu,
                    })
                }
                None => {
                    let p = derive_ri(r, i)?;
                    json!({
                        "r": r, "i": i, "d": null,
                        "alpha": JsonInt(p.alpha), "beta": JsonInt(p.beta),
                        "s0": JsonInt(p.s0), "m": null,
                        "epsilon": null, "c0": JsonInt(p.c0),
                        "gamma": JsonInt(p.gamma), "mu": p.mu,
                    })
                }
            };
            writeln!(out, "{value}")?;
            Ok(0)
        }
        Cmd::Bound { kind, r, d, i, s, pi, j } => {
            let value = bound_json(kind, r, d, i, s, pi, j)?;
            writeln!(out, "{value}")?;
            Ok(0)
        }
        Cmd::Verify { suite, r_max, i_max, d_max } => {
            let reports = match suite {
                Suite::Stima => vec![verify_stima_numeric(r_max, i_max)?],
                Suite::Appendix => vec![suite_appendix(r_max, i_max)?],
                Suite::R6 => vec![verify_r6_sharpness_identity(d_max)?],
                Suite::RemarkR1 => vec![verify_remark_r1(r_max, i_max)?],
                Suite::All => suite_all(r_max, i_max, d_max)?,
            };
            let ok = reports.iter().all(VerificationReport::passed);
            match &reports[..] {
                [single] => writeln!(out, "{}", serde_json::to_string(single).unwrap())?,
                many => writeln!(out, "{}", serde_json::to_string(many).unwrap())?,
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Sweep { r, i, d, format, threads } => {
            let narrow = |v: (u64, u64), what: &str| -> Result<(u32, u32)> {
                let lo = u32::try_from(v.0)
                    .map_err(|_| Error::Domain(format!("{what} range start too large")))?;
                let hi = u32::try_from(v.1)
                    .map_err(|_| Error::Domain(format!("{what} range end too large")))?;
                Ok((lo, hi))
            };
            let (r_lo, r_hi) = narrow(r, "r")?;
            let (i_lo, i_hi) = narrow(i, "i")?;
            let result = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::Domain(format!("thread pool: {e}")))?
                    .install(|| sweep(r_lo..=r_hi, i_lo..=i_hi, d.0..=d.1)),
                None => sweep(r_lo..=r_hi, i_lo..=i_hi, d.0..=d.1),
            }?;
            match format {
                SweepFormat::Csv => emit_csv(&result.rows, out)?,
                SweepFormat::Json => emit_json(&result.rows, out)?,
            }
            writeln!(
                std::io::stderr(),
                "# rows: {}, skipped (d <= s0): {}",
                result.rows.len(),
                result.skipped
            )
            .ok();
            Ok(0)
        }
        Cmd::AppendixTable { format } => {
            let table = appendix_r4_table();
            match format {
                TableFormat::Text => {
                    writeln!(out, "{:>4} {:>4} {:>4} {:>6} {:>6}", "i", "s0", "c0", "gamma", "value")?;
                    for case in &table {
                        writeln!(
                            out,
                            "{:>4} {:>4} {:>4} {:>6} {:>6}",
                            case.i, case.s0, case.c0, case.gamma, case.value
                        )?;
                    }
                }
                TableFormat::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .map(|c| {
                            json!({
                                "i": c.i,
                                "s0": JsonInt(c.s0.clone()),
                                "c0": JsonInt(c.c0.clone()),
                                "gamma": JsonInt(c.gamma.clone()),
                                "value": JsonInt(c.value.clone()),
                            })
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Array(rows))?;
                }
            }
            Ok(0)
        }
    }
}

fn bound_result_json(kind: &str, b: BoundResult) -> serde_json::Value {
    json!({
        "kind": kind,
        "value": JsonInt(b.value),
        "regime": b.regime,
        "sharp": b.sharp,
        "valid_for_theorem": b.valid_for_theorem,
        "threshold_d0": JsonInt(b.threshold_d0),
    })
}

#[allow(clippy::too_many_arguments)]
fn bound_json(
    kind: BoundKind,
    r: Option<BigInt>,
    d: Option<BigInt>,
    i: Option<u32>,
    s: Option<BigInt>,
    pi: Option<BigInt>,
    j: Option<u32>,
) -> Result<serde_json::Value> {
    let need = |opt: Option<BigInt>, flag: &str| {
        opt.ok_or_else(|| Error::Domain(format!("--{flag} is required for this bound kind")))
    };
    let need_u32 = |opt: Option<u32>, flag: &str| {
        opt.ok_or_else(|| Error::Domain(format!("--{flag} is required for this bound kind")))
    };
    let small_r = |opt: Option<BigInt>| -> Result<u32> {
        need(opt, "r")?
            .to_u32()
            .ok_or_else(|| Error::Domain("--r does not fit in u32".into()))
    };
    Ok(match kind {
        BoundKind::Castelnuovo => {
            let value = castelnuovo_bound(&need(r, "r")?, &need(d, "d")?)?;
            json!({
                "kind": "castelnuovo",
                "value": JsonInt(value),
                "regime": "classical",
                "sharp": "sharp",
                "valid_for_theorem": true,
                "threshold_d0": null,
            })
        }
        BoundKind::G0 => {
            bound_result_json("g0", g0_bound(small_r(r)?, &need(d, "d")?, need_u32(i, "i")?)?)
        }
        BoundKind::Beta0 => {
            bound_result_json("beta0", beta0_bound(small_r(r)?, &need(d, "d")?, need_u32(i, "i")?)?)
        }
        BoundKind::Clifford => {
            let sec = SectionData::new(
                need(s, "s")?,
                need(pi, "pi")?,
                need_u32(j, "j")?,
                r.and_then(|v| v.to_u32()).unwrap_or(2),
            )?;
            json!({ "kind": "clifford", "value": JsonInt(clifford_h0_upper(&sec)) })
        }
        BoundKind::Suff => {
            let value = surface_sections_lower(
                small_r(r)?,
                &need(s, "s")?,
                &need(pi, "pi")?,
                need_u32(i, "i")?,
            );
            json!({ "kind": "suff", "value": JsonInt(value) })
        }
        BoundKind::Range => {
            let (low, high) = projection_range(small_r(r)?, need_u32(i, "i")?, &need(pi, "pi")?)?;
            json!({ "kind": "range", "low": JsonInt(low), "high": JsonInt(high) })
        }
        BoundKind::D0 => {
            let value = d0_threshold(small_r(r)?, need_u32(i, "i")?)?;
            json!({ "kind": "d0", "value": JsonInt(value) })
        }
        BoundKind::R6 => bound_result_json("r6", g_sharp_r6(&need(d, "d")?)?),
        BoundKind::R9 => {
            let list = g_candidates_r9(small_r(r)?, &need(d, "d")?)?;
            json!({
                "kind": "r9",
                "candidates": list.iter().cloned().map(JsonInt).collect::<Vec<_>>(),
            })
        }
        BoundKind::Interval => {
            let (low, high) = g_interval(small_r(r)?, &need(d, "d")?)?;
            json!({ "kind": "interval", "low": JsonInt(low), "high": JsonInt(high) })
        }
        BoundKind::Asymptotic => {
            let coeff = asymptotic_coefficient(small_r(r)?, need_u32(i, "i")?)?;
            json!({
                "kind": "asymptotic",
                "numerator": JsonInt(coeff.numer().clone()),
                "denominator": JsonInt(coeff.denom().clone()),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("chbound").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn params_prints_derived_values() {
        let (code, out, _) = run_cli(&["params", "--r", "6", "--i", "2", "--d", "27"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["s0"], 9);
        assert_eq!(v["beta"], 1);
        assert_eq!(v["c0"], 1);
        assert_eq!(v["gamma"], 0);
        assert_eq!(v["m"], 2);
        assert_eq!(v["epsilon"], 8);
    }

    #[test]
    fn params_without_d_nulls_the_degree_fields() {
        let (code, out, _) = run_cli(&["params", "--r", "6", "--i", "2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["m"].is_null());
        assert!(v["epsilon"].is_null());
        assert_eq!(v["s0"], 9);
    }

    #[test]
    fn bound_g0_frozen_example() {
        let (code, out, _) = run_cli(&["bound", "--kind", "g0", "--r", "6", "--i", "2", "--d", "27"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], 28);
        assert_eq!(v["regime"], "g0");
        assert_eq!(v["sharp"], "sharp");
        assert_eq!(v["valid_for_theorem"], true);
        assert_eq!(v["threshold_d0"], 12_999_629);
    }

    #[test]
    fn bound_validation_error_exits_2() {
        let (code, _, err) = run_cli(&["bound", "--kind", "g0", "--r", "7", "--i", "2", "--d", "27"]);
        assert_eq!(code, 2);
        assert!(err.contains("beta0_bound"), "stderr: {err}");
    }

    #[test]
    fn bound_missing_flag_exits_2() {
        let (code, _, err) = run_cli(&["bound", "--kind", "g0", "--r", "6", "--i", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("--d"), "stderr: {err}");
    }

    #[test]
    fn unknown_subcommand_exits_2() {
        let (code, _, _) = run_cli(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_cli(&["params", "--r", "6", "--i", "2", "--bogus", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("appendix-table"));
    }

    #[test]
    fn verify_r6_passes() {
        let (code, out, _) = run_cli(&["verify", "--suite", "r6", "--d-max", "300"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["suite"], "r6");
        assert_eq!(v["cases_failed"], 0);
    }

    #[test]
    fn verify_all_is_an_array() {
        let (code, out, _) = run_cli(&[
            "verify", "--suite", "all", "--r-max", "8", "--i-max", "4", "--d-max", "60",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
    }

    #[test]
    fn sweep_csv_contract_line() {
        let (code, out, err) = run_cli(&["sweep", "--r", "6", "--i", "2", "--d", "27..28"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), crate::sweep::CSV_HEADER);
        assert!(lines.next().unwrap().ends_with(",28,,g0,true,false"));
        assert!(err.contains("rows: 2"));
    }

    #[test]
    fn appendix_table_text_has_sixteen_rows() {
        let (code, out, _) = run_cli(&["appendix-table"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 17);
        assert!(lines[0].contains("value"));
        // row for i = 16 shows value 18
        let row16 = lines.iter().find(|l| l.trim_start().starts_with("16 ")).unwrap();
        assert!(row16.trim_end().ends_with("18"), "{row16}");
    }

    #[test]
    fn bound_r9_lists_candidates() {
        let (code, out, _) = run_cli(&["bound", "--kind", "r9", "--r", "9", "--d", "198"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["candidates"], json!([980, 981, 982, 991]));
    }
}
