//! Argument parsing and report rendering for the `smallcover` binary.
//!
//! Every command writes to a caller-supplied sink, so output can be captured
//! in tests. Output is a pure function of the flags.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use smallcover::asymptotics::{
    compute_constants, ln_count, AsymptoticConstants, DEFAULT_TOLERANCE, DEFAULT_TRUNCATION,
};
use smallcover::correspondence::phi;
use smallcover::counting::{sequence_table_with, CountTable};
use smallcover::digraph::enumerate_digraphs;
use smallcover::{Digraph, EnumerationCap};
use thiserror::Error;

use crate::formats::{format_graph, format_matrix, matrix_rows};
use crate::parallel::tally_parallel;
use crate::verify::{run_verify, VerifyConfig, VerifyReport};

#[derive(Debug, Parser)]
#[command(
    name = "smallcover",
    version,
    about = "Exact counts of acyclic digraphs and orientable small covers over cubes"
)]
pub struct Cli {
    /// Output format; each command has its own default (verify: json, others: text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for brute-force counting.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Largest n accepted for exhaustive enumeration (at most 8).
    #[arg(long = "enum-cap", global = true, default_value_t = EnumerationCap::DEFAULT.get())]
    pub enum_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// All acyclic digraphs, R_n.
    R,
    /// Acyclic digraphs with even out-degrees, O_n.
    O,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print R_n or O_n.
    Count {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Count by exhaustive enumeration instead of the closed formula.
        #[arg(long)]
        brute_force: bool,
    },
    /// Print rows (n, R_n, O_n) for n = 0..=max_n.
    Table {
        #[arg(long)]
        max_n: usize,
    },
    /// List acyclic digraphs on n vertices in canonical code order.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only digraphs whose out-degrees are all even.
        #[arg(long)]
        orientable: bool,
        /// Also print each digraph's characteristic matrix.
        #[arg(long)]
        matrices: bool,
    },
    /// Check every closed formula and identity against its oracle.
    Verify {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, visible_alias = "order", default_value_t = 12)]
        series_order: usize,
        /// Only the generating-function identities.
        #[arg(long)]
        series: bool,
    },
    /// Print alpha, C, K and K/C.
    Constants {
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Compare the asymptotic estimates with exact values at n.
    Asymptotic {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] smallcover::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    VerificationFailed = 1,
    UsageError = 2,
}

impl Cli {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn cap(&self) -> EnumerationCap {
        EnumerationCap::new(self.enum_cap)
    }
}

/// Runs a parsed command. Errors map to [`Status::UsageError`].
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    run_with_table(cli, &mut CountTable::new(), out)
}

/// Like [`run`], with the formula side drawn from `table`.
pub fn run_with_table(
    cli: &Cli,
    table: &mut CountTable,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    match &cli.command {
        Command::Count {
            kind,
            n,
            brute_force,
        } => cmd_count(cli, table, *kind, *n, *brute_force, out)?,
        Command::Table { max_n } => cmd_table(cli, table, *max_n, out)?,
        Command::Enumerate {
            n,
            orientable,
            matrices,
        } => cmd_enumerate(cli, *n, *orientable, *matrices, out)?,
        Command::Verify {
            n_max,
            series_order,
            series,
        } => {
            let config = VerifyConfig {
                n_max: *n_max,
                series_order: *series_order,
                series_only: *series,
                jobs: cli.jobs as usize,
                cap: cli.cap(),
            };
            let report = run_verify(&config, table)?;
            write_verify(cli.format_or(Format::Json), &report, *series, out)?;
            if !report.pass {
                return Ok(Status::VerificationFailed);
            }
        }
        Command::Constants {
            digits,
            truncation,
            tolerance,
        } => {
            let constants = compute_constants(*truncation, *tolerance)?;
            write_constants(cli.format_or(Format::Text), &constants, *digits, out)?;
        }
        Command::Asymptotic { n } => cmd_asymptotic(cli, table, *n, out)?,
    }
    Ok(Status::Success)
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct CountOutput {
    kind: &'static str,
    n: usize,
    method: &'static str,
    value: String,
}

fn cmd_count(
    cli: &Cli,
    table: &mut CountTable,
    kind: Kind,
    n: usize,
    brute_force: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let value = if brute_force {
        let tally = tally_parallel(n, cli.jobs as usize, cli.cap())?;
        match kind {
            Kind::R => tally.acyclic,
            Kind::O => tally.orientable,
        }
        .to_string()
    } else {
        match kind {
            Kind::R => table.robinson_r(n).to_string(),
            Kind::O => table.orientable_o(n).to_string(),
        }
    };
    let kind = match kind {
        Kind::R => "r",
        Kind::O => "o",
    };
    let method = if brute_force {
        "brute-force"
    } else {
        "formula"
    };
    match cli.format_or(Format::Text) {
        Format::Text => writeln!(out, "{value}")?,
        Format::Csv => write!(out, "kind,n,method,value\n{kind},{n},{method},{value}\n")?,
        Format::Json => json_line(
            out,
            &CountOutput {
                kind,
                n,
                method,
                value,
            },
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    r: String,
    o: String,
}

#[derive(Serialize)]
struct TableOutput {
    max_n: usize,
    rows: Vec<TableRow>,
}

fn cmd_table(
    cli: &Cli,
    table: &mut CountTable,
    max_n: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rows: Vec<TableRow> = sequence_table_with(table, max_n)
        .into_iter()
        .map(|row| TableRow {
            n: row.n,
            r: row.r.to_string(),
            o: row.o.to_string(),
        })
        .collect();
    match cli.format_or(Format::Text) {
        Format::Text => {
            let nw = max_n.to_string().len().max(1);
            let rw = rows.iter().map(|r| r.r.len()).max().unwrap_or(0).max(3);
            let ow = rows.iter().map(|r| r.o.len()).max().unwrap_or(0).max(3);
            writeln!(out, "{:>nw$}  {:>rw$}  {:>ow$}", "n", "R_n", "O_n")?;
            for row in &rows {
                writeln!(out, "{:>nw$}  {:>rw$}  {:>ow$}", row.n, row.r, row.o)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,R_n,O_n")?;
            for row in &rows {
                writeln!(out, "{},{},{}", row.n, row.r, row.o)?;
            }
        }
        Format::Json => json_line(out, &TableOutput { max_n, rows })?,
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumeratedGraph {
    code: u64,
    edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<String>>,
}

#[derive(Serialize)]
struct EnumerateOutput {
    n: usize,
    orientable_only: bool,
    graphs: Vec<EnumeratedGraph>,
    count: String,
}

fn cmd_enumerate(
    cli: &Cli,
    n: usize,
    orientable_only: bool,
    matrices: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let selected = enumerate_digraphs(n, cli.cap())?
        .with_codes()
        .filter(move |(_, g)| g.is_acyclic() && (!orientable_only || g.all_out_degrees_even()));
    let format = cli.format_or(Format::Text);
    let mut count = 0u64;
    match format {
        Format::Text => {
            for (code, g) in selected {
                count += 1;
                writeln!(out, "# code {code}")?;
                out.write_all(format_graph(&g).as_bytes())?;
                if matrices {
                    writeln!(out, "# phi")?;
                    out.write_all(format_matrix(&phi(&g)).as_bytes())?;
                }
                writeln!(out)?;
            }
            writeln!(out, "count: {count}")?;
        }
        Format::Csv => {
            writeln!(out, "code,edges{}", if matrices { ",matrix" } else { "" })?;
            for (code, g) in selected {
                let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}->{v}")).collect();
                write!(out, "{code},{}", edges.join(" "))?;
                if matrices {
                    write!(out, ",{}", matrix_rows(&phi(&g)).join("/"))?;
                }
                writeln!(out)?;
            }
        }
        Format::Json => {
            let graphs: Vec<EnumeratedGraph> = selected
                .map(|(code, g): (u64, Digraph)| EnumeratedGraph {
                    code,
                    edges: g.edges().map(|(u, v)| [u, v]).collect(),
                    matrix: matrices.then(|| matrix_rows(&phi(&g))),
                })
                .collect();
            let count = graphs.len().to_string();
            json_line(
                out,
                &EnumerateOutput {
                    n,
                    orientable_only,
                    graphs,
                    count,
                },
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesOnlyOutput<'a> {
    pass: bool,
    identities: &'a [crate::verify::SeriesCheck],
}

fn write_verify(
    format: Format,
    report: &VerifyReport,
    series_only: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Json if series_only => json_line(
            out,
            &SeriesOnlyOutput {
                pass: report.pass,
                identities: &report.series,
            },
        )?,
        Format::Json => json_line(out, report)?,
        Format::Text => {
            for c in &report.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", c.check, c.detail)?;
            }
            for s in &report.series {
                let tag = if s.pass { "PASS" } else { "FAIL" };
                match s.first_failure {
                    None => writeln!(out, "{tag} {} (order {})", s.identity, s.order)?,
                    Some(i) => writeln!(
                        out,
                        "{tag} {} (order {}): first failure at index {i}",
                        s.identity, s.order
                    )?,
                }
            }
            match &report.first_failure {
                None => writeln!(out, "all checks passed")?,
                Some(f) => writeln!(out, "first failure: {}: {}", f.check, f.detail)?,
            }
        }
        Format::Csv => {
            writeln!(out, "check,pass,detail")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},\"{}\"",
                    c.check,
                    c.pass,
                    c.detail.replace('"', "\"\"")
                )?;
            }
            for s in &report.series {
                let detail = s.first_failure.map_or(format!("order {}", s.order), |i| {
                    format!("order {}, first failure {i}", s.order)
                });
                writeln!(out, "\"{}\",{},\"{detail}\"", s.identity, s.pass)?;
            }
        }
    }
    Ok(())
}

/// Rounds to `digits` decimals through the same fixed-point text the text
/// report prints, so JSON and text agree digit for digit.
fn rounded(x: f64, digits: usize) -> f64 {
    format!("{x:.digits$}")
        .parse()
        .expect("formatted float parses")
}

#[derive(Serialize)]
struct ConstantsOutput {
    alpha: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "K")]
    k: f64,
    #[serde(rename = "K_over_C")]
    ratio_factor: f64,
    #[serde(rename = "one_minus_F_2alpha")]
    ratio_factor_closed_form: f64,
    digits: usize,
    truncation: usize,
    tolerance: f64,
    newton_iterations: usize,
}

fn write_constants(
    format: Format,
    k: &AsymptoticConstants,
    digits: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let named = [
        ("alpha", k.alpha),
        ("C", k.c),
        ("K", k.k),
        ("K/C", k.ratio_factor),
        ("1-F(2alpha)", k.ratio_factor_closed_form),
    ];
    match format {
        Format::Text => {
            for (name, value) in named {
                writeln!(out, "{name:<11} = {value:>w$.digits$}", w = digits + 3)?;
            }
            writeln!(
                out,
                "truncation = {}, tolerance = {:e}, newton iterations = {}",
                k.truncation, k.tolerance, k.iterations
            )?;
        }
        Format::Csv => {
            writeln!(out, "name,value")?;
            for (name, value) in named {
                writeln!(out, "{name},{value:.digits$}")?;
            }
            writeln!(out, "truncation,{}", k.truncation)?;
            writeln!(out, "tolerance,{:e}", k.tolerance)?;
            writeln!(out, "newton_iterations,{}", k.iterations)?;
        }
        Format::Json => json_line(
            out,
            &ConstantsOutput {
                alpha: rounded(k.alpha, digits),
                c: rounded(k.c, digits),
                k: rounded(k.k, digits),
                ratio_factor: rounded(k.ratio_factor, digits),
                ratio_factor_closed_form: rounded(k.ratio_factor_closed_form, digits),
                digits,
                truncation: k.truncation,
                tolerance: k.tolerance,
                newton_iterations: k.iterations,
            },
        )?,
    }
    Ok(())
}

/// `e^{ln_value}` in scientific notation without overflowing `f64`.
fn scientific_from_ln(ln_value: f64) -> String {
    let log10 = ln_value / std::f64::consts::LN_10;
    let mut exponent = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exponent);
    if format!("{mantissa:.6}").starts_with("10") {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    format!("{mantissa:.6}e{exponent}")
}

#[derive(Serialize)]
struct AsymptoticOutput {
    n: usize,
    r_exact: String,
    r_estimate: String,
    r_exact_over_estimate: f64,
    o_exact: String,
    o_estimate: String,
    o_exact_over_estimate: f64,
    ratio_exact: f64,
    ratio_estimate: f64,
    ratio_exact_over_estimate: f64,
}

fn cmd_asymptotic(
    cli: &Cli,
    table: &mut CountTable,
    n: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let k = AsymptoticConstants::standard()?;
    let r = table.robinson_r(n).clone();
    let o = table.orientable_o(n);
    let (ln_r, ln_o) = (ln_count(&r), ln_count(&o));
    let (est_r, est_o) = (k.log_r_estimate(n), k.log_o_estimate(n));
    let ratio_exact = (ln_o - ln_r).exp();
    let ratio_estimate = k.ratio_estimate(n);
    let report = AsymptoticOutput {
        n,
        r_exact: r.to_string(),
        r_estimate: scientific_from_ln(est_r),
        r_exact_over_estimate: (ln_r - est_r).exp(),
        o_exact: o.to_string(),
        o_estimate: scientific_from_ln(est_o),
        o_exact_over_estimate: (ln_o - est_o).exp(),
        ratio_exact,
        ratio_estimate,
        ratio_exact_over_estimate: ratio_exact / ratio_estimate,
    };
    match cli.format_or(Format::Text) {
        Format::Text => {
            writeln!(out, "n = {n}")?;
            writeln!(out, "R_n exact            = {}", report.r_exact)?;
            writeln!(out, "R_n estimate         = {}", report.r_estimate)?;
            writeln!(
                out,
                "R_n exact/estimate   = {:.9}",
                report.r_exact_over_estimate
            )?;
            writeln!(out, "O_n exact            = {}", report.o_exact)?;
            writeln!(out, "O_n estimate         = {}", report.o_estimate)?;
            writeln!(
                out,
                "O_n exact/estimate   = {:.9}",
                report.o_exact_over_estimate
            )?;
            writeln!(out, "O_n/R_n exact        = {:.9e}", report.ratio_exact)?;
            writeln!(out, "O_n/R_n (K/C)/2^n    = {:.9e}", report.ratio_estimate)?;
            writeln!(
                out,
                "exact/estimate       = {:.9}",
                report.ratio_exact_over_estimate
            )?;
        }
        Format::Csv => {
            writeln!(out, "quantity,value")?;
            writeln!(out, "n,{n}")?;
            writeln!(out, "r_exact,{}", report.r_exact)?;
            writeln!(out, "r_estimate,{}", report.r_estimate)?;
            writeln!(out, "o_exact,{}", report.o_exact)?;
            writeln!(out, "o_estimate,{}", report.o_estimate)?;
            writeln!(out, "ratio_exact,{:e}", report.ratio_exact)?;
            writeln!(out, "ratio_estimate,{:e}", report.ratio_estimate)?;
        }
        Format::Json => json_line(out, &report)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Status, String) {
        let cli = Cli::try_parse_from(std::iter::once("smallcover").chain(args.iter().copied()))
            .expect("valid arguments");
        let mut out = Vec::new();
        let status = run(&cli, &mut out).unwrap();
        (status, String::from_utf8(out).unwrap())
    }

    #[test]
    fn count_examples() {
        assert_eq!(run_args(&["count", "o", "--n", "6"]).1, "74581\n");
        assert_eq!(run_args(&["count", "r", "--n", "0"]).1, "1\n");
        assert_eq!(run_args(&["count", "r", "--n", "7"]).1, "1138779265\n");
        assert_eq!(
            run_args(&["count", "r", "--n", "4", "--brute-force", "--jobs", "3"]).1,
            "543\n"
        );
    }

    #[test]
    fn count_json_uses_strings() {
        let (_, out) = run_args(&["--format", "json", "count", "r", "--n", "12"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["value"].is_string());
        assert_eq!(v["value"], smallcover::counting::robinson_r(12).to_string());
    }

    #[test]
    fn table_formats() {
        assert_eq!(
            run_args(&["table", "--max-n", "0", "--format", "csv"]).1,
            "n,R_n,O_n\n0,1,1\n"
        );
        let text = run_args(&["table", "--max-n", "7"]).1;
        assert!(text
            .lines()
            .last()
            .unwrap()
            .ends_with("1138779265  11226874"));
        let json = run_args(&["table", "--max-n", "12", "--format", "json"]).1;
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 13);
    }

    #[test]
    fn enumerate_counts() {
        let (_, out) = run_args(&["enumerate", "--n", "2", "--orientable"]);
        assert_eq!(out, "# code 0\n2\n\ncount: 1\n");
        let (_, out) = run_args(&["enumerate", "--n", "3", "--orientable"]);
        assert!(out.ends_with("count: 4\n"));
        let (_, out) = run_args(&["enumerate", "--n", "3"]);
        assert!(out.ends_with("count: 25\n"));
    }

    #[test]
    fn enumerate_matrices_in_json() {
        let (_, out) = run_args(&["--format", "json", "enumerate", "--n", "2", "--matrices"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], "3");
        let graphs = v["graphs"].as_array().unwrap();
        assert_eq!(graphs[1]["code"], 1);
        assert_eq!(graphs[1]["edges"], serde_json::json!([[0, 1]]));
        assert_eq!(graphs[1]["matrix"], serde_json::json!(["10", "11"]));
    }

    #[test]
    fn enumerate_refuses_above_cap() {
        let cli = Cli::try_parse_from(["smallcover", "enumerate", "--n", "5", "--enum-cap", "4"])
            .unwrap();
        let err = run(&cli, &mut Vec::new()).unwrap_err();
        assert!(err.to_string().contains("enumeration cap"));
    }

    #[test]
    fn constants_text() {
        let (_, out) = run_args(&["constants", "--digits", "3"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "alpha       = -1.488");
        assert_eq!(lines[1], "C           =  1.741");
        assert_eq!(lines[2], "K           =  2.197");
        assert_eq!(lines[3], "K/C         =  1.262");
    }

    #[test]
    fn asymptotic_report() {
        let (_, out) = run_args(&["--format", "json", "asymptotic", "--n", "7"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["r_exact"], "1138779265");
        let ratio = v["ratio_exact_over_estimate"].as_f64().unwrap();
        assert!((ratio - 1.0).abs() < 0.01);
        let (_, big) = run_args(&["asymptotic", "--n", "400"]);
        assert!(big.contains("e"));
    }

    #[test]
    fn scientific_notation() {
        assert_eq!(scientific_from_ln(0.0), "1.000000e0");
        assert_eq!(scientific_from_ln(1e3f64.ln()), "1.000000e3");
        assert_eq!(
            scientific_from_ln(5000.0 * std::f64::consts::LN_10),
            "1.000000e5000"
        );
    }

    #[test]
    fn verify_series_json_shape() {
        let (status, out) = run_args(&["verify", "--series", "--order", "8"]);
        assert_eq!(status, Status::Success);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for item in v["identities"].as_array().unwrap() {
            assert_eq!(item["order"], 8);
            assert_eq!(item["pass"], true);
            assert!(item["first_failure"].is_null());
            assert!(item["identity"].is_string());
        }
    }

    #[test]
    fn corrupted_table_exits_with_failure() {
        let cli = Cli::try_parse_from(["smallcover", "verify", "--n-max", "3"]).unwrap();
        let seed = vec![1u32.into(), 1u32.into(), 4u32.into()];
        let mut table = CountTable::with_seed(seed).unwrap();
        let mut out = Vec::new();
        let status = run_with_table(&cli, &mut table, &mut out).unwrap();
        assert_eq!(status, Status::VerificationFailed);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["first_failure"]["check"], "acyclic_count n=2");
    }

    #[test]
    fn rejects_bad_usage() {
        assert!(Cli::try_parse_from(["smallcover", "count", "x", "--n", "3"]).is_err());
        assert!(Cli::try_parse_from(["smallcover", "count", "r", "--n", "-1"]).is_err());
        assert!(
            Cli::try_parse_from(["smallcover", "--jobs", "0", "table", "--max-n", "2"]).is_err()
        );
    }
}
