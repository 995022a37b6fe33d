//! `subsetsum`: solve, generate, and benchmark SUBSET-SUM instances.
//!
//! Exit status: 0 means SOLVABLE (or success for non-decision commands),
//! 1 means UNSOLVABLE (or a differential disagreement for `verify`),
//! 2 means any error. All configuration is explicit in flags; no
//! environment variables are consulted.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use subsetsum::costmodel::{analytic_cost, Strategy};
use subsetsum::instances::{
    derive_seed, generate, read_instance, read_instance_json, write_instance, write_instance_json,
    Family, GenSpec,
};
use subsetsum::report::{
    fit_exponent, read_report_csv, read_report_jsonl, write_report_csv, write_report_jsonl,
    BenchRecord, CountField,
};
use subsetsum::solvers::{solve, solve_pair, Algorithm, PairVerdict, SolveReport, MAX_BRUTE_N};
use subsetsum::{verify, Instance, Verdict};

#[derive(Parser)]
#[command(
    name = "subsetsum",
    about = "Exact SUBSET-SUM solvers with element-operation accounting",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide one instance and print verdict, witness, and counters
    Solve {
        /// Instance file, or `-` for standard input
        input: String,
        #[arg(long, value_parser = Algorithm::from_str)]
        algo: Algorithm,
        /// Instance encoding
        #[arg(long, value_enum, default_value_t = InstanceFormat::Text)]
        format: InstanceFormat,
    },
    /// Generate an instance from a deterministic spec
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = Family::from_str)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only used by distinct_sums: pick a reachable or unreachable target
        #[arg(long)]
        solvable_hint: Option<bool>,
        #[arg(long, value_enum, default_value_t = InstanceFormat::Text)]
        format: InstanceFormat,
        /// Output file (standard output if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Differential check: all solvers must agree on seeded instances
    Verify {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per dimension
        #[arg(long, default_value_t = 25)]
        reps: u64,
    },
    /// Analytic vs measured cost table for the three pair strategies
    Compare {
        /// Smallest subproblem dimension n (instances carry n+1 weights)
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        /// Keep only odd or only even n from the range
        #[arg(long, value_enum)]
        parity: Parity,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        #[arg(long, value_parser = Family::from_str, default_value = "parity_blocked")]
        family: Family,
    },
    /// Run one algorithm over seeded instances and emit one record per run
    Bench {
        #[arg(long, value_parser = Algorithm::from_str)]
        algo: Algorithm,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_parser = Family::from_str, default_value = "parity_blocked")]
        family: Family,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report file (standard output if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
    },
    /// Fit log2(count) against n over a report's rows
    Fit {
        /// Report file, or `-` for standard input
        input: String,
        #[arg(long, value_parser = Algorithm::from_str)]
        algo: Algorithm,
        #[arg(long, value_parser = CountField::from_str, default_value = "elements_sorted")]
        field: CountField,
        #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
        format: ReportFormat,
        /// Collapse repeated n values before fitting
        #[arg(long, value_enum, default_value_t = Agg::None)]
        agg: Agg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InstanceFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Agg {
    None,
    Min,
    Mean,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Solve {
            input,
            algo,
            format,
        } => cmd_solve(&input, algo, format),
        Cmd::Gen {
            n,
            family,
            seed,
            solvable_hint,
            format,
            out,
        } => cmd_gen(n, family, seed, solvable_hint, format, out),
        Cmd::Verify {
            n_min,
            n_max,
            seed,
            reps,
        } => cmd_verify(n_min, n_max, seed, reps),
        Cmd::Compare {
            n_min,
            n_max,
            parity,
            seed,
            reps,
            family,
        } => cmd_compare(n_min, n_max, parity, seed, reps, family),
        Cmd::Bench {
            algo,
            n_min,
            n_max,
            family,
            reps,
            seed,
            out,
            format,
        } => cmd_bench(algo, n_min, n_max, family, reps, seed, out, format),
        Cmd::Fit {
            input,
            algo,
            field,
            format,
            agg,
        } => cmd_fit(&input, algo, field, format, agg),
    }
}

fn read_source(input: &str) -> Result<String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))
    }
}

fn write_sink(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_instance(text: &str, format: InstanceFormat) -> Result<Instance> {
    match format {
        InstanceFormat::Text => read_instance(text).map_err(Into::into),
        InstanceFormat::Json => read_instance_json(text).map_err(Into::into),
    }
}

fn verdict_str(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Solvable(cert) => format!("SOLVABLE x={cert}"),
        Verdict::Unsolvable => "UNSOLVABLE".to_string(),
    }
}

fn branch_str(branch: &Option<Verdict>) -> String {
    match branch {
        Some(v) => verdict_str(v),
        None => "UNDETERMINED".to_string(),
    }
}

fn counters_line(report: &SolveReport) -> String {
    let cost = &report.cost;
    let mut line = format!(
        "elements_sorted={} elements_scanned={} comparisons={} wall_nanos={}",
        cost.elements_sorted, cost.elements_scanned, cost.comparisons, cost.wall_nanos
    );
    if let Some(units) = cost.analytic_units {
        write!(line, " analytic_units={units}").expect("write to string");
    }
    line
}

fn cmd_solve(input: &str, algo: Algorithm, format: InstanceFormat) -> Result<ExitCode> {
    let inst = parse_instance(&read_source(input)?, format)?;
    let (report, pair): (SolveReport, Option<PairVerdict>) = match solve_pair(algo, &inst) {
        Some(result) => {
            let (pair, report) = result?;
            (report, Some(pair))
        }
        None => (solve(algo, &inst)?, None),
    };
    println!("{}", verdict_str(&report.verdict));
    if let Some(pair) = pair {
        println!(
            "base={} shifted={}",
            branch_str(&pair.base),
            branch_str(&pair.shifted)
        );
    }
    println!("{}", counters_line(&report));
    Ok(if report.verdict.is_solvable() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_gen(
    n: usize,
    family: Family,
    seed: u64,
    solvable_hint: Option<bool>,
    format: InstanceFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let inst = generate(&GenSpec {
        n,
        family,
        seed,
        solvable_hint,
    })?;
    let text = match format {
        InstanceFormat::Text => write_instance(&inst),
        InstanceFormat::Json => write_instance_json(&inst),
    };
    write_sink(out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(n_min: usize, n_max: usize, seed: u64, reps: u64) -> Result<ExitCode> {
    if n_min < 1 || n_min > n_max {
        bail!("need 1 <= n-min <= n-max");
    }
    let mut checked = 0u64;
    let mut disagreements = 0u64;
    for n in n_min..=n_max {
        for rep in 0..reps {
            let spec = GenSpec {
                n,
                family: if rep % 2 == 0 {
                    Family::RestrictedUniform
                } else {
                    Family::Planted
                },
                seed: derive_seed(seed, n as u64, rep),
                solvable_hint: None,
            };
            let inst = generate(&spec)?;
            let mut verdicts: Vec<(Algorithm, bool)> = Vec::new();
            let mut bad_witness = false;

            let mut record = |algorithm: Algorithm, report: &SolveReport| {
                verdicts.push((algorithm, report.verdict.is_solvable()));
                if let Some(cert) = report.verdict.certificate() {
                    if !verify(&inst, cert) {
                        bad_witness = true;
                    }
                }
            };

            if n <= MAX_BRUTE_N {
                record(Algorithm::BruteForce, &solve(Algorithm::BruteForce, &inst)?);
            }
            record(
                Algorithm::MeetInMiddle,
                &solve(Algorithm::MeetInMiddle, &inst)?,
            );
            if n >= 2 {
                for algorithm in [
                    Algorithm::PairIndependent,
                    Algorithm::PairSharedSort,
                    Algorithm::PairMerged,
                ] {
                    record(algorithm, &solve(algorithm, &inst)?);
                }
            }

            checked += 1;
            let agreed = verdicts.windows(2).all(|w| w[0].1 == w[1].1);
            if !agreed || bad_witness {
                disagreements += 1;
                let detail = verdicts
                    .iter()
                    .map(|(a, s)| format!("{a}={}", if *s { "SOLVABLE" } else { "UNSOLVABLE" }))
                    .collect::<Vec<_>>()
                    .join(" ");
                println!(
                    "DISAGREE family={} n={} seed={} witness_ok={} {}",
                    spec.family, spec.n, spec.seed, !bad_witness, detail
                );
            }
        }
    }
    println!(
        "checked {checked} instances across n=[{n_min},{n_max}]: {}",
        if disagreements == 0 {
            "all solvers agree".to_string()
        } else {
            format!("{disagreements} disagreements")
        }
    );
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_compare(
    n_min: usize,
    n_max: usize,
    parity: Parity,
    seed: u64,
    reps: u64,
    family: Family,
) -> Result<ExitCode> {
    if n_min < 1 || n_min > n_max {
        bail!("need 1 <= n-min <= n-max");
    }
    let wanted = match parity {
        Parity::Odd => 1,
        Parity::Even => 0,
    };
    println!(
        "{:>4} {:>4} {:<12} {:>10} {:>10} {:>11} {:>15} {:>16} {:>12}  {}",
        "n",
        "rep",
        "strategy",
        "sort_units",
        "scan_units",
        "total_units",
        "elements_sorted",
        "elements_scanned",
        "comparisons",
        "check"
    );
    let mut all_pass = true;
    for n in (n_min..=n_max).filter(|n| n % 2 == wanted) {
        for rep in 0..reps {
            let spec = GenSpec {
                n: n + 1,
                family,
                seed: derive_seed(seed, n as u64, rep),
                solvable_hint: None,
            };
            let inst = generate(&spec)?;
            let mut totals = Vec::new();
            let mut rows = Vec::new();
            for (algorithm, strategy) in [
                (Algorithm::PairIndependent, Strategy::Independent),
                (Algorithm::PairSharedSort, Strategy::SharedSort),
                (Algorithm::PairMerged, Strategy::Merged),
            ] {
                let report = solve(algorithm, &inst)?;
                let cost = analytic_cost(strategy, n);
                totals.push(cost.total_units);
                rows.push((strategy, cost, report));
            }
            let check = match parity {
                Parity::Odd => {
                    let expected: Vec<_> = [12u128, 9, 8]
                        .into_iter()
                        .map(subsetsum::costmodel::Units::from_integer)
                        .collect();
                    if totals == expected {
                        "12:9:8 PASS"
                    } else {
                        "12:9:8 FAIL"
                    }
                }
                Parity::Even => {
                    if totals[1] == totals[2] && totals[1] < totals[0] {
                        "shared=merged<independent PASS"
                    } else {
                        "shared=merged<independent FAIL"
                    }
                }
            };
            all_pass &= check.ends_with("PASS");
            for (strategy, cost, report) in rows {
                println!(
                    "{:>4} {:>4} {:<12} {:>10} {:>10} {:>11} {:>15} {:>16} {:>12}  {}",
                    n,
                    rep,
                    strategy.label(),
                    cost.sort_units.to_string(),
                    cost.scan_units.to_string(),
                    cost.total_units.to_string(),
                    report.cost.elements_sorted,
                    report.cost.elements_scanned,
                    report.cost.comparisons,
                    check
                );
            }
        }
    }
    if !all_pass {
        bail!("analytic unit checks failed");
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    algo: Algorithm,
    n_min: usize,
    n_max: usize,
    family: Family,
    reps: u64,
    seed: u64,
    out: Option<PathBuf>,
    format: ReportFormat,
) -> Result<ExitCode> {
    if n_min < 1 || n_min > n_max {
        bail!("need 1 <= n-min <= n-max");
    }
    let mut records = Vec::new();
    for n in n_min..=n_max {
        for rep in 0..reps {
            let run_seed = derive_seed(seed, n as u64, rep);
            let spec = GenSpec {
                n,
                family,
                seed: run_seed,
                solvable_hint: None,
            };
            let inst = generate(&spec)?;
            let report = solve(algo, &inst)?;
            records.push(BenchRecord {
                algorithm: algo,
                n,
                seed: run_seed,
                family,
                solvable: report.verdict.is_solvable(),
                elements_sorted: report.cost.elements_sorted,
                elements_scanned: report.cost.elements_scanned,
                comparisons: report.cost.comparisons,
                wall_nanos: report.cost.wall_nanos,
            });
        }
    }
    let text = match format {
        ReportFormat::Csv => write_report_csv(&records),
        ReportFormat::Jsonl => write_report_jsonl(&records),
    };
    write_sink(out.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fit(
    input: &str,
    algo: Algorithm,
    field: CountField,
    format: ReportFormat,
    agg: Agg,
) -> Result<ExitCode> {
    let text = read_source(input)?;
    let records = match format {
        ReportFormat::Csv => read_report_csv(&text)?,
        ReportFormat::Jsonl => read_report_jsonl(&text)?,
    };
    let mut points: Vec<(usize, u64)> = records
        .iter()
        .filter(|r| r.algorithm == algo)
        .map(|r| (r.n, field.of(r)))
        .collect();
    if agg != Agg::None {
        let mut grouped: std::collections::BTreeMap<usize, Vec<u64>> = Default::default();
        for (n, count) in points {
            grouped.entry(n).or_default().push(count);
        }
        points = grouped
            .into_iter()
            .map(|(n, counts)| {
                let value = match agg {
                    Agg::Min => counts.iter().copied().min().expect("nonempty group"),
                    Agg::Mean => {
                        (counts.iter().map(|&c| c as u128).sum::<u128>()
                            / counts.len() as u128) as u64
                    }
                    Agg::None => unreachable!(),
                };
                (n, value)
            })
            .collect();
    }
    let fit = fit_exponent(&points)?;
    println!(
        "algorithm={algo} field={field} points={} n_range=[{},{}] slope={:.6} intercept={:.6} r_squared={:.6}",
        points.len(),
        fit.n_range.0,
        fit.n_range.1,
        fit.slope,
        fit.intercept,
        fit.r_squared
    );
    Ok(ExitCode::SUCCESS)
}
