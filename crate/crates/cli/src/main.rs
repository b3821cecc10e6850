use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperchow::config::{self, CurveFile, UsageError};
use hyperchow::report::{Format, Record, Report};
use hyperchow::{scan, suites};
use hyperchow_core::{four_configuration, hyperelliptic_configuration};
use hyperchow_numerics::{Precision, QuadOptions};
use serde::Serialize;

const EX_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hyperchow", version, about = "Exact cycle checks and regulator integrals on hyperelliptic curves")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Maximum number of quadrature cells per integral.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// double or extended.
    #[arg(long, global = true, env = "HYPERCHOW_PRECISION", default_value = "double")]
    precision: Precision,
    /// Include wall times in reports (they then differ between runs).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Cycle condition, specialization and decomposition checks.
    VerifyCycles {
        /// Curve file; the built-in genus-2 and genus-3 curves when absent.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Random 4-configurations on the built-in curves.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Tabulate I(lambda) over a grid.
    ScanI {
        /// Comma-separated values such as 2,3,5,3/2,2+1i.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Also compute I(1/lambda) and the functional equation residual.
        #[arg(long)]
        paired: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Everything, in one report.
    FullReport {
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 12)]
        cases: usize,
    },
    #[command(flatten)]
    Numeric(NumericCommand),
    /// The numerical commands under one name.
    Numerics {
        #[command(subcommand)]
        command: NumericCommand,
    },
    /// Raw configuration reports and sweeps over t.
    Cycles {
        #[command(subcommand)]
        command: CyclesCommand,
    },
    /// Mumford arithmetic on the Jacobian of a curve file (w1 is the basepoint).
    Jacobian {
        #[command(subcommand)]
        command: JacobianCommand,
    },
    /// Degree-0 divisors, Weil reciprocity, group laws and 2-torsion on random input.
    Properties {
        #[arg(long, default_value_t = 12)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum NumericCommand {
    /// I(lambda) at one point of C minus {0, 1}.
    ILambda {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// I(lambda) - I(1/lambda) against log|lambda|.
    FunctionalEq {
        #[arg(long, allow_hyphen_values = true, default_value = "2,3,5,3/2")]
        lambdas: String,
    },
    /// Covolume and Monte Carlo checks of I(lambda).
    CrossOracle {
        #[arg(long, allow_hyphen_values = true, default_value = "2,3,5,-1,2+1i")]
        covolume: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2,5,2+1i")]
        monte_carlo: String,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
    },
    /// Splitting, masses and I(f, tau_C) on bielliptic genus-2 curves.
    Bielliptic {
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
    },
    /// Pairing of K with tau, on a curve file or on a bielliptic curve.
    PairingK {
        #[arg(long, conflicts_with_all = ["l1", "l2"])]
        curve: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, requires = "l2")]
        l1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "l1")]
        l2: Option<String>,
    },
    /// Genus, ramification and mass checks on an unramified genus-3 double cover.
    Genus3Cover,
}

#[derive(Subcommand)]
enum CyclesCommand {
    /// Configuration reports as JSON: the datum, then Z_t for each t.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Checks over t, from the file or from points of height at most `height`.
    SweepT {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 12)]
        height: i64,
    },
}

#[derive(Subcommand)]
enum JacobianCommand {
    /// Class of a + b, with divisors like "2*0, -1*inf, 10:2310".
    Add {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Reduce a pair (u, v) given by ascending coefficients.
    Reduce {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Whether a degree-0 divisor is principal, with a witness function if so.
    IsPrincipal {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
}

/// What a command produced.
enum Output {
    Report(Report),
    Raw { text: String, code: u8 },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EX_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hyperchow: {e}");
            ExitCode::from(EX_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    let g = &cli.global;
    if !(g.tol > 0.0 && g.tol.is_finite()) {
        return Err(UsageError("--tol must be positive".into()));
    }
    if g.budget == 0 {
        return Err(UsageError("--budget must be positive".into()));
    }
    let opts = QuadOptions { tol: g.tol, budget: g.budget, precision: g.precision, ..QuadOptions::default() };
    let out = command(&cli.command, g, &opts)?;
    let (text, code) = match out {
        Output::Report(r) => {
            let r = if g.timings { r } else { r.without_timings() };
            (r.render(g.format), r.exit_code() as u8)
        }
        Output::Raw { text, code } => (text, code),
    };
    match &g.out {
        Some(p) => std::fs::write(p, text).map_err(|e| UsageError(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(code))
}

fn settings(g: &Global, extra: &[(&str, String)]) -> Vec<(String, String)> {
    let mut s = vec![
        ("tol".to_string(), format!("{:e}", g.tol)),
        ("budget".to_string(), g.budget.to_string()),
        ("seed".to_string(), g.seed.to_string()),
        ("precision".to_string(), format!("{:?}", g.precision).to_lowercase()),
    ];
    s.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    s
}

fn report(name: &str, g: &Global, extra: &[(&str, String)], records: Vec<Record>) -> Output {
    Output::Report(Report::new(name, settings(g, extra), records))
}

fn json<T: Serialize>(value: &T, code: u8) -> Output {
    Output::Raw { text: serde_json::to_string_pretty(value).expect("serializable") + "\n", code }
}

fn command(cmd: &Command, g: &Global, opts: &QuadOptions) -> Result<Output, UsageError> {
    Ok(match cmd {
        Command::VerifyCycles { config: None, random } => {
            report("verify-cycles", g, &[], suites::standard_cycle_suite(g.seed, *random))
        }
        Command::VerifyCycles { config: Some(path), .. } => {
            let setup = CurveFile::load(path)?.setup()?;
            if setup.w2.is_none() {
                return Err(UsageError("verify-cycles needs w2".into()));
            }
            let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            report("verify-cycles", g, &[("config", path.display().to_string())], suites::cycle_suite(&label, &setup, g.seed))
        }
        Command::ScanI { grid, paired, svg } => {
            let rows = scan::scan(&config::complex_list(grid)?, *paired, opts);
            if let Some(p) = svg {
                std::fs::write(p, scan::svg(&rows)).map_err(|e| UsageError(format!("{}: {e}", p.display())))?;
            }
            let code = scan::exit_code(&rows) as u8;
            let text = match g.format {
                Format::Csv => scan::csv(&rows, *paired),
                Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
                Format::Text => scan::text(&rows),
            };
            Output::Raw { text, code }
        }
        Command::FullReport { samples, random, cases } => {
            let o = suites::FullReportOptions {
                quad: opts.clone(),
                seed: g.seed,
                samples: *samples,
                random_data: *random,
                cases: *cases,
            };
            report("full-report", g, &[("samples", samples.to_string())], suites::full_report(&o))
        }
        Command::Numeric(n) | Command::Numerics { command: n } => numeric(n, g, opts)?,
        Command::Cycles { command: CyclesCommand::Verify { config } } => {
            let setup = CurveFile::load(config)?.setup()?;
            let jac = &setup.jac;
            #[derive(Serialize)]
            struct Entry {
                label: String,
                report: hyperchow_core::ConfigurationReport,
            }
            let mut entries = Vec::new();
            if let Some(d) = &setup.datum {
                let (_, r) = four_configuration(jac, &d[0], &d[1], &d[2], &d[3]).map_err(|e| UsageError(e.to_string()))?;
                entries.push(Entry { label: "4-configuration".into(), report: r });
            }
            if !setup.ts.is_empty() {
                let w2 = setup.w2.as_ref().ok_or_else(|| UsageError("Z_t needs w2".into()))?;
                for t in &setup.ts {
                    let (_, r) = hyperelliptic_configuration(jac, w2, t).map_err(|e| UsageError(e.to_string()))?;
                    entries.push(Entry { label: format!("Z_t, t = {t}"), report: r });
                }
            }
            if entries.is_empty() {
                return Err(UsageError("the configuration has neither a datum nor t values".into()));
            }
            let code = if entries.iter().all(|e| e.report.is_cycle) { 0 } else { 1 };
            json(&entries, code)
        }
        Command::Cycles { command: CyclesCommand::SweepT { config, height } } => {
            let setup = CurveFile::load(config)?.setup()?;
            let w2 = setup.w2.as_ref().ok_or_else(|| UsageError("sweep-t needs w2".into()))?;
            let ts = if setup.ts.is_empty() { setup.curve.search_points(*height) } else { setup.ts.clone() };
            if ts.is_empty() {
                return Err(UsageError(format!("no rational points of height at most {height}")));
            }
            let k = hyperchow_core::basic_cycle(&setup.jac, w2).ok();
            let label = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let records = std::thread::scope(|scope| {
                let handles: Vec<_> = ts
                    .iter()
                    .map(|t| scope.spawn(|| suites::t_records(&label, &setup.jac, w2, t, k.as_ref())))
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("sweep worker")).collect()
            });
            report("cycles sweep-t", g, &[("config", config.display().to_string())], records)
        }
        Command::Jacobian { command } => jacobian(command)?,
        Command::Properties { cases } => report("properties", g, &[], suites::algebra_suite(g.seed, *cases)),
    })
}

fn numeric(cmd: &NumericCommand, g: &Global, opts: &QuadOptions) -> Result<Output, UsageError> {
    let degenerate = |l: hyperchow_numerics::Complex64| {
        if l == 0.0.into() || l == 1.0.into() {
            Err(UsageError(format!("lambda = {} is degenerate", config::format_complex(l))))
        } else {
            Ok(l)
        }
    };
    Ok(match cmd {
        NumericCommand::ILambda { lambda } => {
            let l = degenerate(config::complex(lambda)?)?;
            report("i-lambda", g, &[], suites::i_lambda_records(&[l], opts))
        }
        NumericCommand::FunctionalEq { lambdas } => {
            let ls = config::complex_list(lambdas)?.into_iter().map(degenerate).collect::<Result<Vec<_>, _>>()?;
            report("functional-eq", g, &[], suites::functional_equation_records(&ls, opts))
        }
        NumericCommand::CrossOracle { covolume, monte_carlo, samples } => {
            let cv = config::complex_list(covolume)?.into_iter().map(degenerate).collect::<Result<Vec<_>, _>>()?;
            let mc = config::complex_list(monte_carlo)?.into_iter().map(degenerate).collect::<Result<Vec<_>, _>>()?;
            let mut records = suites::covolume_records(&cv, opts);
            records.extend(suites::monte_carlo_records(&mc, *samples, g.seed, opts));
            report("cross-oracle", g, &[("samples", samples.to_string())], records)
        }
        NumericCommand::Bielliptic { l1, l2 } => {
            let (a, b) = (config::complex(l1)?, config::complex(l2)?);
            report("bielliptic", g, &[], suites::bielliptic_records(a, b, opts))
        }
        NumericCommand::PairingK { curve: Some(path), .. } => {
            let file = CurveFile::load(path)?;
            report("pairing-k", g, &[("curve", path.display().to_string())], suites::pairing_file_records(&file, opts)?)
        }
        NumericCommand::PairingK { curve: None, l1, l2 } => {
            let (a, b) = match (l1, l2) {
                (Some(a), Some(b)) => (config::complex(a)?, config::complex(b)?),
                _ => return Err(UsageError("pairing-k needs --curve or --l1 and --l2".into())),
            };
            let records: Vec<Record> = suites::bielliptic_records(a, b, opts)
                .into_iter()
                .filter(|r| r.anchor == suites::anchor::PAIRING || r.anchor == suites::anchor::SWAP)
                .collect();
            report("pairing-k", g, &[], records)
        }
        NumericCommand::Genus3Cover => report("genus3-cover", g, &[], suites::cover_records(opts)),
    })
}

fn jacobian(cmd: &JacobianCommand) -> Result<Output, UsageError> {
    let fail = |e: hyperchow_core::JacobianError| UsageError(e.to_string());
    Ok(match cmd {
        JacobianCommand::Add { config, a, b } => {
            let s = CurveFile::load(config)?.setup()?;
            let (da, db) = (config::divisor(&s.curve, a)?, config::divisor(&s.curve, b)?);
            let pa = s.jac.class_of(&da, da.degree()).map_err(fail)?;
            let pb = s.jac.class_of(&db, db.degree()).map_err(fail)?;
            let sum = s.jac.add(&pa, &pb);
            let reduced = s.jac.effective_divisor(&s.jac.origin_class(&sum)).map_err(fail)?;
            #[derive(Serialize)]
            struct Sum {
                a: hyperchow_core::PicPoint,
                b: hyperchow_core::PicPoint,
                sum: hyperchow_core::PicPoint,
                reduced_divisor: hyperchow_core::Divisor,
            }
            json(&Sum { a: pa, b: pb, sum, reduced_divisor: reduced }, 0)
        }
        JacobianCommand::Reduce { config, u, v } => {
            let s = CurveFile::load(config)?.setup()?;
            let cls = s.jac.reduce_pair(&config::polynomial(u)?, &config::polynomial(v)?).map_err(fail)?;
            json(&cls, 0)
        }
        JacobianCommand::IsPrincipal { config, divisor } => {
            let s = CurveFile::load(config)?.setup()?;
            let d = config::divisor(&s.curve, divisor)?;
            let p = s.jac.is_principal(&d).map_err(fail)?;
            let code = if p.principal { 0 } else { 1 };
            json(&p, code)
        }
    })
}
