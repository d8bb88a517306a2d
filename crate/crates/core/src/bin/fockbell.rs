use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fockbell::checks::{run_suite, Suite};
use fockbell::discrimination::build_classifier;
use fockbell::imperfections::{break_even_product, parse_range, sweep, sweep_csv};
use fockbell::interferometer::NetworkDump;
use fockbell::report;
use fockbell::schemes::{catalog, classify, evaluate, reproduce_parity_table, scheme_25_32_report, simulate, CATALOG};
use fockbell::{Label, Occupation};

#[derive(Parser)]
#[command(name = "fockbell", version, about = "Exact simulation of ancilla-assisted linear-optical Bell measurements")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one labelled input through a scheme and list every output pattern.
    Simulate {
        #[arg(long, value_parser = PossibleValuesParser::new(CATALOG))]
        scheme: String,
        /// psi-plus, psi-minus, phi-plus, phi-minus, alpha, beta-plus or beta-minus.
        #[arg(long)]
        input: Label,
    },
    /// Verdict for a detection pattern, or the whole verdict table.
    Classify {
        #[arg(long, value_parser = PossibleValuesParser::new(CATALOG))]
        scheme: String,
        /// Comma-separated photon counts, e.g. 3,1,0,0.
        #[arg(long)]
        pattern: Option<Occupation>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(default_value = "all", value_parser = PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
    },
    /// Lossy-source / lossy-detector success over an efficiency grid, as CSV.
    Sweep {
        /// start:end:step
        #[arg(long = "eta-s")]
        eta_s: String,
        /// start:end:step
        #[arg(long = "eta-d")]
        eta_d: String,
    },
    /// Print a scheme's interferometer matrix.
    DumpNetwork {
        #[arg(long, value_parser = PossibleValuesParser::new(CATALOG))]
        scheme: String,
    },
    /// Success tables for every scheme in the catalog plus the parity table.
    Tables,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<fockbell::Error> for Failure {
    fn from(e: fockbell::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(cli: &Cli, text: String) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Runtime(e.to_string())),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

/// Runs the command; `Ok(false)` means a verification failed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let json = matches!(cli.format, Format::Json);
    match &cli.command {
        Command::Simulate { scheme, input } => {
            let spec = catalog(scheme)?;
            let parts = simulate(&spec, *input)?;
            let text = if json {
                let items = parts.iter().map(|(t, s)| report::state_json(t, s)).collect::<Result<Vec<_>, _>>()?;
                pretty(&json!({ "scheme": spec.name, "input": input, "states": items }))
            } else {
                let mut out = String::new();
                for (title, state) in &parts {
                    out.push_str(&report::state_text(&format!("{} / {input} / {title}", spec.name), state)?);
                }
                out
            };
            emit(cli, text)?;
        }
        Command::Classify { scheme, pattern } => {
            let spec = catalog(scheme)?;
            let text = match pattern {
                Some(p) => {
                    let v = classify(&spec, p)?;
                    if json {
                        pretty(&json!({ "scheme": spec.name, "pattern": p, "verdict": v.to_string() }))
                    } else {
                        format!("{p} -> {v}\n")
                    }
                }
                None => {
                    if spec.arm.is_some() {
                        return Err(Failure::Usage(format!("{} needs --pattern; its table is too large to list", spec.name)));
                    }
                    let c = build_classifier(&spec.candidates, &spec.network)?;
                    if json {
                        pretty(&report::classifier_json(&c))
                    } else {
                        format!("{}\n{}", spec.name, report::classifier_text(&c))
                    }
                }
            };
            emit(cli, text)?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse().map_err(Failure::Usage)?;
            let checks = run_suite(suite)?;
            let text = if json { pretty(&report::checks_json(&checks)) } else { report::checks_text(&checks) };
            emit(cli, text)?;
            return Ok(checks.iter().all(|c| c.passed));
        }
        Command::Sweep { eta_s, eta_d } => {
            let rows = sweep(&parse_range(eta_s)?, &parse_range(eta_d)?)?;
            let text = if json {
                pretty(&json!({ "break_even_product": format!("{:.12}", break_even_product()), "rows": rows }))
            } else {
                sweep_csv(&rows)
            };
            emit(cli, text)?;
        }
        Command::DumpNetwork { scheme } => {
            let spec = catalog(scheme)?;
            let dump = NetworkDump::new(&spec.name, &spec.network);
            let text = if json {
                pretty(&serde_json::to_value(&dump).expect("dump serializes"))
            } else {
                let mut out = format!("{} ({} modes)\n", dump.name, dump.modes);
                for row in &dump.entries {
                    out.push_str(&row.join("  |  "));
                    out.push('\n');
                }
                out
            };
            emit(cli, text)?;
        }
        Command::Tables => {
            let mut reports = Vec::new();
            for name in CATALOG {
                reports.push(evaluate(&catalog(name)?)?);
            }
            reports.push(scheme_25_32_report()?);
            let table = reproduce_parity_table()?;
            let text = if json {
                let rows: Vec<_> = table
                    .iter()
                    .map(|r| json!({ "input": r.name, "n13": r.n13.kind(), "n23": r.n23.kind(), "matches": r.matches() }))
                    .collect();
                pretty(&json!({ "schemes": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(), "parity_table": rows }))
            } else {
                let mut out = String::new();
                for r in &reports {
                    out.push_str(&report::success_text(r));
                    out.push('\n');
                }
                out.push_str("parity table under S_2\n");
                out.push_str(&format!("  {:<30} {:<8} {:<8}\n", "input", "n(1,3)", "n(2,3)"));
                for r in &table {
                    out.push_str(&format!("  {:<30} {:<8} {:<8}\n", r.name, r.n13.kind().to_string(), r.n23.kind().to_string()));
                }
                out
            };
            emit(cli, text)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
