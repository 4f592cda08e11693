//! Command-line front door: brackets, solver runs, replays, extraction and
//! seeded fuzzing, with text or JSON reports and stable exit codes
//! (0 pass, 1 assertion/replay failure, 2 input error).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gca::error::Error;
use gca::exprio::parse_element;
use gca::fuzz::{self, FuzzConfig, FuzzTarget};
use gca::replay;
use gca::report::{
    load_instance, BracketReport, DerSolveReport, DerivationText, ErrorReport, ExtractReport,
    ReplayReport, WindowDoc,
};
use gca::solver::derivation_space;
use gca::twolocal::{extract_derivation, validate_homogeneity};
use gca::{bracket, print_element, Window};

#[derive(Parser)]
#[command(name = "gca", about = "Exact computations in the planar Galilean conformal algebra")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Window radius N: degrees in [-N, N] are in scope.
    #[arg(long, global = true, default_value_t = 12)]
    window: i64,
    /// Certified interior radius; defaults to half the window.
    #[arg(long, global = true)]
    interior: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Lie bracket of two elements in the same basis.
    Bracket { x: String, y: String },
    /// Solve the homogeneous degree-d derivation space on the window and
    /// compare its interior restriction to the known span.
    DerSolve {
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Run one of the replay checks.
    Replay {
        /// Which check: 3.1i, 3.1ii, 3.2, 3.3, 3.4 or 3.5.
        #[arg(long)]
        lemma: String,
        /// Degree parameter for 3.1i and 3.2.
        #[arg(long, allow_negative_numbers = true)]
        i: Option<i64>,
        /// Probe parameter for 3.4.
        #[arg(long, allow_negative_numbers = true)]
        p: Option<i64>,
        /// Element parameter for 3.3 and 3.5.
        #[arg(long)]
        x: Option<String>,
        /// Comma-separated probe indices for 3.3 and 3.5 (defaults derive
        /// from the support of x).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        probes: Option<Vec<i64>>,
    },
    /// Extract a genuine derivation from a 2-local instance document.
    Extract {
        #[arg(long)]
        file: std::path::PathBuf,
    },
    /// Seeded property fuzzing of the exact identities.
    Fuzz {
        #[arg(long)]
        what: String,
        #[arg(long, default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            match format {
                Format::Text => eprintln!("error[{}]: {}", e.code(), e),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&ErrorReport::from(&e)).expect("serializable")
                ),
            }
            ExitCode::from(e.exit_class())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let interior = cli.interior.unwrap_or(cli.window / 2);
    let window = Window::new(cli.window, interior)?;
    match cli.command {
        Command::Bracket { x, y } => {
            let xe = parse_element(&x)?;
            let ye = parse_element(&y)?;
            let result = bracket(&xe, &ye)?;
            let report = BracketReport {
                x: print_element(&xe),
                y: print_element(&ye),
                bracket: print_element(&result),
            };
            match cli.format {
                Format::Text => println!("{}", report.bracket),
                Format::Json => print_json(&report),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DerSolve { degree } => {
            let space = derivation_space(&window, degree)?;
            let report = DerSolveReport::from_space(&space);
            match cli.format {
                Format::Text => {
                    println!(
                        "degree {}: interior dimension {} (expected {}), window dimension {}",
                        degree,
                        report.interior_dimension,
                        report.expected_interior_dimension,
                        report.window_dimension
                    );
                    if let Some(has_d) = report.contains_outer_d {
                        println!("contains outer derivation D: {}", if has_d { "yes" } else { "no" });
                    }
                    for (idx, map) in report.interior_basis.iter().enumerate() {
                        let images: Vec<String> =
                            map.iter().take(4).map(|(g, img)| format!("{g} -> {img}")).collect();
                        let more = if map.len() > 4 { ", ..." } else { "" };
                        println!("basis[{idx}]: {}{more}", images.join(", "));
                    }
                    println!(
                        "interior basis {} the known ad-span",
                        if report.matches_known_span { "matches" } else { "DIFFERS FROM" }
                    );
                }
                Format::Json => print_json(&report),
            }
            if report.matches_known_span && report.contains_outer_d != Some(false) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Replay { lemma, i, p, x, probes } => {
            let need = |opt: Option<i64>, name: &str| {
                opt.ok_or_else(|| Error::Schema {
                    path: name.to_string(),
                    detail: format!("replay {lemma} requires --{name}"),
                })
            };
            let parse_x = |x: &Option<String>| -> Result<gca::Element, Error> {
                match x {
                    Some(s) => parse_element(s),
                    None => Err(Error::Schema {
                        path: "x".to_string(),
                        detail: format!("replay {lemma} requires --x"),
                    }),
                }
            };
            let report = match lemma.as_str() {
                "3.1i" => replay::replay_31i(need(i, "i")?, &window)?,
                "3.1ii" => replay::replay_31ii(&window)?,
                "3.2" => replay::replay_32(need(i, "i")?, &window)?,
                "3.3" => replay::replay_33(&parse_x(&x)?, probes.as_deref(), &window)?,
                "3.4" => replay::replay_34(need(p, "p")?, &window)?,
                "3.5" => replay::replay_35(&parse_x(&x)?, probes.as_deref(), &window)?,
                other => {
                    return Err(Error::Schema {
                        path: "lemma".to_string(),
                        detail: format!(
                            "unknown replay {other:?}; expected 3.1i, 3.1ii, 3.2, 3.3, 3.4 or 3.5"
                        ),
                    })
                }
            };
            match cli.format {
                Format::Text => print_replay_text(&report),
                Format::Json => print_json(&report),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract { file } => {
            let json = std::fs::read_to_string(&file).map_err(|e| Error::Schema {
                path: file.display().to_string(),
                detail: format!("cannot read file: {e}"),
            })?;
            let inst = load_instance(&json)?;
            let homogeneity_ok = validate_homogeneity(&inst);
            let derivation = extract_derivation(&inst)?;
            let report = ExtractReport {
                window: WindowDoc::from(inst.window()),
                derivation: DerivationText::from(&derivation),
                points_checked: inst.table().len(),
                homogeneity_ok,
            };
            match cli.format {
                Format::Text => {
                    println!("inner: {}", report.derivation.inner);
                    println!("outer: {}", report.derivation.outer);
                    println!("checked {} table points", report.points_checked);
                }
                Format::Json => print_json(&report),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz { what, samples, seed } => {
            let target: FuzzTarget = what.parse().map_err(|detail| Error::Schema {
                path: "what".to_string(),
                detail,
            })?;
            let report = fuzz::run(&FuzzConfig { target, radius: cli.window, samples, seed });
            match cli.format {
                Format::Text => {
                    println!(
                        "{what}: {} samples at radius {}, seed {}: {}",
                        report.samples,
                        report.radius,
                        report.seed,
                        if report.pass { "pass" } else { "FAIL" }
                    );
                    if let Some(cx) = &report.counterexample {
                        println!("minimal counterexample: {}", cx.inputs.join(" ; "));
                        println!("{}", cx.detail);
                    }
                }
                Format::Json => print_json(&report),
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn print_replay_text(report: &ReplayReport) {
    let params: Vec<String> =
        report.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    println!(
        "replay {} ({}; window {}/{})",
        report.check,
        params.join(", "),
        report.window.radius,
        report.window.interior
    );
    if let Some(case) = &report.case {
        println!("  case: {case}");
    }
    for (name, dim) in &report.dimensions {
        println!("  {name}: {dim}");
    }
    for note in &report.notes {
        println!("  {note}");
    }
    println!("  result: {}", if report.pass { "PASS" } else { "FAIL" });
}
