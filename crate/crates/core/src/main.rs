use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use transit_core::enumerate::{
    battery, census, count_systems, enumerate_systems, verify_all, EnumerationSpec,
    ImplicationClaim, Property, SweepOptions,
};
use transit_core::fixtures;
use transit_core::io::{emit_system, load, system_document, Body, Document};
use transit_core::report::{check_report, classify_report, SweepReport};
use transit_core::{find_compatible_order, transit_sets, union_closure, Error, SetSystem, SystemPredicate};

#[derive(Parser)]
#[command(name = "transit", version, about = "Transit functions, clustering systems, and their axioms")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Add missing singletons to set-system inputs.
    #[arg(long, global = true)]
    complete_singletons: bool,
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
    /// Evaluate axioms and predicates; exits 1 if a selected check fails.
    Check {
        file: PathBuf,
        /// Axiom, predicate, or class tag; repeatable. Default: everything.
        #[arg(long = "axiom", value_name = "TAG")]
        axioms: Vec<String>,
    },
    /// Set-system predicates and the pyramidal ladder.
    Classify { file: PathBuf },
    /// A compatible (interval) order, or an obstruction; exits 1 without one.
    Order { file: PathBuf },
    /// Union closure with singletons, as a set-system document.
    Closure { file: PathBuf },
    /// List or count set systems with all singletons.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Predicate every listed system satisfies; repeatable.
        #[arg(long = "filter", value_name = "TAG")]
        filters: Vec<String>,
        #[arg(long)]
        count_only: bool,
        /// Allow the largest ground sets.
        #[arg(long)]
        long_run: bool,
    },
    /// Sweep implication claims; exits 1 if an implication is refuted.
    VerifyImplications {
        #[arg(long)]
        n: usize,
        /// Claims file; default is the built-in battery.
        #[arg(long)]
        claims: Option<PathBuf>,
        /// Allow the largest ground sets.
        #[arg(long)]
        long_run: bool,
        /// Append counts of monotone transit functions per axiom.
        #[arg(long)]
        census: bool,
    },
    /// Run the built-in examples against their expected verdicts.
    Fixtures,
}

fn load_doc(path: &Path, complete: bool) -> Result<Document, Error> {
    let mut doc = load(path)?;
    if complete {
        if let Body::System(s) = &doc.body {
            doc.body = Body::System(s.with_singletons());
        }
    }
    Ok(doc)
}

fn system_of(doc: &Document) -> SetSystem {
    match &doc.body {
        Body::System(s) => s.clone(),
        Body::Transit(r) => transit_sets(r),
    }
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

fn print_json<T: Serialize>(value: &T) {
    outln!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let json_out = cli.format == Format::Json;
    match cli.command {
        Command::Check { file, axioms } => {
            let doc = load_doc(&file, cli.complete_singletons)?;
            let selection = axioms.iter().map(|t| Property::parse(t)).collect::<Result<Vec<_>, _>>()?;
            let report = check_report(&doc, &selection)?;
            if json_out {
                print_json(&report);
            } else {
                out!("{}", report.to_text());
            }
            Ok(exit(selection.is_empty() || report.all_hold()))
        }
        Command::Classify { file } => {
            let doc = load_doc(&file, cli.complete_singletons)?;
            let report = classify_report(&doc);
            if json_out {
                print_json(&report);
            } else {
                out!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Order { file } => {
            let doc = load_doc(&file, cli.complete_singletons)?;
            let system = system_of(&doc);
            let g = system.ground();
            let result = find_compatible_order(&system);
            let order: Option<Vec<&str>> =
                result.order.as_ref().map(|o| o.sequence().iter().map(|&e| g.label(e)).collect());
            let obstruction: Option<Vec<Vec<String>>> = result
                .obstruction
                .as_ref()
                .map(|obs| obs.iter().map(|&c| g.cluster_labels(c)).collect());
            if json_out {
                print_json(&json!({
                    "schema_version": transit_core::report::SCHEMA_VERSION,
                    "pre_pyramidal": result.pre_pyramidal,
                    "order": order,
                    "obstruction": obstruction,
                }));
            } else if let Some(o) = &order {
                outln!("order: {}", o.join(" "));
            } else {
                let obs = result.obstruction.unwrap_or_default();
                let shown: Vec<String> = obs.iter().map(|&c| g.format_cluster(c)).collect();
                outln!("no compatible order; obstruction: {}", shown.join(" "));
            }
            Ok(exit(result.pre_pyramidal))
        }
        Command::Closure { file } => {
            let doc = load_doc(&file, cli.complete_singletons)?;
            let closed = union_closure(&system_of(&doc));
            if json_out {
                print_json(&system_document(&closed, &doc.meta));
            } else {
                out!("{}", emit_system(&closed, &doc.meta));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            n,
            filters,
            count_only,
            long_run,
        } => {
            let opts = SweepOptions::from_env().long_run(long_run);
            let filter = filters
                .iter()
                .map(|t| t.parse::<SystemPredicate>())
                .collect::<Result<Vec<_>, _>>()?;
            let spec = EnumerationSpec {
                n,
                filter,
                require_full: false,
            };
            if count_only {
                let count = count_systems(&spec, &opts)?;
                if json_out {
                    print_json(&json!({ "schema_version": 1, "n": n, "count": count }));
                } else {
                    outln!("{count}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            opts.admit(n)?;
            let systems = enumerate_systems(&spec)?;
            if json_out {
                let sets: Vec<Vec<Vec<String>>> = systems
                    .map(|s| s.clusters().iter().map(|&c| s.ground().cluster_labels(c)).collect())
                    .collect();
                print_json(&json!({ "schema_version": 1, "n": n, "count": sets.len(), "systems": sets }));
            } else {
                for s in systems {
                    let line: Vec<String> = s.clusters().iter().map(|&c| s.format_cluster(c)).collect();
                    outln!("{}", line.join(" "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyImplications {
            n,
            claims,
            long_run,
            census: with_census,
        } => {
            let opts = SweepOptions::from_env().long_run(long_run);
            let claims = match claims {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                    ImplicationClaim::parse_all(&text)?
                }
                None => battery(),
            };
            let reports = verify_all(&claims, n, &opts)?;
            let counts = if with_census { Some(census(n, &opts)?) } else { None };
            let sweep = SweepReport::new(n, &reports, counts.as_ref());
            if json_out {
                print_json(&sweep);
            } else {
                out!("{}", sweep.to_text());
            }
            Ok(exit(sweep.consistent()))
        }
        Command::Fixtures => {
            let comparisons = fixtures::run_all()?;
            let ok = comparisons.iter().all(|c| c.passed());
            if json_out {
                let rows: Vec<_> = comparisons
                    .iter()
                    .map(|c| {
                        json!({
                            "fixture": c.fixture,
                            "check": c.check,
                            "expected": c.expected,
                            "actual": c.actual,
                            "passed": c.passed(),
                        })
                    })
                    .collect();
                print_json(&json!({ "schema_version": 1, "passed": ok, "comparisons": rows }));
            } else {
                for c in &comparisons {
                    let mark = if c.passed() { "ok  " } else { "FAIL" };
                    outln!("{mark} {:22} {:24} expected {:10} actual {}", c.fixture, c.check, c.expected, c.actual);
                }
                let failed = comparisons.iter().filter(|c| !c.passed()).count();
                outln!("{} checks, {failed} failed", comparisons.len());
            }
            Ok(exit(ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
