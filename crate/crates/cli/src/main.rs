use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ccrk_cli::commands::{cmd_build, cmd_degree, cmd_export, cmd_homology, parse_range, Family};
use ccrk_cli::error::CliError;
use ccrk_cli::suites::{default_jobs, run_suites, Suite, SuiteConfig};

/// Finite curve-complex models: build them, compute their homology, and
/// verify their structure.
#[derive(Parser)]
#[command(name = "ccrk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Construct one complex and write its facet file.
    Build {
        /// assoc-dual | sphere-rigid | genus-rigid | polygon | subset-sphere
        family: String,
        /// Family parameter (m, n, g or the universe size).
        param: u32,
        /// Output facet file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the reduced homology profile of a facet file.
    Homology {
        /// Input facet file.
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify the subset-sphere collapse map for n marked points.
    Degree {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run verification suites and emit a deterministic report.
    Verify {
        /// assoc-homology | lemma-iso | rho-degree | theorem1 | counterexample | sporadic | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Marked-point range, inclusive (e.g. 4..9).
        #[arg(long)]
        n: Option<String>,
        /// Genus range, inclusive (e.g. 1..4).
        #[arg(long)]
        g: Option<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker pool width; defaults to CCRK_JOBS or the CPU count.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Acknowledge ranges beyond the default caps (long runtimes).
        #[arg(long)]
        allow_large: bool,
        /// Include witness payloads in text output.
        #[arg(long)]
        verbose: bool,
    },
    /// Write facet files for a whole parameter range of one family.
    Export {
        /// assoc-dual | sphere-rigid | genus-rigid | polygon | subset-sphere
        family: String,
        /// Parameter range, inclusive (e.g. 3..9).
        #[arg(long)]
        range: String,
        /// Directory for the facet files.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Build { family, param, out } => {
            let family = Family::from_str(&family)?;
            let summary = cmd_build(family, param, &out)?;
            println!(
                "{} {}: vertices={} facets={} dim={} -> {}",
                summary.family,
                summary.param,
                summary.vertices,
                summary.facets,
                summary.dim,
                summary.path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { path, format } => {
            let profile = cmd_homology(&path)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&profile).unwrap()),
                Format::Text => {
                    for g in &profile.groups {
                        let torsion: Vec<String> =
                            g.torsion.iter().map(|t| t.to_string()).collect();
                        println!("dim {}: betti {} torsion [{}]", g.dim, g.betti, torsion.join(","));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Degree { n, format } => {
            let summary = cmd_degree(n)?;
            match format {
                Format::Json => println!("{}", json!(summary)),
                Format::Text => println!(
                    "n={} universe={}: simplicial={} surjective={} |degree|={} top-preimage={}",
                    summary.n,
                    summary.universe,
                    summary.simplicial,
                    summary.surjective,
                    summary.abs_degree,
                    summary.top_preimage_count
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, n, g, out, jobs, format, allow_large, verbose } => {
            let mut config = SuiteConfig {
                suite: Suite::from_str(&suite)?,
                allow_large,
                ..SuiteConfig::default()
            };
            if let Some(n) = n {
                config.n_range = parse_range(&n)?;
            }
            if let Some(g) = g {
                config.g_range = parse_range(&g)?;
            }
            config.jobs = jobs.unwrap_or_else(default_jobs);
            let report = run_suites(&config)?;
            let rendered = match format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(verbose),
            };
            match out {
                Some(path) => std::fs::write(&path, rendered)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
                None => print!("{rendered}"),
            }
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Export { family, range, out_dir } => {
            let family = Family::from_str(&family)?;
            let range = parse_range(&range)?;
            let summaries = cmd_export(family, range, &out_dir)?;
            for s in &summaries {
                println!(
                    "{} {}: vertices={} facets={} -> {}",
                    s.family,
                    s.param,
                    s.vertices,
                    s.facets,
                    s.path.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
