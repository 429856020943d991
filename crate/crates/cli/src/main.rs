use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsec_cli::{
    catalog, parse_assignment, parse_config, render, render_summary, report_suite, run_experiment, CliError, Format,
    Result, RunConfig,
};

#[derive(Parser)]
#[command(name = "qsec", version, about = "Run security-game experiments and summarise their results")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the experiment catalog with defaults and parameters.
    List,
    /// Run one experiment and emit its report.
    Run(RunArgs),
    /// Summarise every .json/.csv report in a directory.
    Report {
        dir: PathBuf,
        /// `json` prints a markdown table, `csv` a flat table.
        #[arg(long, default_value = "json")]
        format: Format,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Experiment parameter as key=value; repeatable.
    #[arg(long = "param", value_parser = parse_assignment)]
    params: Vec<(String, String)>,
    /// File of key=value lines; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn list() {
    for e in catalog() {
        let trials = e.default_trials.map_or("battery".to_string(), |t| format!("{t} trials"));
        println!("{}  [{trials}]", e.name);
        println!("    {}", e.description);
        println!("    construction: {}", e.construction);
        for p in e.params {
            println!("    --param {}={}  {}", p.name, p.default, p.doc);
        }
    }
}

fn parse_field<T: std::str::FromStr>(name: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| CliError::BadParam {
        name: name.to_string(),
        value: value.to_string(),
        reason: e.to_string(),
    })
}

fn run(args: RunArgs) -> Result<bool> {
    let mut file: BTreeMap<String, String> = BTreeMap::new();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        file = parse_config(&text)?;
    }
    let experiment = match (args.experiment, file.remove("experiment")) {
        (Some(e), _) | (None, Some(e)) => e,
        (None, None) => return Err(CliError::Config("no experiment given".into())),
    };
    let trials = match (args.trials, file.remove("trials")) {
        (Some(t), _) => Some(t),
        (None, Some(t)) => Some(parse_field("trials", &t)?),
        (None, None) => None,
    };
    let seed = match (args.seed, file.remove("seed")) {
        (Some(s), _) => Some(s),
        (None, Some(s)) => Some(parse_field("seed", &s)?),
        (None, None) => None,
    };
    let out = args.out.or_else(|| file.remove("out").map(PathBuf::from));
    let format = match (args.format, file.remove("format")) {
        (Some(f), _) => f,
        (None, Some(f)) => parse_field("format", &f)?,
        (None, None) => Format::Json,
    };
    let mut params = file;
    params.extend(args.params);

    let report = run_experiment(&RunConfig {
        experiment,
        trials,
        seed,
        params,
    })?;
    let text = render(&report, format)?;
    match out {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::List => {
            list();
            Ok(true)
        }
        Command::Run(args) => run(args),
        Command::Report { dir, format } => report_suite(&dir).map(|rows| {
            print!("{}", render_summary(&rows, format));
            rows.iter().all(|r| r.pass == Some(true))
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qsec: {e}");
            ExitCode::from(2)
        }
    }
}
