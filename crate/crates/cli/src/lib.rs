//! Experiment registry, runner and report handling behind the `qsec` binary.

mod experiments;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use qsec::games::{ExperimentResult, Params};

pub use experiments::catalog;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown experiment `{0}`; see `qsec list`")]
    UnknownExperiment(String),
    #[error("experiment `{experiment}` has no parameter `{param}`")]
    UnknownParam { experiment: String, param: String },
    #[error("bad value `{value}` for `{name}`: {reason}")]
    BadParam { name: String, value: String, reason: String },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] qsec::Error),
    #[error(transparent)]
    Quantum(#[from] qsim::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub doc: &'static str,
}

/// What a run produced before it is wrapped into a [`Report`].
#[derive(Debug, Clone)]
pub struct Outcome {
    pub game: String,
    pub trials: u64,
    pub successes: u64,
    pub pass: bool,
    pub metrics: BTreeMap<String, f64>,
}

pub struct Experiment {
    pub name: &'static str,
    pub description: &'static str,
    /// The construction or result the experiment exercises.
    pub construction: &'static str,
    /// `None` when the experiment is a fixed battery of checks.
    pub default_trials: Option<u64>,
    pub params: &'static [ParamSpec],
    run: fn(&RunContext) -> Result<Outcome>,
}

impl fmt::Debug for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Experiment").field("name", &self.name).finish()
    }
}

pub const DEFAULT_SEED: u64 = 7;

/// Resolved trials, seed and parameters handed to an experiment.
#[derive(Debug, Clone)]
pub struct RunContext {
    pub trials: u64,
    pub seed: u64,
    params: BTreeMap<String, String>,
}

impl RunContext {
    pub fn get<T: FromStr>(&self, name: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        let value = self.params.get(name).map(String::as_str).unwrap_or("");
        value.parse().map_err(|e: T::Err| CliError::BadParam {
            name: name.to_string(),
            value: value.to_string(),
            reason: e.to_string(),
        })
    }

    pub fn str(&self, name: &str) -> &str {
        self.params.get(name).map(String::as_str).unwrap_or("")
    }

    /// A parameter that must lie in `lo..=hi`.
    pub fn ranged(&self, name: &str, lo: usize, hi: usize) -> Result<usize> {
        let v: usize = self.get(name)?;
        if !(lo..=hi).contains(&v) {
            return Err(CliError::BadParam {
                name: name.to_string(),
                value: v.to_string(),
                reason: format!("must lie in {lo}..={hi}"),
            });
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub experiment: String,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub construction: String,
    #[serde(flatten)]
    pub result: ExperimentResult,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

pub fn find(name: &str) -> Result<&'static Experiment> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CliError::UnknownExperiment(name.to_string()))
}

fn json_value(s: &str) -> serde_json::Value {
    if let Ok(v) = s.parse::<u64>() {
        return v.into();
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => v.into(),
        _ => s.into(),
    }
}

pub fn run_experiment(config: &RunConfig) -> Result<Report> {
    let exp = find(&config.experiment)?;
    let mut params: BTreeMap<String, String> = exp
        .params
        .iter()
        .map(|p| (p.name.to_string(), p.default.to_string()))
        .collect();
    for (k, v) in &config.params {
        if !params.contains_key(k) {
            return Err(CliError::UnknownParam {
                experiment: exp.name.to_string(),
                param: k.clone(),
            });
        }
        params.insert(k.clone(), v.clone());
    }
    let trials = match (exp.default_trials, config.trials) {
        (None, Some(_)) => {
            return Err(CliError::Config(format!("`{}` is a fixed battery and takes no trial count", exp.name)))
        }
        (None, None) => 0,
        (Some(d), t) => t.unwrap_or(d),
    };
    if exp.default_trials.is_some() && trials == 0 {
        return Err(CliError::Config("trials must be positive".into()));
    }
    let ctx = RunContext {
        trials,
        seed: config.seed.unwrap_or(DEFAULT_SEED),
        params,
    };
    let start = Instant::now();
    let out = (exp.run)(&ctx)?;
    let runtime_ms = start.elapsed().as_millis() as u64;
    let report_params: Params = ctx.params.iter().map(|(k, v)| (k.clone(), json_value(v))).collect();
    Ok(Report {
        experiment: exp.name.to_string(),
        construction: exp.construction.to_string(),
        result: ExperimentResult::from_counts(&out.game, report_params, out.trials, out.successes, ctx.seed, runtime_ms),
        pass: out.pass,
        metrics: out.metrics,
    })
}

pub const CSV_HEADER: &str = "experiment,trials,successes,advantage,ci95,pass,seed";

pub fn csv_row(r: &Report) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.experiment, r.result.trials, r.result.successes, r.result.advantage, r.result.ci95, r.pass, r.result.seed
    )
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(report)),
    })
}

/// JSON with the wall-clock field removed, for determinism comparisons.
pub fn canonical_json(report: &Report) -> Result<String> {
    let mut v = serde_json::to_value(report)?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("runtime_ms");
    }
    Ok(serde_json::to_string(&v)?)
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = parse_assignment(line).map_err(|e| CliError::Config(format!("line {}: {e}", i + 1)))?;
        out.insert(k, v);
    }
    Ok(out)
}

pub fn parse_assignment(s: &str) -> std::result::Result<(String, String), String> {
    match s.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(format!("expected key=value, got `{s}`")),
    }
}

/// One line of a suite summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub file: String,
    pub experiment: String,
    pub advantage: Option<f64>,
    pub ci95: Option<f64>,
    pub pass: Option<bool>,
    pub error: Option<String>,
}

#[derive(Deserialize)]
struct JsonRow {
    experiment: String,
    advantage: f64,
    ci95: f64,
    pass: bool,
}

fn read_json_row(text: &str) -> std::result::Result<JsonRow, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn read_csv_row(text: &str) -> std::result::Result<JsonRow, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or("empty file")?.split(',').map(str::trim).collect();
    let row: Vec<&str> = lines.next().ok_or("no data row")?.split(',').map(str::trim).collect();
    if row.len() != header.len() {
        return Err("row and header widths differ".into());
    }
    let col = |name: &str| {
        header
            .iter()
            .position(|h| *h == name)
            .map(|i| row[i])
            .ok_or_else(|| format!("missing column `{name}`"))
    };
    let num = |name: &str| -> std::result::Result<f64, String> { col(name)?.parse().map_err(|e| format!("{name}: {e}")) };
    Ok(JsonRow {
        experiment: col("experiment")?.to_string(),
        advantage: num("advantage")?,
        ci95: num("ci95")?,
        pass: col("pass")?.parse().map_err(|e| format!("pass: {e}"))?,
    })
}

/// Summarises every `.json` and `.csv` file in `dir`, sorted by file name.
pub fn report_suite(dir: &Path) -> Result<Vec<SummaryRow>> {
    let io = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "csv")))
        .collect();
    files.sort();
    Ok(files
        .iter()
        .map(|p| {
            let file = p.file_name().unwrap_or_default().to_string_lossy().into_owned();
            let parsed = fs::read_to_string(p).map_err(|e| e.to_string()).and_then(|text| {
                if p.extension().and_then(|e| e.to_str()) == Some("json") {
                    read_json_row(&text)
                } else {
                    read_csv_row(&text)
                }
            });
            match parsed {
                Ok(r) => SummaryRow {
                    file,
                    experiment: r.experiment,
                    advantage: Some(r.advantage),
                    ci95: Some(r.ci95),
                    pass: Some(r.pass),
                    error: None,
                },
                Err(e) => SummaryRow {
                    file,
                    experiment: String::new(),
                    advantage: None,
                    ci95: None,
                    pass: None,
                    error: Some(e),
                },
            }
        })
        .collect())
}

pub fn render_summary(rows: &[SummaryRow], format: Format) -> String {
    let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
    let status = |r: &SummaryRow| match (r.pass, &r.error) {
        (Some(true), _) => "pass".to_string(),
        (Some(false), _) => "fail".to_string(),
        (None, Some(e)) => format!("error: {e}"),
        (None, None) => "error".to_string(),
    };
    let passed = rows.iter().filter(|r| r.pass == Some(true)).count();
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("file,experiment,advantage,ci95,status\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.file,
                    r.experiment,
                    opt(r.advantage),
                    opt(r.ci95),
                    status(r).replace(',', ";")
                ));
            }
        }
        Format::Json => {
            out.push_str("| file | experiment | advantage | ci95 | status |\n|---|---|---|---|---|\n");
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.file,
                    r.experiment,
                    opt(r.advantage),
                    opt(r.ci95),
                    status(r)
                ));
            }
            out.push_str(&format!("\npassed {passed}/{}\n", rows.len()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let c = parse_config("# comment\nexperiment = fair-coin-calibration\n\ntrials=10 # inline\n").unwrap();
        assert_eq!(c["experiment"], "fair-coin-calibration");
        assert_eq!(c["trials"], "10");
        assert!(parse_config("novalue").is_err());
    }

    #[test]
    fn names_are_unique_and_documented() {
        let mut names: Vec<_> = catalog().iter().map(|e| e.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), catalog().len());
        assert!(catalog().iter().all(|e| !e.description.is_empty() && !e.construction.is_empty()));
        assert!(catalog().iter().flat_map(|e| e.params).all(|p| !p.doc.is_empty()));
    }

    #[test]
    fn unknown_names_are_rejected() {
        let mut cfg = RunConfig {
            experiment: "nope".into(),
            ..Default::default()
        };
        assert!(matches!(run_experiment(&cfg), Err(CliError::UnknownExperiment(_))));
        cfg.experiment = "fair-coin-calibration".into();
        cfg.params.insert("bogus".into(), "1".into());
        assert!(matches!(run_experiment(&cfg), Err(CliError::UnknownParam { .. })));
    }

    #[test]
    fn csv_round_trips_through_the_summary_reader() {
        let r = run_experiment(&RunConfig {
            experiment: "fair-coin-calibration".into(),
            trials: Some(100),
            ..Default::default()
        })
        .unwrap();
        let row = read_csv_row(&render(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(row.experiment, r.experiment);
        assert_eq!(row.pass, r.pass);
        assert_eq!(row.advantage, r.result.advantage);
        let back: Report = serde_json::from_str(&render(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
