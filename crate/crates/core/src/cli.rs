//! Command-line front end. Every command renders to JSON (sorted keys,
//! fixed-width decimals), CSV or aligned text.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundConstants, BoundKind};
use crate::classes::{Catalog, GraphClass, DEFAULT_TRUNCATION};
use crate::geometry::{make_convex, make_double_chain, make_single_chain, PointSet};
use crate::oracle::{count_nc, Family, GroupBy, DEFAULT_CAP, MAX_CAP};
use crate::singularity::{analyze, SingularityConfig};
use crate::verify::{self, Suite};
use crate::{Error, Result};

/// Decimals printed for singular data.
const OUTPUT_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grouping {
    Components,
    Edges,
}

#[derive(Debug, Parser)]
#[command(name = "ncforest", version, about = "Counting non-crossing trees and forests")]
pub struct Cli {
    /// Series truncation order (at least 12).
    #[arg(long, global = true)]
    pub truncation: Option<usize>,
    /// Decimal digits carried by the singularity analysis (at least 30).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Largest point set handed to the brute-force oracle (at most 14).
    #[arg(long = "oracle-cap", global = true)]
    pub oracle_cap: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with any of the keys truncation, precision, oracle_cap,
    /// format, out; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts of a class (or `all`) for a range like `1..8`.
    Count { class: String, range: String },
    /// Series coefficients up to the truncation order.
    Series { class: String },
    /// Dominant singularity, growth constant and component rate.
    Growth { class: String },
    /// Bound reports: all, lb-trees, lb-forests, lb-noiso or ub-trees.
    Bounds {
        #[arg(default_value = "all")]
        which: String,
        /// Use the four-digit constants instead of recomputing them.
        #[arg(long)]
        printed_constants: bool,
    },
    /// Brute-force census on convex, double-chain or single-chain points.
    Oracle {
        /// convex, double-chain or single-chain.
        #[arg(value_name = "CONFIG")]
        points: String,
        n: usize,
        family: String,
        #[arg(long, value_enum)]
        group_by: Option<Grouping>,
    },
    /// Runs the self-check suites (`all`, a name or a number 1-10).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Every quoted constant next to the recomputed value.
    Reproduce,
    /// Exact double-chain spanning-tree and forest counts.
    Sandwich {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub truncation: usize,
    pub precision: u32,
    pub oracle_cap: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            truncation: DEFAULT_TRUNCATION,
            precision: 60,
            oracle_cap: DEFAULT_CAP,
            format: Format::Json,
            out: None,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    truncation: Option<usize>,
    precision: Option<u32>,
    oracle_cap: Option<usize>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let d = RunConfig::default();
        let cfg = RunConfig {
            truncation: cli.truncation.or(file.truncation).unwrap_or(d.truncation),
            precision: cli.precision.or(file.precision).unwrap_or(d.precision),
            oracle_cap: cli.oracle_cap.or(file.oracle_cap).unwrap_or(d.oracle_cap),
            format: cli.format.or(file.format).unwrap_or(d.format),
            out: cli.out.clone().or(file.out),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation < 12 {
            return Err(Error::InvalidInput("truncation must be at least 12".into()));
        }
        if self.precision < 30 {
            return Err(Error::InvalidInput("precision must be at least 30 digits".into()));
        }
        if self.oracle_cap > MAX_CAP {
            return Err(Error::InvalidInput(format!("oracle cap must be at most {MAX_CAP}")));
        }
        Ok(())
    }

    fn singularity(&self) -> SingularityConfig {
        SingularityConfig {
            digits: self.precision,
            ..SingularityConfig::default()
        }
    }
}

/// A rendered command result; `ok` is false when a check failed.
pub struct Report {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub ok: bool,
}

impl Report {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            ok: true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json renders") + "\n",
            Format::Csv => {
                let mut out = self.header.join(",") + "\n";
                for r in &self.rows {
                    out += &(r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",") + "\n");
                }
                out
            }
            Format::Text => {
                let cols = self.header.len();
                let width: Vec<usize> = (0..cols)
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r.get(i).map_or(0, |c| c.chars().count()))
                            .chain([self.header[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| -> String {
                    let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
                    s.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(&self.header);
                for r in &self.rows {
                    out += &line(r);
                }
                out
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Accepts `n`, `a..b`, `a..=b` and `a-b`, all inclusive.
pub fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad range {s:?}")));
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let n = num(s)?;
        (n, n)
    };
    if a > b {
        return Err(Error::Parse(format!("empty range {s:?}")));
    }
    Ok(a..=b)
}

fn classes(arg: &str) -> Result<Vec<GraphClass>> {
    if arg.eq_ignore_ascii_case("all") {
        Ok(GraphClass::ALL.to_vec())
    } else {
        Ok(vec![arg.parse()?])
    }
}

pub fn point_set(config: &str, n: usize) -> Result<PointSet> {
    match config.to_ascii_lowercase().replace('_', "-").as_str() {
        "convex" => Ok(make_convex(n)),
        "double-chain" => make_double_chain(n),
        "single-chain" => make_single_chain(n),
        _ => Err(Error::InvalidInput(format!("unknown configuration {config:?}"))),
    }
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Report> {
    match command {
        Command::Count { class, range } => {
            let classes = classes(class)?;
            let range = parse_range(range)?;
            let catalog = Catalog::new(cfg.truncation.max(*range.end()));
            let mut rows = Vec::new();
            let mut obj = serde_json::Map::new();
            for &c in &classes {
                let mut counts = serde_json::Map::new();
                for n in range.clone() {
                    let v = catalog.count(c, n)?.to_string();
                    rows.push(vec![c.to_string(), n.to_string(), v.clone()]);
                    counts.insert(n.to_string(), json!(v));
                }
                obj.insert(c.to_string(), Value::Object(counts));
            }
            Ok(Report::new(json!({ "counts": obj }), &["class", "n", "count"], rows))
        }
        Command::Series { class } => {
            let class: GraphClass = class.parse()?;
            let catalog = Catalog::new(cfg.truncation);
            let s = catalog.series(class);
            let rows = s.coeffs().iter().enumerate().map(|(n, c)| vec![n.to_string(), c.to_string()]).collect();
            Ok(Report::new(s.to_json(class.tag()), &["n", "coeff"], rows))
        }
        Command::Growth { class } => {
            let catalog = Catalog::new(cfg.truncation);
            let sc = cfg.singularity();
            let digits = OUTPUT_DIGITS.min(cfg.precision as usize);
            let mut reports = Vec::new();
            let mut rows = Vec::new();
            for c in classes(class)? {
                let r = analyze(c, &catalog, &sc)?;
                let j = r.to_json(digits);
                let cell = |k: &str| j[k].as_str().unwrap_or("").to_string();
                rows.push(vec![c.to_string(), cell("rho"), cell("tau"), cell("omega"), cell("kappa")]);
                reports.push(j);
            }
            let json = if reports.len() == 1 { reports.pop().unwrap() } else { Value::Array(reports) };
            Ok(Report::new(json, &["class", "rho", "tau", "omega", "kappa"], rows))
        }
        Command::Bounds {
            which,
            printed_constants,
        } => {
            let kinds: Vec<BoundKind> = if which == "all" { BoundKind::ALL.to_vec() } else { vec![which.parse()?] };
            let constants = if *printed_constants {
                BoundConstants::printed()
            } else if kinds == [BoundKind::UbTrees] {
                // the upper bound needs no convex constants
                BoundConstants::printed()
            } else {
                BoundConstants::computed(&Catalog::new(cfg.truncation), &cfg.singularity())?
            };
            let mut out = Vec::new();
            let mut rows = Vec::new();
            let mut ok = true;
            for k in kinds {
                let r = bounds::bound(k, &constants)?;
                ok &= r.certified();
                let params = r.parameters.iter().map(|(n, v)| format!("{n}={v:.6}")).collect::<Vec<_>>().join(" ");
                rows.push(vec![
                    k.to_string(),
                    format!("{:.6}", r.base),
                    format!("{:.6}", r.quoted_base),
                    format!("{:.4}", k.reference_base()),
                    params,
                ]);
                out.push(r.to_json());
            }
            let json = if out.len() == 1 {
                out.pop().unwrap()
            } else {
                json!({ "constants_source": constants.source, "bounds": out })
            };
            let mut report = Report::new(json, &["bound", "base", "quoted_base", "reference_base", "parameters"], rows);
            report.ok = ok;
            Ok(report)
        }
        Command::Oracle {
            points,
            n,
            family,
            group_by,
        } => {
            let family: Family = family.parse()?;
            let ps = point_set(points, *n)?;
            let group_by = match group_by {
                Some(Grouping::Components) => GroupBy::Components,
                Some(Grouping::Edges) => GroupBy::Edges,
                None if family == Family::InteriorForests => GroupBy::Edges,
                None => GroupBy::Components,
            };
            let census = count_nc(&ps, family, group_by, cfg.oracle_cap)?;
            let rows = census.groups.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect();
            Ok(Report::new(census.to_json(), &["k", "count"], rows))
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
            let catalog = Catalog::new(cfg.truncation);
            let ctx = verify::Context::new(&catalog, cfg.singularity(), cfg.oracle_cap);
            let checks: Vec<verify::Check> = suites.iter().map(|&s| verify::run_or_fail(s, &ctx)).collect();
            let ok = checks.iter().all(|c| c.pass);
            let rows = checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.number().to_string(),
                        c.suite.name().to_string(),
                        if c.pass { "PASS" } else { "FAIL" }.to_string(),
                        c.suite.title().to_string(),
                    ]
                })
                .collect();
            let json = json!({
                "pass": ok,
                "suites": checks.iter().map(verify::Check::to_json).collect::<Vec<_>>(),
            });
            let mut report = Report::new(json, &["criterion", "suite", "result", "description"], rows);
            report.ok = ok;
            Ok(report)
        }
        Command::Reproduce => {
            let catalog = Catalog::new(cfg.truncation);
            let lines = bounds::reproduction_report(&catalog, &cfg.singularity())?;
            let ok = lines.iter().all(|l| l.ok());
            let rows = lines
                .iter()
                .map(|l| {
                    vec![
                        l.name.clone(),
                        l.reference.to_string(),
                        format!("{:.6}", l.computed),
                        format!("{:.2e}", l.delta()),
                        if l.ok() { "ok" } else { "MISMATCH" }.to_string(),
                    ]
                })
                .collect();
            let json = json!({ "lines": lines.iter().map(bounds::ReproLine::to_json).collect::<Vec<_>>() });
            let mut report = Report::new(json, &["constant", "reference", "computed", "delta", "status"], rows);
            report.ok = ok;
            Ok(report)
        }
        Command::Sandwich { max_n } => {
            let rows_data = bounds::sandwich_report(*max_n, cfg.oracle_cap)?;
            let rows = rows_data
                .iter()
                .map(|r| {
                    let j = r.to_json();
                    ["n", "points", "spanning_trees", "forests", "tree_base", "forest_base"]
                        .iter()
                        .map(|k| match &j[*k] {
                            Value::String(s) => s.clone(),
                            v => v.to_string(),
                        })
                        .collect()
                })
                .collect();
            let json = json!({ "rows": rows_data.iter().map(bounds::SandwichRow::to_json).collect::<Vec<_>>() });
            Ok(Report::new(
                json,
                &["n", "points", "spanning_trees", "forests", "tree_base", "forest_base"],
                rows,
            ))
        }
    }
}

/// Usage-type errors exit with 2, everything else with 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::Domain(_)
        | Error::RaiseTruncation { .. }
        | Error::OracleTooLarge { .. } => 2,
        _ => 1,
    }
}

fn write(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parses the arguments, runs the command and returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let run = || -> Result<bool> {
        let cfg = RunConfig::resolve(&cli)?;
        let report = execute(&cli.command, &cfg)?;
        write(cfg.out.as_deref(), &report.render(cfg.format))?;
        Ok(report.ok)
    };
    match run() {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("1..=8").unwrap(), 1..=8);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("2-5").unwrap(), 2..=5);
        assert!(parse_range("5..2").is_err());
    }

    #[test]
    fn config_limits() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.truncation = 11;
        assert!(c.validate().is_err());
    }
}
