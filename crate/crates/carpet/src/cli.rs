//! Command line surface.
//!
//! Results go to standard output (or `--output`); progress and errors go to
//! standard error. Exit codes: 0 ok, 1 engines disagree, 2 usage, 3 level
//! cap, 4 i/o.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use carpet_core::{
    AdjacencyGraph, Rule, VertexTable, Word, DEFAULT_ORACLE_LEVEL_CAP, DEFAULT_WORD_LEVEL_CAP,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{self, EngineConfig, Method, ValidationMode, WORKERS_ENV};
use crate::error::{exit, CarpetError, Result};
use crate::export::{write_export, ExportFormat, Labelled};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "carpet", version, about = "Wiener index and distances of Sierpinski carpet graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wiener index of one level, or of every level up to it with --table.
    Wiener(WienerArgs),
    /// Distance between two words, with the full case trace.
    Distance(DistanceArgs),
    /// Compare the word metric with breadth-first distances.
    Validate(ValidateArgs),
    /// Write the graph as DOT, an edge list or coordinate CSV.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// Four-case analysis, obstruction read from the leading word.
    Cases,
    /// Every separating hole is considered.
    Complete,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Rule {
        match r {
            RuleArg::Cases => Rule::Cases,
            RuleArg::Complete => Rule::Complete,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Formula,
    Oracle,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Formula => Method::Formula,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Edges,
    Csv,
}

impl From<GraphFormat> for ExportFormat {
    fn from(f: GraphFormat) -> ExportFormat {
        match f {
            GraphFormat::Dot => ExportFormat::Dot,
            GraphFormat::Edges => ExportFormat::Edges,
            GraphFormat::Csv => ExportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Level n of the carpet graph.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub level: u64,
    #[arg(long, value_enum, default_value_t = RuleArg::Cases)]
    pub rule: RuleArg,
    #[arg(long, env = WORKERS_ENV, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Highest level accepted by the word enumeration.
    #[arg(long, default_value_t = DEFAULT_WORD_LEVEL_CAP)]
    pub max_level: usize,
    /// Highest level accepted by the explicit graph.
    #[arg(long, default_value_t = DEFAULT_ORACLE_LEVEL_CAP)]
    pub oracle_cap: usize,
    /// Write results here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl Common {
    fn level(&self) -> usize {
        self.level as usize
    }

    fn engine(&self) -> EngineConfig {
        EngineConfig {
            workers: self.workers.map_or_else(engine::default_workers, |w| w as usize),
            rule: self.rule.into(),
            symmetry: false,
            word_level_cap: self.max_level,
            oracle_level_cap: self.oracle_cap,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct WienerArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
    pub method: MethodArg,
    /// Report every level from 1 up to --level.
    #[arg(long)]
    pub table: bool,
    /// Sum over symmetry-orbit representatives (complete rule only).
    #[arg(long)]
    pub symmetry: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Tsv)]
    pub format: ReportFormat,
    /// Leave out the elapsed-time field so output is byte-stable.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DistanceArgs {
    #[command(flatten)]
    pub common: Common,
    pub word1: String,
    pub word2: String,
    /// `both` also runs a breadth-first search and exits 1 on disagreement.
    #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = TraceFormat::Text)]
    pub format: TraceFormat,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["exhaustive", "sample"]))]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Check every pair of distinct vertices.
    #[arg(long)]
    pub exhaustive: bool,
    /// Check this many seeded pseudo-random pairs.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = TraceFormat::Text)]
    pub format: TraceFormat,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub format: GraphFormat,
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn emit(path: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    let mut out = open_output(path, stdout)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_wiener(args: &WienerArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut config = args.common.engine();
    config.symmetry = args.symmetry;
    let level = args.common.level();
    let reports = if args.table {
        let mut rows = Vec::with_capacity(level);
        for l in 1..=level {
            rows.push(engine::wiener(l, args.method.into(), &config)?);
        }
        rows
    } else {
        vec![engine::wiener(level, args.method.into(), &config)?]
    };
    let text = match args.format {
        ReportFormat::Tsv => report::wiener_reports_tsv(&reports, !args.no_timing),
        ReportFormat::Json => report::wiener_reports_json(&reports, !args.no_timing),
    };
    emit(&args.common.output, stdout, &text)?;
    let disagree = reports.iter().filter(|r| !r.engines_agree()).count();
    if disagree > 0 {
        log::error!("formula and oracle disagree on {disagree} level(s)");
        return Ok(exit::DISAGREEMENT);
    }
    Ok(exit::OK)
}

fn cmd_distance(args: &DistanceArgs, stdout: &mut dyn Write) -> Result<i32> {
    let level = args.common.level();
    let rule: Rule = args.common.rule.into();
    let w1 = Word::parse(&args.word1, level)?;
    let w2 = Word::parse(&args.word2, level)?;
    let table = VertexTable::build_with_cap(level, args.common.max_level)?;
    let c1 = table.canonicalize(&w1)?.clone();
    let c2 = table.canonicalize(&w2)?.clone();
    let trace = carpet_core::distance_with(rule, &w1, &w2)?;

    let oracle = if Method::from(args.method) == Method::Formula {
        None
    } else {
        let graph = AdjacencyGraph::build_with_cap(level, args.common.oracle_cap)?;
        let (a, b) = (graph.id_of(w1.point()), graph.id_of(w2.point()));
        let (a, b) = a.zip(b).ok_or(carpet_core::Error::Precondition("word is not a vertex"))?;
        Some(u64::from(carpet_core::bfs_from(&graph, a)[b]))
    };

    let text = match args.format {
        TraceFormat::Text => {
            let mut s = report::word_pair_lines(&w1, &w2, &c1, &c2);
            s.push_str(&format!("level={level}\nrule={}\n", rule.name()));
            s.push_str(&report::trace_lines(&trace));
            if let Some(o) = oracle {
                s.push_str(&format!("bfs={o}\nagree={}\n", o == trace.value));
            }
            s
        }
        TraceFormat::Json => {
            let mut v = serde_json::json!({
                "word1": w1.to_string(),
                "word2": w2.to_string(),
                "canonical1": c1.to_string(),
                "canonical2": c2.to_string(),
                "level": level,
                "rule": rule.name(),
                "trace": report::trace_json(&trace),
            });
            if let Some(o) = oracle {
                v["bfs"] = serde_json::json!(o);
                v["agree"] = serde_json::json!(o == trace.value);
            }
            let mut s = serde_json::to_string_pretty(&v).expect("trace serializes");
            s.push('\n');
            s
        }
    };
    emit(&args.common.output, stdout, &text)?;
    Ok(match oracle {
        Some(o) if o != trace.value => exit::DISAGREEMENT,
        _ => exit::OK,
    })
}

fn cmd_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mode = match (args.exhaustive, args.sample) {
        (true, None) => ValidationMode::Exhaustive,
        (false, Some(pairs)) => ValidationMode::Sample { pairs, seed: args.seed },
        _ => return Err(CarpetError::Usage("choose exactly one of --exhaustive and --sample".into())),
    };
    let report = engine::validate(args.common.level(), mode, &args.common.engine())?;
    let text = match args.format {
        TraceFormat::Text => report::validation_text(&report, !args.no_timing),
        TraceFormat::Json => report::validation_json(&report, !args.no_timing),
    };
    emit(&args.common.output, stdout, &text)?;
    if !report.passed() {
        log::error!("{} of {} pairs disagree", report.mismatches.len(), report.pairs_checked);
        return Ok(exit::DISAGREEMENT);
    }
    Ok(exit::OK)
}

fn cmd_export(args: &ExportArgs, stdout: &mut dyn Write) -> Result<i32> {
    let level = args.common.level();
    let graph = AdjacencyGraph::build_with_cap(level, args.common.oracle_cap)?;
    let table = VertexTable::build_with_cap(level, args.common.max_level)?;
    let mut out = open_output(&args.common.output, stdout)?;
    write_export(args.format.into(), Labelled { graph: &graph, table: &table }, &mut out)?;
    out.flush()?;
    Ok(exit::OK)
}

/// Runs a parsed command, writing results to `stdout`; returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Wiener(a) => cmd_wiener(a, stdout),
        Command::Distance(a) => cmd_distance(a, stdout),
        Command::Validate(a) => cmd_validate(a, stdout),
        Command::Export(a) => cmd_export(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("carpet: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs; usage errors exit 2.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout),
        Err(e) => {
            let _ = e.print();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            }
        }
    }
}

pub fn main_with_stdout() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    run_from(std::env::args_os(), &mut lock)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
