//! Command implementations behind the `reliance-lens` binary.
//!
//! Each subcommand writes its primary output to `--out` (or stdout) and diagnostics to
//! the diagnostic stream. Exit codes: 0 success, 1 data or domain error, 2 usage error.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use reliance_lens_core::ingest::{
    aggregate, aggregate_by_participant, parse_dataset, write_dataset, Format, IngestError,
    ParseOptions, Schema, TrialRecord,
};
use reliance_lens_core::plot::{render, Arrow, PlotError, PlotPoint, PlotSpec};
use reliance_lens_core::reliance::{AiAccuracy, RelianceError};
use reliance_lens_core::report::{
    compare_reports, condition_reports, render_table, BootstrapConfig, CompareReport,
    ConditionReport, ParticipantSummary, ReportError, TagThresholds,
};
use reliance_lens_core::sim::{
    enumerate_attainable, expected_profile, simulate, AiComposition, BehaviorModel, OracleRow,
    SimConfig, SimError,
};

/// Fill colors for treatment points, in condition order.
const TREATMENT_COLORS: [&str; 6] = ["#1f77b4", "#8e4585", "#ff7f0e", "#17becf", "#bcbd22", "#8c564b"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Plot(#[from] PlotError),
    #[error(transparent)]
    Reliance(#[from] RelianceError),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("oracle disagrees with the analytic envelope at {0} adherence count(s)")]
    OracleMismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemaArg {
    Derived,
    Raw,
}

impl From<SchemaArg> for Schema {
    fn from(s: SchemaArg) -> Schema {
        match s {
            SchemaArg::Derived => Schema::Derived,
            SchemaArg::Raw => Schema::Raw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompositionArg {
    Fixed,
    Bernoulli,
}

#[derive(Debug, Parser)]
#[command(name = "reliance-lens", version, about = "Reliance behavior and attainable accuracy in AI-assisted decisions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Dataset format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true, value_enum, default_value = "derived")]
    pub schema: SchemaArg,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Allowed AI-accuracy difference between compared conditions.
    #[arg(long, global = true, default_value_t = reliance_lens_core::TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Dataset path, or `-` for stdin.
    pub input: PathBuf,
    /// Two-value label alphabet for raw data, e.g. `yes,no`.
    #[arg(long, value_parser = parse_labels)]
    pub labels: Option<[String; 2]>,
    /// Participant column for per-participant macro averages.
    #[arg(long)]
    pub group_by: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-condition reliance metrics as JSON.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Bootstrap resamples per condition (0 disables).
        #[arg(long, default_value_t = 0)]
        bootstrap: usize,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        /// Human-readable table with percentages instead of JSON.
        #[arg(long)]
        table: bool,
    },
    /// Compare every condition against a baseline.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        baseline: String,
        #[arg(long, default_value_t = 0.05)]
        quality_threshold: f64,
        #[arg(long, default_value_t = 0.05)]
        quantity_threshold: f64,
    },
    /// Generate a derived-schema dataset from a behavior model.
    Simulate {
        #[arg(long)]
        acc: f64,
        #[arg(long)]
        p_adhere_correct: f64,
        #[arg(long)]
        p_adhere_wrong: f64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "fixed")]
        composition: CompositionArg,
        #[arg(long, default_value = "sim")]
        condition: String,
    },
    /// Exhaustive attainable accuracies for small trial counts.
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        acc_numerator: u64,
        #[arg(long)]
        json: bool,
    },
    /// Render conditions on the adherence/accuracy plane as SVG.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        /// Draw arrows from this condition to every other one.
        #[arg(long)]
        baseline: Option<String>,
        /// Palette overrides `key=color,...` (keys: region-below, region-above, line, matched, marker).
        #[arg(long, env = "RELIANCE_LENS_PALETTE")]
        palette: Option<String>,
        #[arg(long)]
        palette_below: Option<String>,
        #[arg(long)]
        palette_above: Option<String>,
        #[arg(long)]
        palette_line: Option<String>,
        #[arg(long)]
        palette_matched: Option<String>,
        #[arg(long)]
        palette_marker: Option<String>,
    },
}

/// Output of the oracle subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub n: u64,
    pub acc_numerator: u64,
    pub rows: Vec<OracleRow>,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(n: u64, acc_numerator: u64) -> Result<Self, SimError> {
        let rows = enumerate_attainable(n, acc_numerator)?.verify();
        let pass = rows.iter().all(|r| r.pass);
        Ok(OracleReport {
            n,
            acc_numerator,
            rows,
            pass,
        })
    }

    /// Percent label of `count` correct decisions out of `n`.
    pub fn percent(&self, count: f64) -> String {
        let p = count * 100.0 / self.n as f64;
        if (p - p.round()).abs() < 1e-9 {
            format!("{}%", p.round())
        } else {
            format!("{p:.1}%")
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "oracle: n = {}, AI correct on {} ({})\n",
            self.n,
            self.acc_numerator,
            self.percent(self.acc_numerator as f64)
        );
        s.push_str(&format!(
            "{:>3} {:>7}  {:<40} {:>7} {:>7}  {:<18} verdict\n",
            "k", "A", "attainable", "min", "max", "envelope"
        ));
        for r in &self.rows {
            let set = r
                .attainable
                .iter()
                .map(|&c| self.percent(c as f64))
                .collect::<Vec<_>>()
                .join(", ");
            s.push_str(&format!(
                "{:>3} {:>7}  {:<40} {:>7} {:>7}  {:<18} {}\n",
                r.adherence_count,
                self.percent(r.adherence_count as f64),
                format!("{{{set}}}"),
                self.percent(r.min as f64),
                self.percent(r.max as f64),
                format!("[{}, {}]", self.percent(r.envelope_lo), self.percent(r.envelope_hi)),
                if r.pass { "PASS" } else { "FAIL" }
            ));
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        s.push_str(&format!(
            "verdict: {} ({passed}/{} rows match the analytic envelope)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.rows.len()
        ));
        s
    }
}

fn parse_labels(s: &str) -> Result<[String; 2], String> {
    match s.split(',').map(str::trim).collect::<Vec<_>>()[..] {
        [a, b] if !a.is_empty() && !b.is_empty() && a != b => Ok([a.to_string(), b.to_string()]),
        _ => Err(format!("expected two distinct labels like `yes,no`, got `{s}`")),
    }
}

fn infer_format(explicit: Option<FormatArg>, path: &Path) -> Format {
    match explicit {
        Some(f) => f.into(),
        None if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => Format::Json,
        None => Format::Csv,
    }
}

fn open_input(path: &Path) -> Result<Box<dyn Read>, CliError> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    let file = File::open(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Box::new(BufReader::new(file)))
}

/// Records of a dataset as selected by the global and input flags.
pub fn load_records(global: &GlobalArgs, input: &InputArgs) -> Result<Vec<TrialRecord>, CliError> {
    let options = ParseOptions {
        labels: input.labels.clone(),
        participant_column: input.group_by.clone(),
    };
    let format = infer_format(global.format, &input.input);
    Ok(parse_dataset(
        open_input(&input.input)?,
        format,
        global.schema.into(),
        &options,
    )?)
}

/// Reports for every condition of a dataset, with optional per-participant summaries.
pub fn analyze_records(
    records: &[TrialRecord],
    bootstrap: Option<&BootstrapConfig>,
    diag: &mut dyn Write,
) -> Result<Vec<ConditionReport>, CliError> {
    let mut reports = condition_reports(&aggregate(records)?)?;
    if records.iter().any(|r| r.participant.is_some()) {
        let by_participant = aggregate_by_participant(records)?;
        let total: usize = by_participant.values().map(Vec::len).sum();
        writeln!(
            diag,
            "warning: pooled metrics combine {total} participant-condition groups; \
             per-participant macro averages are reported under per_participant"
        )?;
        for report in &mut reports {
            let counts: Vec<_> = by_participant[&report.condition]
                .iter()
                .map(|(_, c)| *c)
                .collect();
            report.per_participant = ParticipantSummary::from_counts(&counts);
        }
    }
    if let Some(config) = bootstrap {
        reports = reports
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.with_bootstrap(config, i as u64))
            .collect();
    }
    Ok(reports)
}

/// Conditions of one plot must share the AI accuracy.
fn check_shared_accuracy(reports: &[ConditionReport], tolerance: f64) -> Result<AiAccuracy, CliError> {
    let first = &reports[0];
    for r in &reports[1..] {
        if (r.ai_accuracy - first.ai_accuracy).abs() > tolerance {
            return Err(RelianceError::AiAccuracyMismatch {
                baseline: first.ai_accuracy,
                treatment: r.ai_accuracy,
            }
            .into());
        }
    }
    Ok(AiAccuracy::new(first.ai_accuracy)?)
}

pub fn plot_spec(
    reports: &[ConditionReport],
    baseline: Option<&str>,
    tolerance: f64,
) -> Result<PlotSpec, CliError> {
    let acc = check_shared_accuracy(reports, tolerance)?;
    let base_index = match baseline {
        Some(id) => Some(
            reports
                .iter()
                .position(|r| r.condition == id)
                .ok_or_else(|| ReportError::UnknownCondition(id.to_string()))?,
        ),
        None => None,
    };
    let mut spec = PlotSpec::new(acc);
    let mut color = TREATMENT_COLORS.iter().cycle();
    for (i, r) in reports.iter().enumerate() {
        let point = PlotPoint::new(&r.condition, r.adherence, r.final_accuracy);
        spec.points.push(match base_index {
            Some(b) if b == i => point,
            Some(_) => point.with_fill(*color.next().expect("cycle")),
            None => point,
        });
    }
    if let Some(b) = base_index {
        spec.arrows = (0..reports.len())
            .filter(|&i| i != b)
            .map(|to| Arrow { from: b, to })
            .collect();
    }
    Ok(spec)
}

fn write_output(out_path: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), CliError> {
    match out_path {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::File {
                path: path.to_path_buf(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            w.write_all(bytes)?;
            w.flush()?;
        }
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("reports serialize");
    bytes.push(b'\n');
    bytes
}

pub fn compare_dataset(
    records: &[TrialRecord],
    baseline: &str,
    tolerance: f64,
    thresholds: &TagThresholds,
) -> Result<CompareReport, CliError> {
    let mut diag = io::sink();
    let reports = analyze_records(records, None, &mut diag)?;
    Ok(compare_reports(&reports, baseline, tolerance, thresholds)?)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, diag: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Analyze {
            input,
            bootstrap,
            confidence,
            table,
        } => {
            let records = load_records(g, input)?;
            let config = (*bootstrap > 0).then_some(BootstrapConfig {
                resamples: *bootstrap,
                confidence: *confidence,
                seed: g.seed,
            });
            let reports = analyze_records(&records, config.as_ref(), diag)?;
            let bytes = if *table {
                render_table(&reports).into_bytes()
            } else {
                to_json(&reports)
            };
            write_output(out, stdout, &bytes)
        }
        Command::Compare {
            input,
            baseline,
            quality_threshold,
            quantity_threshold,
        } => {
            let records = load_records(g, input)?;
            let thresholds = TagThresholds {
                quality: *quality_threshold,
                quantity: *quantity_threshold,
            };
            let report = compare_dataset(&records, baseline, g.tolerance, &thresholds)?;
            write_output(out, stdout, &to_json(&report))
        }
        Command::Simulate {
            acc,
            p_adhere_correct,
            p_adhere_wrong,
            n,
            composition,
            condition,
        } => {
            let acc = AiAccuracy::new(*acc).map_err(|e| SimError::Config(e.to_string()))?;
            let model = BehaviorModel::new(*p_adhere_correct, *p_adhere_wrong)?;
            let config = SimConfig::new(acc, model, *n, g.seed)
                .with_composition(match composition {
                    CompositionArg::Fixed => AiComposition::FixedCounts,
                    CompositionArg::Bernoulli => AiComposition::Bernoulli,
                })
                .with_condition(condition.clone());
            let records = simulate(&config)?;
            if g.schema == SchemaArg::Raw {
                writeln!(diag, "warning: simulate always writes the derived schema")?;
            }
            let format = infer_format(g.format, out.unwrap_or(Path::new("-")));
            let mut bytes = Vec::new();
            write_dataset(&records, &mut bytes, format)?;
            write_output(out, stdout, &bytes)?;

            let p = expected_profile(acc, &model);
            let summary = format!(
                "expected profile: correct_adherence={:.6} wrong_adherence={:.6} \
                 correct_override={:.6} wrong_override={:.6} final_accuracy={:.6}\n",
                p.correct_adherence().value(),
                p.wrong_adherence().value(),
                p.correct_override().value(),
                p.wrong_override().value(),
                p.final_accuracy().value()
            );
            // keep stdout clean when it carries the dataset
            if out.is_some() {
                stdout.write_all(summary.as_bytes())?;
            } else {
                diag.write_all(summary.as_bytes())?;
            }
            Ok(())
        }
        Command::Oracle {
            n,
            acc_numerator,
            json,
        } => {
            let report = OracleReport::new(*n, *acc_numerator)?;
            let bytes = if *json {
                to_json(&report)
            } else {
                report.render_text().into_bytes()
            };
            write_output(out, stdout, &bytes)?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::OracleMismatch(
                    report.rows.iter().filter(|r| !r.pass).count(),
                ))
            }
        }
        Command::Plot {
            input,
            baseline,
            palette,
            palette_below,
            palette_above,
            palette_line,
            palette_matched,
            palette_marker,
        } => {
            let records = load_records(g, input)?;
            let mut sink = io::sink();
            let reports = analyze_records(&records, None, &mut sink)?;
            let mut spec = plot_spec(&reports, baseline.as_deref(), g.tolerance)?;
            if let Some(p) = palette {
                spec.palette = spec.palette.with_overrides(p)?;
            }
            for (key, value) in [
                ("region-below", palette_below),
                ("region-above", palette_above),
                ("line", palette_line),
                ("matched", palette_matched),
                ("marker", palette_marker),
            ] {
                if let Some(color) = value {
                    spec.palette.set(key, color)?;
                }
            }
            let svg = match render(&spec) {
                Ok(svg) => svg,
                Err(PlotError::PointOutsideEnvelope { label, .. }) => {
                    // profiles from counts always lie in their own envelope
                    unreachable!("condition {label} fell outside its envelope")
                }
                Err(e) => return Err(e.into()),
            };
            write_output(out, stdout, svg.as_bytes())
        }
    }
}
