//! `ammd` — skeleton activity recognition experiments from the command line.
//!
//! Subcommands: `decompose` (patch report for one sequence file), `classify`
//! (fit + evaluate a protocol, JSON report), `sweep` (δ/k grid accuracies as
//! CSV). Set `AMMD_LOG=1` for progress logging on stderr.

mod experiment;
mod report;

use std::fs;
use std::path::PathBuf;

use ammd_core::classifier::EvaluationReport;
use ammd_core::dataset::{load_sequence_file, SequenceFormat};
use ammd_core::decompose::decompose;
use ammd_core::descriptor::describe;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use experiment::{
    load_dataset, mean_accuracy, parse_grouping, parse_measures, parse_protocol, run_protocol,
};
use report::{ClassifyConfig, ClassifyReport, DecomposeReport, PatchReport};

#[derive(Parser)]
#[command(
    name = "ammd",
    version,
    about = "Skeleton activity recognition: linear-patch decomposition, order-preserving manifold distances, nearest-manifold classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose one sequence file into linear patches and their descriptors
    Decompose(DecomposeArgs),
    /// Fit a reference gallery and evaluate a split protocol
    Classify(ClassifyArgs),
    /// Evaluate a delta/k grid and emit one CSV row per grid point and measure
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FormatArgs {
    /// Number of skeleton joints J (frame dimension is 3·J)
    #[arg(long, default_value_t = 15)]
    joints: usize,
    /// Dataset-native layout: one joint per line, J lines per frame
    #[arg(long)]
    joint_per_line: bool,
    /// Comma-separated raw-column indices forming the coordinates
    #[arg(long)]
    columns: Option<String>,
}

impl FormatArgs {
    fn format(&self) -> Result<SequenceFormat> {
        Ok(SequenceFormat {
            joints: self.joints,
            columns: self
                .columns
                .as_deref()
                .map(|s| {
                    s.split(',')
                        .map(|t| t.trim().parse::<usize>().context("bad column index"))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?,
            joint_per_line: self.joint_per_line,
        })
    }
}

#[derive(Args)]
struct DecomposeArgs {
    /// Sequence file to decompose
    #[arg(long)]
    input: PathBuf,
    /// Nonlinearity threshold (must exceed 1)
    #[arg(long)]
    delta: f64,
    /// Sequential neighbor count
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    format: FormatArgs,
    /// Report path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Dataset manifest (JSON array of {path, label, subject, environment?})
    #[arg(long)]
    manifest: PathBuf,
    /// setupA | setupB | setupC | new-person | cross-person-env
    #[arg(long)]
    protocol: String,
    /// gestures | actions | subset1 | subset2 | subset3 | all
    #[arg(long, default_value = "all")]
    grouping: String,
    /// Repetitions with derived seeds (seed + index)
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Base seed recorded in the report
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Swap left/right lateral coordinates when the first frame is
    /// left-handed; format "lh:rh,la:ra,ls:rs" (joint indices)
    #[arg(long)]
    normalize_handedness: Option<String>,
    /// Axis index tested and swapped by the handedness rule (0=x, 1=y, 2=z)
    #[arg(long, default_value_t = 1)]
    handedness_axis: usize,
    #[command(flatten)]
    format: FormatArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    protocol: ProtocolArgs,
    /// Snippet metric x sequence matcher, e.g. combinedxammd
    #[arg(long, default_value = "combinedxammd")]
    measure: String,
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    k: usize,
    /// Report path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    protocol: ProtocolArgs,
    /// Comma-separated measures evaluated at every grid point
    #[arg(long, default_value = "mpdxammd,mddxammd,combinedxammd,combinedxdtw")]
    measure: String,
    /// Delta grid "start:stop:step" (start must exceed 1)
    #[arg(long)]
    delta_range: Option<String>,
    /// k grid "start:stop"
    #[arg(long)]
    k_range: Option<String>,
    /// Fixed delta when only --k-range is swept
    #[arg(long)]
    delta: Option<f64>,
    /// Fixed k when only --delta-range is swept
    #[arg(long)]
    k: Option<usize>,
    /// CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Decompose(args) => cmd_decompose(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_decompose(args: DecomposeArgs) -> Result<()> {
    let format = args.format.format()?;
    let sequence = load_sequence_file::<f64>(&args.input, &format)
        .with_context(|| format!("loading {}", args.input.display()))?;
    let patches = decompose(&sequence, args.delta, args.k)?;
    let report = DecomposeReport {
        source: args.input.display().to_string(),
        delta: args.delta,
        k: args.k,
        frames: sequence.len(),
        patch_count: patches.len(),
        patches: patches
            .patches()
            .iter()
            .map(|c| {
                let d = describe(c);
                PatchReport {
                    start: c.start(),
                    end: c.end(),
                    frames: c.len(),
                    score: c.score(),
                    mean: d.mean().to_vec(),
                    direction: d.direction().to_vec(),
                    tie_degenerate: d.tie_degenerate(),
                }
            })
            .collect(),
    };
    write_output(args.out.as_ref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn cmd_classify(args: ClassifyArgs) -> Result<()> {
    let p = &args.protocol;
    let kind = parse_protocol(&p.protocol)?;
    let grouping = parse_grouping(&p.grouping)?;
    let measure = args.measure.parse::<ammd_core::MeasureKind>()?;
    let dataset = load_dataset(
        &p.manifest,
        p.format.joints,
        p.format.joint_per_line,
        p.format.columns.as_deref(),
        p.normalize_handedness.as_deref(),
        p.handedness_axis,
    )?;
    let outcomes = run_protocol(
        &dataset, kind, grouping, p.seed, p.reps, args.delta, args.k, &[measure],
    )?;
    let outcome = &outcomes[0];

    let mut labels: Vec<String> = outcome
        .pairs
        .iter()
        .flat_map(|(t, p)| [t.clone(), p.clone()])
        .collect();
    labels.sort();
    labels.dedup();
    let evaluation = EvaluationReport::from_pairs(&outcome.pairs, labels)?;

    let report = ClassifyReport {
        config: ClassifyConfig {
            manifest: p.manifest.display().to_string(),
            protocol: p.protocol.clone(),
            grouping: p.grouping.clone(),
            measure: measure.to_string(),
            delta: args.delta,
            k: args.k,
            repetitions: p.reps,
            seed: p.seed,
            joints: p.format.joints,
            normalize_handedness: p.normalize_handedness.clone(),
        },
        mean_accuracy: mean_accuracy(&outcome.splits),
        splits: outcome.splits.clone(),
        labels: evaluation.labels,
        confusion: evaluation.confusion,
        per_class_recall: evaluation.per_class_recall,
        total_predictions: evaluation.total,
    };
    write_output(args.out.as_ref(), &(serde_json::to_string_pretty(&report)? + "\n"))
}

fn parse_delta_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("--delta-range must be start:stop:step, got '{spec}'");
    }
    let start: f64 = parts[0].parse().context("delta range start")?;
    let stop: f64 = parts[1].parse().context("delta range stop")?;
    let step: f64 = parts[2].parse().context("delta range step")?;
    if start <= 1.0 {
        bail!("delta range start must be larger than 1, got {start}");
    }
    if step <= 0.0 {
        bail!("delta range step must be positive, got {step}");
    }
    if stop < start {
        bail!("delta range stop {stop} is below start {start}");
    }
    let mut values = Vec::new();
    let mut i = 0usize;
    loop {
        let v = start + step * i as f64;
        if v > stop + 1e-12 {
            break;
        }
        values.push(v);
        i += 1;
    }
    Ok(values)
}

fn parse_k_range(spec: &str) -> Result<Vec<usize>> {
    let Some((a, b)) = spec.split_once(':') else {
        bail!("--k-range must be start:stop, got '{spec}'");
    };
    let start: usize = a.parse().context("k range start")?;
    let stop: usize = b.parse().context("k range stop")?;
    if start == 0 {
        bail!("k range start must be at least 1");
    }
    if stop < start {
        bail!("k range stop {stop} is below start {start}");
    }
    Ok((start..=stop).collect())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let p = &args.protocol;
    let kind = parse_protocol(&p.protocol)?;
    let grouping = parse_grouping(&p.grouping)?;
    let measures = parse_measures(&args.measure)?;

    let deltas = match (&args.delta_range, args.delta) {
        (Some(spec), _) => parse_delta_range(spec)?,
        (None, Some(delta)) if delta > 1.0 => vec![delta],
        (None, Some(delta)) => bail!("delta must be larger than 1, got {delta}"),
        (None, None) => bail!("provide --delta-range or a fixed --delta"),
    };
    let ks = match (&args.k_range, args.k) {
        (Some(spec), _) => parse_k_range(spec)?,
        (None, Some(k)) if k >= 1 => vec![k],
        (None, Some(_)) => bail!("k must be at least 1"),
        (None, None) => bail!("provide --k-range or a fixed --k"),
    };

    let dataset = load_dataset(
        &p.manifest,
        p.format.joints,
        p.format.joint_per_line,
        p.format.columns.as_deref(),
        p.normalize_handedness.as_deref(),
        p.handedness_axis,
    )?;

    let mut csv = String::from("delta,k,measure,mean_accuracy\n");
    for &delta in &deltas {
        for &k in &ks {
            let outcomes =
                run_protocol(&dataset, kind, grouping, p.seed, p.reps, delta, k, &measures)?;
            for outcome in &outcomes {
                csv.push_str(&format!(
                    "{delta},{k},{},{}\n",
                    outcome.measure,
                    mean_accuracy(&outcome.splits)
                ));
            }
        }
    }
    write_output(args.out.as_ref(), &csv)
}
