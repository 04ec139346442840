//! Command surface: generate, generate-suite, verify, stats, evaluate,
//! score, baseline.

use clap::{Parser, Subcommand};
use spatialkit_eval::harness::{evaluate, records_from_jsonl, records_to_jsonl, RunSettings};
use spatialkit_eval::prompt::PromptMode;
use spatialkit_eval::score::{random_baseline, score};
use spatialkit_eval::transport::{is_stub_endpoint, HttpTransport, StubTransport, Transport};
use spatialkit_forge::dataset::{read_manifest, write_dataset};
use spatialkit_forge::params::{GenConfig, TaskId};
use spatialkit_forge::verify::verify_dataset;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "spatialkit", version, about = "Spatial-visualization puzzle generator and evaluation harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances for one task and level.
    Generate {
        #[arg(long)]
        task: String,
        #[arg(long)]
        level: u8,
        #[arg(long)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Rate at which the pinned none option is the correct answer.
        #[arg(long, default_value_t = 0.10)]
        none_rate: f64,
    },
    /// Generate the full case-table suite (1,100 instances).
    GenerateSuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Integer divisor on the per-level counts (2 = half suite).
        #[arg(long, default_value_t = 1)]
        divisor: u32,
        #[arg(long, default_value_t = 0.10)]
        none_rate: f64,
    },
    /// Re-run every instance's construction oracle and byte-compare the
    /// dataset; nonzero exit on any violation.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Dataset statistics: answer histogram, modalities, per-task counts.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Query a model endpoint over every instance and write JSONL records.
    Evaluate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Chat-completions URL, or "stub" for the bundled offline stub.
        #[arg(long)]
        endpoint: String,
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "cot")]
        mode: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 4)]
        concurrency: usize,
        #[arg(long, default_value_t = 60)]
        timeout_secs: u64,
    },
    /// Score a JSONL record file against a dataset manifest.
    Score {
        #[arg(long)]
        records: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Optional CSV output path; markdown always prints to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Uniform letter-guessing baseline over a dataset.
    Baseline {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 10000)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate { task, level, count, seed, out, jobs, none_rate } => {
            let task = TaskId::from_slug(&task)
                .ok_or_else(|| format!("unknown task '{task}'; see README for slugs"))?;
            if level >= task.levels() {
                return Err(format!("task {} has levels 0..{}", task.slug(), task.levels()));
            }
            if count == 0 {
                return Err("count must be at least 1".into());
            }
            let cfg = GenConfig { none_correct_rate: none_rate };
            let instances = if jobs <= 1 || count < 2 {
                spatialkit_forge::generate_batch(task, level, seed, count, &cfg)
                    .map_err(|e| e.to_string())?
            } else {
                parallel_batch(task, level, seed, count, &cfg, jobs)?
            };
            write_dataset(&instances, &out, seed, &cfg).map_err(|e| e.to_string())?;
            println!("wrote {} instances under {}", instances.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::GenerateSuite { seed, out, jobs, divisor, none_rate } => {
            let cfg = GenConfig { none_correct_rate: none_rate };
            let instances = spatialkit_forge::generate_suite(seed, divisor, &cfg, jobs)
                .map_err(|e| e.to_string())?;
            let manifest =
                write_dataset(&instances, &out, seed, &cfg).map_err(|e| e.to_string())?;
            for (task_slug, levels) in &manifest.counts {
                let total: u32 = levels.values().sum();
                println!("{task_slug}: {total}");
            }
            println!("total: {}", manifest.instances.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input } => {
            let report = verify_dataset(&input).map_err(|e| e.to_string())?;
            println!("checked {} instances", report.checked);
            for line in report
                .oracle_failures
                .iter()
                .chain(&report.byte_mismatches)
                .chain(&report.count_mismatches)
            {
                println!("violation: {line}");
            }
            if report.ok() {
                println!("verify: PASS");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verify: FAIL");
                Ok(ExitCode::from(1))
            }
        }
        Command::Stats { input } => {
            let manifest = read_manifest(&input).map_err(|e| e.to_string())?;
            let stats = spatialkit_forge::dataset::dataset_stats(&input, &manifest)
                .map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Evaluate { input, endpoint, model, mode, out, concurrency, timeout_secs } => {
            let mode = PromptMode::parse(&mode).ok_or("mode must be 'cot' or 'direct'")?;
            let manifest = read_manifest(&input).map_err(|e| e.to_string())?;
            let transport: Box<dyn Transport> = if is_stub_endpoint(&endpoint) {
                Box::new(StubTransport)
            } else {
                Box::new(HttpTransport::new(&endpoint, Duration::from_secs(timeout_secs)))
            };
            let settings = RunSettings {
                model,
                mode,
                concurrency,
                retries: 3,
                backoff: Duration::from_millis(250),
                endpoint_label: endpoint.clone(),
            };
            let records = evaluate(&input, &manifest, transport.as_ref(), &settings)
                .map_err(|e| e.to_string())?;
            std::fs::write(&out, records_to_jsonl(&records))
                .map_err(|e| format!("writing {}: {e}", out.display()))?;
            let table = score(&records, &manifest).map_err(|e| e.to_string())?;
            println!("{}", table.to_markdown());
            Ok(ExitCode::SUCCESS)
        }
        Command::Score { records, input, csv } => {
            let manifest = read_manifest(&input).map_err(|e| e.to_string())?;
            let text = std::fs::read_to_string(&records)
                .map_err(|e| format!("reading {}: {e}", records.display()))?;
            let records = records_from_jsonl(&text).map_err(|e| e.to_string())?;
            let table = score(&records, &manifest).map_err(|e| e.to_string())?;
            println!("{}", table.to_markdown());
            if let Some(path) = csv {
                std::fs::write(&path, table.to_csv())
                    .map_err(|e| format!("writing {}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Baseline { input, trials, seed } => {
            if trials == 0 {
                return Err("trials must be at least 1".into());
            }
            let manifest = read_manifest(&input).map_err(|e| e.to_string())?;
            let mut rng = spatialkit_core::rng::Rng::from_seed(seed);
            let table = random_baseline(&manifest, trials, &mut rng);
            println!("{}", table.to_markdown());
            let none_tasks: Vec<&str> = manifest
                .instances
                .iter()
                .map(|e| e.task)
                .filter(|t| t.uses_none_option())
                .map(|t| t.slug())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            if !none_tasks.is_empty() {
                println!(
                    "note: tasks with the pinned 'none of the others' option (answers skew away from D): {}",
                    none_tasks.join(", ")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Index-sharded parallel generation; output order equals sequential order.
fn parallel_batch(
    task: TaskId,
    level: u8,
    seed: u64,
    count: u32,
    cfg: &GenConfig,
    jobs: usize,
) -> Result<Vec<spatialkit_forge::dataset::GeneratedInstance>, String> {
    let results: Vec<Result<_, String>> = std::thread::scope(|scope| {
        let chunk = count.div_ceil(jobs as u32).max(1);
        let mut handles = Vec::new();
        for w in 0..jobs as u32 {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(count);
            if lo >= hi {
                break;
            }
            let cfg = cfg.clone();
            handles.push(scope.spawn(move || {
                (lo..hi)
                    .map(|i| {
                        spatialkit_forge::generate_instance(task, level, seed, i, &cfg)
                            .map_err(|e| e.to_string())
                    })
                    .collect::<Result<Vec<_>, String>>()
            }));
        }
        handles.into_iter().map(|h| h.join().expect("worker does not panic")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
