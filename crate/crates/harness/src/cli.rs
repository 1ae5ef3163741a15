use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

use offscreen_core::extreme::alpha_grid;
use offscreen_core::scagnostics::{deviation_scene, deviation_table, gen_archetypes, DeviationRow};
use offscreen_core::scenario::io::{read_trials, write_trials};
use offscreen_core::scenario::{gen_trials, Layout, Task};
use offscreen_core::{compute_intrusion, BorderConfig, BorderMode, Rect, Scene, Strategy};

use crate::analyze::{analyze, write_summary};
use crate::responses::{read_responses, write_responses, ResponseLog};
use crate::service::{serve, AppState};
use crate::simulate::{simulate, Respondent};

/// Tolerance for an orthographic deviation to count as zero.
pub const ORTHO_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "offscreen",
    version,
    about = "Off-screen projection engine tools"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the trials of one task as JSON lines.
    GenTrials {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        task: u8,
        #[arg(long, default_value_t = 18)]
        participants: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scagnostics deviation of projected archetype datasets.
    EvalScagnostics {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Only evaluate this strategy.
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long, default_value = "adaptive")]
        border: BorderMode,
    },
    /// Serve the JSON endpoints on localhost.
    Serve {
        #[arg(long, default_value_t = 8000)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 18)]
        participants: usize,
        /// Response log, appended to.
        #[arg(long, default_value = "responses.csv")]
        log: PathBuf,
    },
    /// Summarize a response log per condition.
    Analyze {
        /// Trial files (JSON lines); several tasks may be given.
        #[arg(long, required = true, num_args = 1..)]
        trials: Vec<PathBuf>,
        #[arg(long)]
        responses: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the responses of a synthetic participant.
    Simulate {
        #[arg(long)]
        trials: PathBuf,
        /// orthographic, radial or random
        #[arg(long)]
        respondent: Respondent,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// CSV grid of the angle between orthographic and radial directions.
    AlphaMap {
        #[arg(long, default_value_t = 1000.0)]
        width: f64,
        #[arg(long, default_value_t = 1000.0)]
        height: f64,
        #[arg(long, default_value_t = 25.0)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the archetype datasets as JSON.
    Datasets {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

fn io_err(path: &std::path::Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn create(path: &std::path::Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

pub fn eval_rows(
    seed: u64,
    border: BorderMode,
    strategy: Option<Strategy>,
) -> Result<Vec<DeviationRow>, CliError> {
    let (scene, _) = deviation_scene();
    let intrusion = compute_intrusion(&scene, &BorderConfig::experiment(border))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let data = gen_archetypes(seed);
    let mut rows = Vec::new();
    for s in Strategy::ALL {
        if strategy.is_none_or(|only| only == s) {
            rows.extend(
                deviation_table(&scene, &intrusion, s, &data)
                    .map_err(|e| CliError::Check(e.to_string()))?,
            );
        }
    }
    Ok(rows)
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::GenTrials {
            task,
            participants,
            seed,
            out,
        } => {
            let task = Task::from_number(task)
                .ok_or_else(|| CliError::Usage(format!("no task {task}")))?;
            let trials = gen_trials(seed, task, participants, &Layout::default())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let f = create(&out)?;
            write_trials(f, &trials)
                .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            Ok(format!(
                "{} trials ({participants} participants × {})",
                trials.len(),
                task.trials_per_participant()
            ))
        }
        Command::EvalScagnostics {
            seed,
            out,
            strategy,
            border,
        } => {
            let start = Instant::now();
            let mut w = csv::Writer::from_writer(create(&out)?);
            let rows = eval_rows(seed, border, strategy)?;
            w.write_record(["dataset", "strategy", "region", "measure", "deviation"])
                .map_err(|e| CliError::Io(e.to_string()))?;
            let names = gen_archetypes(seed);
            for r in &rows {
                let name = &names[r.dataset as usize - 1].name;
                w.write_record([
                    name.as_str(),
                    r.strategy.as_str(),
                    r.region.as_str(),
                    r.measure.as_str(),
                    &r.deviation.to_string(),
                ])
                .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(io_err(&out))?;
            let ortho: Vec<&DeviationRow> = rows
                .iter()
                .filter(|r| r.strategy == Strategy::Orthographic)
                .collect();
            let worst = ortho.iter().map(|r| r.deviation).fold(0.0, f64::max);
            let mut radial_sets: Vec<u32> = rows
                .iter()
                .filter(|r| r.strategy == Strategy::Radial && r.deviation > 0.01)
                .map(|r| r.dataset)
                .collect();
            radial_sets.dedup();
            let summary = format!(
                "{} rows; max orthographic deviation {worst:e}; {} datasets with a radial deviation > 0.01; {:.2?}",
                rows.len(),
                radial_sets.len(),
                start.elapsed()
            );
            if worst >= ORTHO_TOLERANCE {
                return Err(CliError::Check(summary));
            }
            Ok(summary)
        }
        Command::Serve {
            port,
            host,
            seed,
            participants,
            log,
        } => {
            let log = ResponseLog::open(&log).map_err(io_err(&log))?;
            let state = Arc::new(AppState {
                seed,
                participants,
                layout: Layout::default(),
                datasets: gen_archetypes(seed),
                log: Mutex::new(log),
            });
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Io(e.to_string()))?;
            rt.block_on(serve(SocketAddr::new(host, port), state))
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok("stopped".into())
        }
        Command::Analyze {
            trials,
            responses,
            out,
        } => {
            let mut all = Vec::new();
            for p in &trials {
                let f = File::open(p).map_err(io_err(p))?;
                all.extend(
                    read_trials(BufReader::new(f))
                        .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
                );
            }
            let log = read_responses(&responses)
                .map_err(|e| CliError::Io(format!("{}: {e}", responses.display())))?;
            let rows = analyze(&all, &log).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut w = create(&out)?;
            write_summary(&mut w, &rows).map_err(|e| CliError::Io(e.to_string()))?;
            w.flush().map_err(io_err(&out))?;
            Ok(format!(
                "{} responses in {} conditions",
                log.len(),
                rows.len()
            ))
        }
        Command::Simulate {
            trials,
            respondent,
            seed,
            out,
        } => {
            let f = File::open(&trials).map_err(io_err(&trials))?;
            let t = read_trials(BufReader::new(f))
                .map_err(|e| CliError::Io(format!("{}: {e}", trials.display())))?;
            let log = simulate(&t, respondent, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            write_responses(&out, &log).map_err(io_err(&out))?;
            Ok(format!("{} responses", log.len()))
        }
        Command::AlphaMap {
            width,
            height,
            step,
            out,
        } => {
            if !(step > 0.0) {
                return Err(CliError::Usage("--step must be positive".into()));
            }
            let vp =
                Rect::new(0.0, 0.0, width, height).map_err(|e| CliError::Usage(e.to_string()))?;
            let scene = Scene::new(vp.expanded(width, height, width, height), vp, width, height)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let grid = alpha_grid(&scene, step);
            let mut w = csv::Writer::from_writer(create(&out)?);
            w.write_record(["x", "y", "region", "alpha"])
                .map_err(|e| CliError::Io(e.to_string()))?;
            for s in &grid {
                w.write_record([
                    s.x.to_string(),
                    s.y.to_string(),
                    s.region.as_str().to_string(),
                    s.alpha.to_string(),
                ])
                .map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush().map_err(io_err(&out))?;
            Ok(format!("{} samples", grid.len()))
        }
        Command::Datasets { seed, out } => {
            let data = gen_archetypes(seed);
            let mut w = create(&out)?;
            serde_json::to_writer_pretty(&mut w, &data).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w).map_err(io_err(&out))?;
            Ok(format!("{} datasets", data.len()))
        }
    }
}
