use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ncgeom_cli::{run, Job, JobConfig, Task};

/// Exact verifications of NC and NP cohomology identities.
#[derive(Parser, Debug)]
#[command(name = "ncgeom", version)]
struct Args {
    task: Task,
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout (overrides `output` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long)]
    jobs: Option<usize>,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let cfg = match JobConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let job = match Job::from_config(args.task, &cfg) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    if args.jobs == Some(0) {
        eprintln!("--jobs must be at least 1");
        return ExitCode::from(2);
    }
    if args.jobs == Some(1) {
        ncgeom::par::set_sequential(true);
    }
    let start = Instant::now();
    let result = execute(&job, &cfg, args.jobs);
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: {e}", job.task);
            return ExitCode::from(2);
        }
    };
    if args.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let json = report.to_json();
    let out = args.out.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &json) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    for v in &report.verdicts {
        eprintln!("{} {}", if v.pass { "PASS" } else { "FAIL" }, v.identity);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[cfg(feature = "parallel")]
fn execute(job: &Job, cfg: &JobConfig, jobs: Option<usize>) -> Result<ncgeom_cli::Report, ncgeom_cli::TaskError> {
    match jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| ncgeom_cli::TaskError(e.to_string()))?;
            pool.install(|| run(job, cfg))
        }
        _ => run(job, cfg),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute(job: &Job, cfg: &JobConfig, _jobs: Option<usize>) -> Result<ncgeom_cli::Report, ncgeom_cli::TaskError> {
    run(job, cfg)
}
