use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orbitlab_cli::demo::WitnessSize;
use orbitlab_cli::run::{Outcome, RunOverrides};
use orbitlab_cli::{cmd_demo, cmd_run, cmd_verify_certificate, exit_code_for, CliResult, DemoName, Options, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "orbitlab", version, about = "Orbit, mean-ergodic and JdLG diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory (default orbitlab-out)
    #[arg(long)]
    out_dir: Option<PathBuf>,

    #[arg(long)]
    tol: Option<f64>,

    /// Write the JSON report (default when neither format is given)
    #[arg(long)]
    json: bool,

    /// Write CSV tables
    #[arg(long)]
    csv: bool,
}

impl Common {
    fn options(&self) -> Options {
        let d = Options::default();
        Options {
            seed: self.seed.unwrap_or(d.seed),
            tol: self.tol.unwrap_or(d.tol),
            out_dir: self.out_dir.clone().unwrap_or(d.out_dir),
            json: self.json || !self.csv,
            csv: self.csv,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a packaged scenario
    Demo {
        name: DemoName,
        /// Witness demo: number of ladder vectors
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Witness demo: largest exponent searched
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        /// Witness demo: random subsets audited
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the operations requested by a TOML config
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Re-run bp_test on a witness certificate
    VerifyCertificate {
        path: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn execute(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Demo {
            name,
            count,
            horizon,
            samples,
            common,
        } => cmd_demo(name, &common.options(), WitnessSize { count, horizon, samples }),
        Command::Run { config, common } => cmd_run(
            &config,
            &RunOverrides {
                seed: common.seed,
                tol: common.tol,
                out_dir: common.out_dir,
                json: common.json,
                csv: common.csv,
            },
        ),
        Command::VerifyCertificate { path, samples, common } => {
            cmd_verify_certificate(&path, samples, &common.options())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let result = execute(cli).and_then(|out| {
        let written = out.report.write(&out.stem, &out.options)?;
        Ok((out, written))
    });
    match result {
        Ok((out, written)) => {
            print!("{}", out.report.summary());
            for path in written {
                println!("wrote {}", path.display());
            }
            ExitCode::from(exit_code_for(&out.report) as u8)
        }
        Err(e) => {
            eprintln!("orbitlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
