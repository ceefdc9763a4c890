use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use relaysim_cli::{run, Command, GridAxis, Outcome, RunManifest, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "relaysim", version, about = "Teleportation relay simulator")]
struct Cli {
    /// fringe | scan-theta | sweep | budget | oracle-check
    command: Command,

    /// Flat `key = value` configuration file
    #[arg(long)]
    config: PathBuf,

    /// CSV output path
    #[arg(long)]
    out: PathBuf,

    /// Overrides the config seed (oracle-check)
    #[arg(long)]
    seed: Option<u64>,

    /// axis=start:stop:steps, repeatable
    #[arg(long, num_args = 1..)]
    grid: Vec<GridAxis>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let manifest = RunManifest {
        command: cli.command,
        config_path: cli.config,
        output_path: cli.out,
        seed: cli.seed,
        grid: cli.grid,
    };
    match run(&manifest) {
        Ok(outcome) => {
            if let Outcome::OracleFailed(report) = &outcome {
                for row in &report.rows {
                    eprintln!(
                        "{}: analytic {:e}, estimate {:e} ± {:e}, z = {:.3}{}",
                        row.regime.label(),
                        row.analytic,
                        row.estimate,
                        row.std_err,
                        row.z,
                        if row.pass { "" } else { "  FAIL" }
                    );
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
