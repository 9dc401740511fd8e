use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pipedyn::dispatch::CompressionGuard;
use pipedyn_cli::commands::{self, CliError, CliResult};

#[derive(Parser)]
#[command(name = "pipedyn", version, about = "Transient gas pipeline fields, dispatch and reconstruction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the scenario's pressure field on a grid.
    Simulate {
        scenario: PathBuf,
        /// Grid as NXxNT, e.g. 13x9.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the normalized scenario instead of the field.
        #[arg(long)]
        dump_normalized: bool,
    },
    /// Ratio series, fixation, localization and the valve plan.
    Dispatch {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the decision record as JSON here (stderr otherwise).
        #[arg(long)]
        decision: Option<PathBuf>,
        /// Write the sequencer action log CSV here.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Compression guard epsilon.
        #[arg(long, default_value_t = 1.3)]
        epsilon: f64,
    },
    /// Reconstruction optimizers.
    Optimize {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate a reference table against its published values.
    Tables {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance matrix.
    Verify {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

fn write_output(out: Option<&Path>, text: &str, command: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let meta = serde_json::json!({
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "threads": rayon::current_num_threads(),
            });
            let mut side = path.as_os_str().to_owned();
            side.push(".meta.json");
            std::fs::write(&side, format!("{meta:#}\n"))
                .map_err(|e| CliError::Input(format!("{}: {e}", Path::new(&side).display())))
        }
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate { scenario, grid, out, dump_normalized } => {
            let s = commands::load_scenario(&scenario)?;
            let text =
                if dump_normalized { commands::dump_normalized(&s) } else { commands::simulate(&s, grid.as_deref())? };
            write_output(out.as_deref(), &text, "simulate")
        }
        Command::Dispatch { scenario, out, decision, log, epsilon } => {
            let s = commands::load_scenario(&scenario)?;
            let guard = CompressionGuard::new(epsilon)?;
            let res = commands::dispatch(&s, guard)?;
            write_output(out.as_deref(), &res.csv, "dispatch")?;
            let record = format!("{:#}\n", serde_json::to_value(&res.decision).expect("decision serializes"));
            match decision {
                Some(path) => {
                    std::fs::write(&path, record).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
                }
                None => eprint!("{record}"),
            }
            if let Some(path) = log {
                std::fs::write(&path, commands::log_csv(&res.log))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Optimize { scenario, out } => {
            let s = commands::load_scenario(&scenario)?;
            write_output(out.as_deref(), &commands::optimize(&s)?, "optimize")
        }
        Command::Tables { id, out } => {
            let (text, notes) = commands::tables(&id)?;
            for n in notes {
                eprintln!("{n}");
            }
            write_output(out.as_deref(), &text, "tables")
        }
        Command::Verify { criterion } => {
            let (text, failed) = commands::verify(criterion)?;
            print!("{text}");
            if failed > 0 {
                Err(CliError::VerifyFailed(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn init_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("PIPEDYN_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("PIPEDYN_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(CliError::Input("PIPEDYN_THREADS must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match init_threads().and_then(|_| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pipedyn: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
