use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use toricmap::{compile, parse, render_text, to_json, Deadline};

#[derive(Parser)]
#[command(name = "toricmap", version, about = "Rational maps between toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script (`-` reads standard input).
    Run {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Give up on Gröbner computations after this many seconds.
        #[arg(long, value_name = "SECONDS")]
        deadline: Option<f64>,
        /// Add per-command wall time to the JSON output.
        #[arg(long)]
        timing: bool,
    },
    /// Print a script in canonical form.
    Fmt { file: PathBuf },
}

const EXIT_INPUT: u8 = 2;
const EXIT_COMMAND: u8 = 3;

fn read(file: &PathBuf) -> Result<String, String> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {}", e))?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{}: {}", file.display(), e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.command {
        Cmd::Run { file, .. } | Cmd::Fmt { file } => file.clone(),
    };
    let text = match read(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let script = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{}", file.display(), e);
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match cli.command {
        Cmd::Fmt { .. } => {
            print!("{}", script);
            ExitCode::SUCCESS
        }
        Cmd::Run { json, deadline, timing, .. } => {
            let mut program = match compile(&script) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("{}:{}", file.display(), e);
                    return ExitCode::from(EXIT_INPUT);
                }
            };
            let intr = match deadline {
                Some(s) if s.is_finite() && s >= 0.0 => Deadline::after(Duration::from_secs_f64(s)),
                Some(_) => {
                    eprintln!("error: --deadline must be a nonnegative number of seconds");
                    return ExitCode::from(EXIT_INPUT);
                }
                None => Deadline::none(),
            };
            let records = program.run(&intr);
            if json {
                print!("{}", to_json(&records, timing));
            } else {
                print!("{}", render_text(&records));
            }
            if records.iter().all(|r| r.ok()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_COMMAND)
            }
        }
    }
}
