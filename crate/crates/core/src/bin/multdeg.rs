use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use multdeg::cli::{run_script, Event, RunOptions};

/// Runs a multdeg script.
///
/// Example: `ring x,y; I = x^2,y^2; hilbert I`
#[derive(Parser, Debug)]
#[command(name = "multdeg", version)]
struct Args {
    /// Script file, or `-` for standard input.
    input: Option<PathBuf>,
    /// Script text given inline instead of a file.
    #[arg(short = 'e', long = "eval", conflicts_with = "input")]
    eval: Option<String>,
    /// One JSON object per line.
    #[arg(long)]
    json: bool,
    /// Report elapsed_ms as 0.
    #[arg(long)]
    no_timing: bool,
}

fn read_input(args: &Args) -> io::Result<String> {
    if let Some(text) = &args.eval {
        return Ok(text.clone());
    }
    match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        json: args.json,
        no_timing: args.no_timing,
    };
    let events = match run_script(&text, opts) {
        Ok(ev) => ev,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = false;
    for ev in events {
        match ev {
            Event::Report(r) => {
                let _ = out.write_all(r.render().as_bytes());
            }
            Event::Failure(f) => {
                failed = true;
                let _ = out.flush();
                eprintln!("error: {} (in `{}`)", f.error, f.source);
            }
        }
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
