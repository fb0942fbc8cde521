use std::process::ExitCode;

use clap::Parser;
use grasslab_cli::{run, Cli};

fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("GRASSLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("GRASSLAB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("usage error: {msg}");
        return ExitCode::from(64);
    }
    match run(&cli.command) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            if report.passed {
                return ExitCode::SUCCESS;
            }
            let names: Vec<&str> = report.failing().map(|c| c.name.as_str()).collect();
            eprintln!("verification failed: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
