//! `valtree`: batch front end to the valuation library.

mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cli::Cli;
use commands::{Context, Failure, Format};

/// `--trunc` wins over `VALTREE_TRUNC`, which wins over the built-in default.
fn truncation(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("VALTREE_TRUNC") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("VALTREE_TRUNC must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let format = if g.json {
        Format::Json
    } else if g.dot {
        Format::Dot
    } else {
        Format::Text
    };
    let result = truncation(g.trunc).and_then(|trunc| {
        let cx = Context { format, trunc };
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = g.jobs {
            pool = pool.num_threads(n.max(1));
        }
        let pool = pool
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start workers: {e}")))?;
        pool.install(|| commands::run(&cli.verb, &cx))
    });
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("valtree: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
