// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dephaser::cli::{self, Command, Format};
use dephaser::Error;

#[derive(Parser)]
#[command(name = "dephaser", version, about = "Pure-dephasing dynamics and non-Markovianity witnesses")]
struct Args {
    /// eta, evolve, correlation, witness, wigner, figure1 or figure2
    command: Command,
    #[arg(long)]
    config: PathBuf,
    /// Write here instead of the config's output path (or stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<Format>,
}

fn execute(args: &Args) -> Result<(), Error> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::Io(format!("{}: {e}", args.config.display())))?;
    let mut config = cli::parse_config_for(&text, args.command)?;
    if let Some(format) = args.format {
        config.output.format = format;
    }
    let rendered = cli::run(&config)?.render(config.output.format);
    // --out only redirects; it is not part of the echoed config.
    let target = args.out.clone().or_else(|| config.output.path.as_ref().map(PathBuf::from));
    match target {
        Some(path) => std::fs::write(&path, rendered).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
