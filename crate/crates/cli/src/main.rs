//! `drinfeld` command-line tool.

mod args;
mod cmd_misc;
mod cmd_moduli;
mod cmd_ss;
mod util;

use args::{Cli, Group};
use clap::Parser;
use drinfeld::{Error, Result};
use std::process::ExitCode;

fn run(cli: &Cli) -> Result<()> {
    let (v, cfg) = match &cli.group {
        Group::Ss(c) => cmd_ss::ss(c)?,
        Group::Brandt(c) => cmd_ss::brandt(c)?,
        Group::Jl(c) => cmd_ss::jl(c)?,
        Group::Moduli(c) => cmd_moduli::moduli(c)?,
        Group::HeckeLocal(c) => cmd_misc::local(c)?,
        Group::Drinfeld(c) => cmd_misc::drinfeld(c)?,
    };
    util::emit(&v, cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) => 1,
        Error::Consistency(_) | Error::InterpolationResidual { .. } => 2,
        Error::ResourceCap(_) => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.group.config().workers {
        drinfeld::par::set_workers(n);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
