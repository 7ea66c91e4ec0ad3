#![no_main]

use clap::Parser;
use iterquad::cli::{Cli, Command};
use libfuzzer_sys::fuzz_target;

// Whitespace-separated argument vector; parsed and validated, never run.
fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let args = std::iter::once("iterquad").chain(text.split_whitespace());
    let Ok(cli) = Cli::try_parse_from(args) else {
        return;
    };
    let _ = match &cli.command {
        Command::OrbitCensus(c) => c.to_config(1),
        Command::Ftype { common, .. } | Command::Verify { common, .. } => common.to_config(1),
        Command::Transitions { common, .. } => common.to_config(0),
    };
});
