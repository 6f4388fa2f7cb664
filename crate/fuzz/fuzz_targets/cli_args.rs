#![no_main]

use bfs_cli::args::{parse_levels, parse_rules, FunctionSpec, LoadSpec};
use bfs_cli::Cli;
use clap::Parser;
use libfuzzer_sys::fuzz_target;

// Exercises argument parsing only; nothing is executed.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_levels(text);
    let _ = parse_rules(text);
    let _ = text.parse::<FunctionSpec>();
    let _ = text.parse::<LoadSpec>();
    let argv = std::iter::once("bfs").chain(text.split_whitespace());
    let _ = Cli::try_parse_from(argv);
});
