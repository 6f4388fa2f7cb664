//! Replays the checked-in argument seeds through the parsers used by the
//! `cli_args` fuzz target.

use std::fs;
use std::path::PathBuf;

use bfs_cli::args::{parse_levels, parse_rules, FunctionSpec};
use bfs_cli::Cli;
use clap::Parser;

#[test]
fn argument_seeds() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/cli_args");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let parsed = Cli::try_parse_from(std::iter::once("bfs").chain(text.split_whitespace()));
        match name.as_str() {
            "bad_levels" => assert!(parse_levels(&text).is_err()),
            "empty_poly" => assert!(text.parse::<FunctionSpec>().is_err()),
            _ => assert!(parsed.is_ok(), "{name}: {}", parsed.unwrap_err()),
        }
        let _ = parse_rules(&text);
        seen += 1;
    }
    assert!(seen >= 6);
}
