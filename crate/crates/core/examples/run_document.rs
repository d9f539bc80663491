//! Runs any command on a JSON document, as the binary does.
//!
//! `cargo run --example run_document -- classify crates/core/corpus/poisson-group.json`

use dirac_groupoids::cli::{run_text, Options, Task};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let command = args.next().unwrap_or_else(|| "verify-multiplicative".into());
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/pair-poisson.json").into());
    let (task, path) = if command == "iso-check" {
        (Task::parse(&command, Some(&path))?, args.next().ok_or("iso-check <kind> <file>")?)
    } else {
        (Task::parse(&command, None)?, path)
    };
    let report = run_text(task, &std::fs::read_to_string(&path)?, Options::default())?;
    println!("{}", report.to_json());
    Ok(())
}
