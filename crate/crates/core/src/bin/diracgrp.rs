use clap::Parser;
use dirac_groupoids::cli::{main_with, Cli};

fn main() {
    std::process::exit(main_with(&Cli::parse()));
}
