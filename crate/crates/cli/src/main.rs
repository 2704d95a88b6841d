//! `catlab` entry point: parse arguments, dispatch, exit with the
//! pass/fail/budget/usage code.

use clap::Parser;

fn main() {
    let cli = catlab::args::Cli::parse();
    std::process::exit(catlab::dispatch(cli));
}
