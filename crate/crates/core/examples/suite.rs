//! Runs the default verification suite and prints the text report.

use mbtd_core::solver::SolverConfig;
use mbtd_core::verify::{default_suite, render_text, run_campaign};

fn main() {
    let summary = run_campaign(&default_suite(), None, &SolverConfig::default().sequential()).unwrap();
    print!("{}", render_text(&summary));
}
