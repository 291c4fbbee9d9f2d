//! Re-derives the τ template and rewrites `fixtures/tau.json` and `fixtures/tau.cert.json`.

use std::path::Path;

use mbtd_core::solver::Solver;
use mbtd_core::strategies::tau::{extract_tau, fixture_texts};

fn main() {
    let (g, cert) = extract_tau(&Solver::default()).expect("tau search");
    let (graph, cert_text) = fixture_texts(&g, &cert);
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::write(dir.join("tau.json"), graph + "\n").unwrap();
    std::fs::write(dir.join("tau.cert.json"), cert_text + "\n").unwrap();
    println!("excluded {:?}, {} solver nodes", cert.excluded, cert.nodes);
}
