//! A group read from a generator file: the principal congruence subgroup Γ(2).

use hypdomain::domain::{ford_domain, side_pairings, ReductionOptions};
use hypdomain::io::GeneratorFile;

const GAMMA2: &str = r#"{
  "schema": "hypdomain.generators/1",
  "model": "H2",
  "name": "Gamma(2)",
  "generators": [["1", "2", "0", "1"], ["1", "0", "2", "1"]],
  "cusp_generators": [["1", "2", "0", "1"]]
}"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).unwrap(),
        None => GAMMA2.to_string(),
    };
    let input = GeneratorFile::parse(&text).unwrap().to_input().unwrap();
    let poly = ford_domain(&input, &ReductionOptions::default()).unwrap();
    println!("{}: {} faces, area {:.12}", poly.origin, poly.faces.len(), poly.volume_estimate.unwrap_or(f64::NAN));
    for g in side_pairings(&poly).unwrap() {
        println!("  {g}");
    }
    println!("Poincare check: {:?}", poly.report);
}
