//! Dirichlet domain of PSL₂(O_d) at j. Usage: `bianchi_domain [d] [out.json]`.

use hypdomain::bianchi::bianchi_input;
use hypdomain::domain::{dirichlet_domain, FaceSource, ReductionOptions};
use hypdomain::hyperplanes::SurfaceShape;
use hypdomain::io::polyhedron_json;

fn main() {
    let d: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let input = bianchi_input(d).unwrap();
    let poly = dirichlet_domain(&input, &ReductionOptions::survey()).unwrap();
    println!("PSL2(O_{d}): {} faces, bound {}, {} rounds", poly.faces.len(), poly.bound, poly.rounds);
    println!("Poincare check passed: {}", poly.report.passed);
    println!("volume ~ {:.6}", poly.volume_estimate.unwrap_or(f64::NAN));
    for (i, f) in poly.faces.iter().enumerate() {
        let s = f.halfspace.surface();
        let what = match s.shape() {
            SurfaceShape::Plane { .. } => {
                let (n, off) = s.unit_plane().unwrap();
                format!("wall  n = ({:+.4}, {:+.4}), offset {:.6}", n.re, n.im, off)
            }
            SurfaceShape::Sphere { center, radius_sq } => format!("sphere center {center}, radius^2 {radius_sq}"),
        };
        let pairing = match (&f.pairing, f.source) {
            (Some(g), _) => g.to_string(),
            (None, FaceSource::StabilizerCell) => "stabilizer".into(),
            (None, _) => "-".into(),
        };
        println!("{i:>3} {what}  paired by {pairing}");
    }
    if let Some(path) = std::env::args().nth(2) {
        let text = serde_json::to_string_pretty(&polyhedron_json(&poly)).unwrap();
        std::fs::write(&path, text).unwrap();
        println!("wrote {path}");
    }
}
