//! The modular group: Dirichlet domain at 2i next to the Ford domain.

use hypdomain::domain::{dirichlet_domain_at_height, ford_domain, side_pairings, GroupInput, ReductionOptions, VertexLocation};
use hypdomain::moebius::hyperbolic_distance;
use num_rational::BigRational;

fn describe(name: &str, poly: &hypdomain::domain::FundamentalPolyhedron) {
    println!("{name}: {} faces, area {:.12}", poly.faces.len(), poly.volume_estimate.unwrap_or(f64::NAN));
    for v in &poly.vertices {
        match &v.location {
            VertexLocation::Finite(p) => println!("  vertex {:+.12} + {:.12}i", p.z.re, p.r),
            VertexLocation::Infinity => println!("  vertex at infinity"),
            other => println!("  vertex {other:?}"),
        }
    }
    for g in side_pairings(poly).unwrap() {
        println!("  pairing {g}");
    }
    for c in &poly.edge_cycles {
        println!("  cycle {:?} angle sum {:.12} order {:?}", c.ridges, c.angle_sum, c.order);
    }
}

fn main() {
    let input = GroupInput::psl2z();
    let opts = ReductionOptions::default();
    let dir = dirichlet_domain_at_height(&input, &BigRational::from_integer(2.into()), &opts).unwrap();
    let ford = ford_domain(&input, &opts).unwrap();
    describe("Dirichlet at 2i", &dir);
    describe("Ford", &ford);
    let rho = hypdomain::PointUH::h2(0.5, 3f64.sqrt() / 2.0).unwrap();
    let two_i = hypdomain::PointUH::h2(0.0, 2.0).unwrap();
    println!("d(2i, 1/2 + sqrt(3)/2 i) = {:.12}", hyperbolic_distance(&two_i, &rho));
    println!("same face set: {}", dir.face_keys() == ford.face_keys());
}
