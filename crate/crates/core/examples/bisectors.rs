//! Bisectors against isometric spheres, and the gap between their centers.

use hypdomain::hyperplanes::{GeodesicSurface, SurfaceShape, bisector_iso_gap, gap_closed_form_sq, is_df_pairing, isometric_sphere, poincare_bisector};
use hypdomain::{Model, MoebiusElement, Scalar};

fn shape(s: &GeodesicSurface) -> String {
    match s.shape() {
        SurfaceShape::Sphere { center, radius_sq } => format!("sphere, center {center}, R^2 = {radius_sq}"),
        SurfaceShape::Plane { normal, offset } => format!("plane Re(conj({normal}) z) = {offset}"),
    }
}

fn main() {
    let w = Scalar::sqrt_neg(2);
    let elems = vec![
        MoebiusElement::int(Model::H2, 3, 1, 2, 1).unwrap(),
        MoebiusElement::int(Model::H2, 1, 1, 1, 2).unwrap(),
        MoebiusElement::int(Model::H2, 2, 1, 3, 2).unwrap(),
        MoebiusElement::new(Model::H3, Scalar::one(), w.clone(), w.clone(), Scalar::int(-1)).unwrap(),
        MoebiusElement::new(Model::H3, Scalar::one(), Scalar::zero(), w.clone(), Scalar::one()).unwrap(),
    ];
    for g in &elems {
        let bis = poincare_bisector(g).unwrap();
        let iso = isometric_sphere(g).unwrap();
        let diag = is_df_pairing(g).unwrap();
        println!("{g}");
        println!("  bisector         {}", shape(&bis));
        println!("  isometric sphere {}", shape(&iso));
        println!(
            "  gap {:.12}  closed form^2 {}  d = conj(a): {}  trace {}",
            bisector_iso_gap(g).unwrap(),
            gap_closed_form_sq(g).unwrap(),
            diag.holds,
            diag.trace
        );
    }
}
