//! Points equidistant from P and g(P) for every P on the vertical axis.

use hypdomain::bianchi::bianchi_input;
use hypdomain::df::{axis_of_centers, double_center_check, df_check, trace_axis_check};
use hypdomain::domain::{dirichlet_domain, ReductionOptions};
use hypdomain::{Model, MoebiusElement};

fn main() {
    let g = MoebiusElement::int(Model::H2, 2, 1, 3, 2).unwrap();
    let h = MoebiusElement::int(Model::H2, 2, 1, 1, 1).unwrap();
    for (name, e) in [("a = d", &g), ("a != d", &h)] {
        let hits: Vec<bool> = [0.5, 2.0, 7.0].iter().map(|&t| double_center_check(e, t).unwrap()).collect();
        println!("{name}: {e} double center along the axis {hits:?}");
    }
    for d in [2, 10] {
        let poly = dirichlet_domain(&bianchi_input(d).unwrap(), &ReductionOptions::survey()).unwrap();
        let verdict = df_check(&poly, &poly.stabilizer);
        println!("PSL2(O_{d}): DF = {}", verdict.is_df);
        println!("  axis of centers: {}", axis_of_centers(&poly).pass);
        match trace_axis_check(&poly) {
            Ok(r) => println!("  real traces, planes through 0: {}", r.pass),
            Err(e) => println!("  trace check: {e}"),
        }
    }
}
