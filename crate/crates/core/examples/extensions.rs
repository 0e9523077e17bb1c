//! Reflection and Coxeter extensions of DF domains.

use hypdomain::bianchi::bianchi_input;
use hypdomain::df::{bianchi_reflection_extension, coxeter_extension, reflection_extension, ExtensionReport};
use hypdomain::domain::{dirichlet_domain, GroupInput, ReductionOptions};

fn show(title: &str, r: &ExtensionReport) {
    println!("{title}: passed = {}", r.passed);
    for (g, n) in r.generators.iter().zip(&r.generator_names) {
        println!("  {n} = {g}");
    }
    for c in &r.relation_checks {
        println!("  {:<14} order {:?} {}", c.word, c.order, if c.pass { "ok" } else { "FAIL" });
    }
    let angles: Vec<String> = r.angles.iter().map(|a| format!("pi/{:.4}", std::f64::consts::PI / a)).collect();
    println!("  cell angles {}", angles.join(", "));
    if let Some(m) = &r.coxeter_matrix {
        for row in m {
            println!("  {:?}", row);
        }
    }
}

fn main() {
    let opts = ReductionOptions::default();
    let f = dirichlet_domain(&GroupInput::psl2z(), &opts).unwrap();
    show("PSL2(Z) reflection", &reflection_extension(&f).unwrap());
    show("PSL2(Z) Coxeter", &coxeter_extension(&f).unwrap());
    for d in [2, 5, 6, 7] {
        let poly = dirichlet_domain(&bianchi_input(d).unwrap(), &ReductionOptions::survey()).unwrap();
        match bianchi_reflection_extension(d, &poly) {
            Ok(r) => show(&format!("PSL2(O_{d}) with x- and y-mirrors"), &r),
            Err(e) => println!("PSL2(O_{d}): {e}"),
        }
    }
}
