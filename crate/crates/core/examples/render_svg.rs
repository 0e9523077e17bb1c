//! SVG pictures: the modular triangle and the boundary traces of PSL₂(O_2).

use hypdomain::bianchi::bianchi_input;
use hypdomain::domain::{dirichlet_domain, ford_domain, GroupInput, ReductionOptions};
use hypdomain::svg::render;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| ".".into());
    let opts = ReductionOptions::default();
    let tri = ford_domain(&GroupInput::psl2z(), &opts).unwrap();
    let cube = dirichlet_domain(&bianchi_input(2).unwrap(), &opts).unwrap();
    for (name, poly) in [("psl2z.svg", &tri), ("bianchi2.svg", &cube)] {
        let path = std::path::Path::new(&dir).join(name);
        std::fs::write(&path, render(poly)).unwrap();
        println!("{}", path.display());
    }
}
