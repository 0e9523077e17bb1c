//! DF survey of the Bianchi groups PSL₂(O_d) over squarefree d ≤ DMAX (default 19).

use hypdomain::bianchi::{df_survey, squarefree_up_to, survey_csv};
use hypdomain::domain::ReductionOptions;

fn main() {
    let dmax = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(19);
    let mut opts = ReductionOptions::survey();
    if let Some(b) = std::env::args().nth(2).and_then(|s| s.parse().ok()) {
        opts.norm_bound_max = b;
    }
    let rows = df_survey(&squarefree_up_to(dmax), &opts);
    print!("{}", survey_csv(&rows));
    for r in &rows {
        eprintln!("d={:>3} {:>7.2}s", r.d, r.seconds);
    }
}
