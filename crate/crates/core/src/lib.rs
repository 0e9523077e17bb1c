//! Dirichlet and Ford fundamental domains of Fuchsian and Kleinian groups in
//! the upper half-space model, with exact arithmetic for Bianchi groups.

pub mod bianchi;
pub mod df;
pub mod domain;
pub mod error;
pub mod hyperplanes;
pub mod io;
pub mod moebius;
pub mod polytope;
pub mod scalar;
pub mod svg;

pub use error::{Error, Result};
pub use moebius::{Model, MoebiusElement, PointUH};
pub use scalar::Scalar;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "HYPDOMAIN_THREADS";

/// Sizes the global rayon pool from `HYPDOMAIN_THREADS`. Unset or empty
/// leaves the rayon default; anything but a positive integer is an error.
pub fn init_threads() -> Result<Option<usize>> {
    let raw = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v,
        _ => return Ok(None),
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(Some(n))
}
