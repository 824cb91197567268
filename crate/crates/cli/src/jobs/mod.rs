pub mod limits;
pub mod nu_report;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

use kgring_core::angular::QuantumNumbers;
use rayon::prelude::*;

use crate::config::Loaded;
use crate::table::real;

/// Order-preserving map, parallel unless the configuration turns it off.
pub(crate) fn par_map<T, R, F>(run: &Loaded, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if run.config.solver.parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

pub(crate) const LEVEL_COLUMNS: [&str; 6] = ["D", "n", "n_polar", "m", "cascade", "beta"];

pub(crate) fn level_cells(run: &Loaded, qn: &QuantumNumbers) -> Vec<String> {
    let cascade = qn.cascade.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
    vec![
        run.params.dim.to_string(),
        qn.n.to_string(),
        qn.n_polar.to_string(),
        qn.m.to_string(),
        cascade,
        real(run.params.beta),
    ]
}

pub(crate) fn describe(qn: &QuantumNumbers) -> String {
    format!("n={} n_polar={} m={} cascade={:?}", qn.n, qn.n_polar, qn.m, qn.cascade)
}

pub(crate) fn header(extra: &[&'static str]) -> Vec<&'static str> {
    LEVEL_COLUMNS.iter().chain(extra).copied().collect()
}
