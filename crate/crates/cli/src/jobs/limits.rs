use kgring_core::angular::QuantumNumbers;
use kgring_core::model::ModelParams;
use kgring_core::radial::{ho_energy_relativistic, nr_energies, solve_energies, NrKind, SpectrumRequest};

use crate::config::Loaded;
use crate::table::{real, status_of, Table};
use crate::{CliError, Outcome, Status};

/// One comparison; gaps are relative to `max(|reference|, 1)`.
struct Row {
    check: &'static str,
    n: u32,
    l: String,
    dim: u32,
    param: f64,
    value: kgring_core::Result<f64>,
    reference: kgring_core::Result<f64>,
    tol: f64,
}

fn oscillator_rows(run: &Loaded) -> Vec<Row> {
    let lim = &run.config.limits;
    let mu = run.params.mu;
    let mut rows = Vec::new();
    for &k in &lim.k {
        for &[n, l, dim] in &lim.oscillator {
            let value = ho_energy_relativistic(n, l, dim, k, mu)
                .last()
                .copied()
                .ok_or_else(|| kgring_core::Error::NotFound("no bound oscillator root".into()));
            let reference = nr_energies(NrKind::Oscillator { n, l, dim, k, mu }).map(|e| mu + e);
            rows.push(Row { check: "oscillator-cubic", n, l: l.to_string(), dim, param: k, value, reference, tol: lim.cubic_tol });
        }
    }
    rows
}

/// Schrödinger checks run in three dimensions with the configured `(mu, a0, r0)`.
fn schrodinger_rows(run: &Loaded) -> Vec<Row> {
    let lim = &run.config.limits;
    let p = run.params;
    let levels = &run.config.levels;
    let mut rows = Vec::new();
    for n in levels.n.iter() {
        for np in levels.n_polar.iter() {
            for m in levels.m.iter() {
                let (n, np, m) = (n as u32, np as u32, m as i32);
                let l = np + m.unsigned_abs();
                let ring = nr_energies(NrKind::Ring { n, n_tilde: np, m, mu: p.mu, a0: p.a0, r0: p.r0, beta: 0.0 });
                let plain = nr_energies(NrKind::Pseudoharmonic { n, l, mu: p.mu, a0: p.a0, r0: p.r0 });
                rows.push(Row {
                    check: "ring-collapse",
                    n,
                    l: l.to_string(),
                    dim: 3,
                    param: 0.0,
                    value: ring,
                    reference: plain,
                    tol: 4.0 * f64::EPSILON,
                });
                for &beta in &lim.beta {
                    let value = ModelParams::new(p.mu, p.a0, p.r0, beta, 3).and_then(|params| {
                        let req = SpectrumRequest::nonrelativistic(params, QuantumNumbers::three_d(n, np, m))
                            .with_tol(run.config.solver.tol)
                            .with_points(run.config.solver.points);
                        solve_energies(&req)?
                            .first()
                            .map(|s| s.energy)
                            .ok_or_else(|| kgring_core::Error::NotFound("no Schrödinger root in the window".into()))
                    });
                    let reference = nr_energies(NrKind::Ring { n, n_tilde: np, m, mu: p.mu, a0: p.a0, r0: p.r0, beta });
                    rows.push(Row {
                        check: "schrodinger-mapping",
                        n,
                        l: format!("{np};{m}"),
                        dim: 3,
                        param: beta,
                        value,
                        reference,
                        tol: lim.mapping_tol,
                    });
                }
            }
        }
    }
    rows
}

pub fn run(run: &Loaded) -> Result<Outcome, CliError> {
    let mut table = Table::new(&["check", "n", "l", "D", "param", "value", "reference", "gap", "tol", "status"]);
    let mut failed = Vec::new();
    for r in oscillator_rows(run).into_iter().chain(schrodinger_rows(run)) {
        let mut row = vec![r.check.to_string(), r.n.to_string(), r.l.clone(), r.dim.to_string(), real(r.param)];
        let status = match (&r.value, &r.reference) {
            (Ok(v), Ok(reference)) => {
                let gap = (v - reference).abs() / reference.abs().max(1.0);
                row.extend([real(*v), real(*reference), real(gap), real(r.tol)]);
                if gap <= r.tol {
                    "ok"
                } else {
                    failed.push(format!("{} n={} l={} param={}: gap {gap:.3e} > {:.1e}", r.check, r.n, r.l, r.param, r.tol));
                    "gap"
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                row.extend([String::new(), String::new(), String::new(), real(r.tol)]);
                failed.push(format!("{} n={} l={} param={}: {e}", r.check, r.n, r.l, r.param));
                status_of(e)
            }
        };
        row.push(status.into());
        table.push(row);
    }
    let notes = vec![format!("{} limit comparison(s), {} failed", table.rows.len(), failed.len())];
    let status = if failed.is_empty() { Status::Success } else { Status::Failed(failed) };
    Ok(Outcome { table, status, notes })
}
