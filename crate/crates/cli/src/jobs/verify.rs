use kgring_core::angular::QuantumNumbers;
use kgring_core::oracle::{solve_radial_numeric, Channel, RadialProblem, RadialSolution};
use kgring_core::radial::{solve_energies, EnergyState, RadialWave};

use super::{describe, header, level_cells, par_map};
use crate::config::Loaded;
use crate::table::{real, status_of, Table};
use crate::{CliError, Outcome, Status};

struct Check {
    closed: EnergyState,
    oracle: RadialSolution,
    norm: f64,
}

fn check(run: &Loaded, qn: &QuantumNumbers) -> kgring_core::Result<Option<Check>> {
    let Some(closed) = solve_energies(&run.request(qn.clone()))?.into_iter().next() else {
        return Ok(None);
    };
    let mut prob = RadialProblem::new(&run.params, Channel::Ring(qn.clone()), run.regime())?;
    if let Some(points) = run.config.verify.oracle_points {
        prob = prob.with_points(points);
    }
    if let Some([lo, hi]) = run.config.solver.window {
        prob = prob.with_window(lo, hi);
    }
    let oracle = solve_radial_numeric(&prob, qn.n)?;
    let norm = RadialWave::from_state(&closed, run.params.dim)?.norm_integral();
    Ok(Some(Check { closed, oracle, norm }))
}

pub fn run(run: &Loaded) -> Result<Outcome, CliError> {
    let v = &run.config.verify;
    let states = run.states();
    let checks = par_map(run, &states, |qn| check(run, qn));
    let mut table = Table::new(&header(&["E_closed", "E_oracle", "rel_gap", "nodes", "norm", "status"]));
    let mut failed = Vec::new();
    for (qn, res) in states.iter().zip(checks) {
        let mut row = level_cells(run, qn);
        let status = match res {
            Ok(Some(c)) => {
                let e_closed = c.closed.energy + v.perturb;
                let gap = (c.oracle.energy - e_closed).abs() / e_closed.abs().max(f64::MIN_POSITIVE);
                let mut bad = Vec::new();
                if !(gap <= v.tol) {
                    bad.push("gap");
                }
                if c.oracle.nodes != qn.n {
                    bad.push("nodes");
                }
                if !((c.norm - 1.0).abs() <= v.norm_tol) {
                    bad.push("norm");
                }
                row.extend([real(e_closed), real(c.oracle.energy), real(gap), c.oracle.nodes.to_string(), real(c.norm)]);
                if bad.is_empty() {
                    "ok".to_string()
                } else {
                    failed.push(format!("{}: {} (rel_gap {gap:.3e}, nodes {}, norm {:.12})", describe(qn), bad.join("+"), c.oracle.nodes, c.norm));
                    bad.join("+")
                }
            }
            Ok(None) => {
                row.extend(["", "", "", "", ""].map(String::from));
                failed.push(format!("{}: no closed-form root in the search window", describe(qn)));
                "no-root".into()
            }
            Err(e) => {
                row.extend(["", "", "", "", ""].map(String::from));
                failed.push(format!("{}: {e}", describe(qn)));
                status_of(&e).into()
            }
        };
        row.push(status);
        table.push(row);
    }
    let notes = vec![format!("verified {} level(s), {} failed", states.len(), failed.len())];
    let status = if failed.is_empty() { Status::Success } else { Status::Failed(failed) };
    Ok(Outcome { table, status, notes })
}
