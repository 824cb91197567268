use kgring_core::radial::solve_energies;

use super::{describe, header, level_cells, par_map};
use crate::config::Loaded;
use crate::table::{real, status_of, Table};
use crate::{CliError, Outcome, Status};

pub fn run(run: &Loaded) -> Result<Outcome, CliError> {
    let states = run.states();
    let solved = par_map(run, &states, |qn| solve_energies(&run.request(qn.clone())));
    let mut table = Table::new(&header(&["E", "l_tilde", "m_prime", "zeta", "residual", "status"]));
    let mut abort = None;
    let mut notes = Vec::new();
    for (qn, res) in states.iter().zip(solved) {
        let prefix = level_cells(run, qn);
        match res {
            Ok(levels) if levels.is_empty() => {
                notes.push(format!("no root in the search window for {}", describe(qn)));
                let mut row = prefix;
                row.extend(["", "", "", "", "", "no-root"].map(String::from));
                table.push(row);
            }
            Ok(levels) => {
                for s in levels {
                    let mut row = prefix.clone();
                    row.extend([
                        real(s.energy),
                        real(s.shift.l_tilde),
                        real(s.shift.m_prime),
                        real(s.zeta),
                        real(s.residual),
                        "ok".into(),
                    ]);
                    table.push(row);
                }
            }
            Err(e) => {
                abort.get_or_insert_with(|| format!("{}: {e}", describe(qn)));
                let mut row = prefix;
                row.extend(["", "", "", "", ""].map(String::from));
                row.push(status_of(&e).into());
                table.push(row);
            }
        }
    }
    let status = abort.map_or(Status::Success, Status::Aborted);
    Ok(Outcome { table, status, notes })
}
