use kgring_core::angular::{cascade_form, effective_l, polar_form};
use kgring_core::nucore::{nu_branches, nu_lambda_n, nu_select, HypergeometricForm, Linear, Quadratic};
use kgring_core::radial::{solve_energies, EnergyState};

use super::describe;
use crate::config::{Fixture, Loaded};
use crate::table::{real, status_of, Table};
use crate::{CliError, Outcome, Status};

struct Named {
    name: &'static str,
    form: HypergeometricForm,
    /// Polynomial degree the fixture quantizes at.
    degree: Option<usize>,
}

fn energy(run: &Loaded) -> Result<f64, CliError> {
    if let Some(e) = run.config.nu.energy {
        return Ok(e);
    }
    let qn = run.probe_channel();
    solve_energies(&run.request(qn.clone()))
        .map_err(|e| CliError::Solver(format!("{}: {e}", describe(&qn))))?
        .first()
        .map(|s| s.energy)
        .ok_or_else(|| CliError::Solver(format!("level not found: {}", describe(&qn))))
}

fn forms(run: &Loaded) -> Result<Vec<Named>, CliError> {
    let nu = &run.config.nu;
    let wanted = |f: Fixture| nu.fixture == f || nu.fixture == Fixture::All;
    let mut out = Vec::new();
    if wanted(Fixture::Angular) {
        out.push(Named {
            name: "angular",
            form: cascade_form(nu.j, nu.l_prev, nu.l_j),
            degree: Some((nu.l_j - nu.l_prev) as usize),
        });
    }
    if wanted(Fixture::Polar) || wanted(Fixture::Radial) {
        let e = energy(run)?;
        let qn = run.probe_channel();
        let solver = |e: kgring_core::Error| CliError::Solver(format!("{}: {e}", describe(&qn)));
        let state = EnergyState::at(&run.params, &qn, run.regime(), e).map_err(solver)?;
        if wanted(Fixture::Polar) {
            let shift = effective_l(&qn, run.params.dim, state.alpha2_sq, run.params.beta).map_err(solver)?;
            out.push(Named {
                name: "polar",
                form: polar_form(&qn, run.params.dim, &shift, state.alpha2_sq, run.params.beta),
                degree: Some(qn.n_polar as usize),
            });
        }
        if wanted(Fixture::Radial) {
            out.push(Named { name: "radial", form: state.radial_form(), degree: Some(qn.n as usize) });
        }
    }
    if nu.fixture == Fixture::Custom {
        let (Some(s), Some(st), Some(t)) = (nu.sigma, nu.sigma_tilde, nu.tau_tilde) else {
            return Err(CliError::Config("custom form is incomplete".into()));
        };
        let form = HypergeometricForm::new(
            Quadratic::new(s[0], s[1], s[2]),
            Quadratic::new(st[0], st[1], st[2]),
            Linear::new(t[0], t[1]),
        )
        .map_err(|e| CliError::Config(e.to_string()))?;
        out.push(Named { name: "custom", form, degree: None });
    }
    Ok(out)
}

pub fn run(run: &Loaded) -> Result<Outcome, CliError> {
    let mut table = Table::new(&[
        "form", "branch", "k", "pi_slope", "pi_intercept", "tau_slope", "tau_intercept", "lambda", "lambda_n",
        "selected", "status",
    ]);
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for Named { name, form, degree } in forms(run)? {
        let branches = nu_branches(&form);
        if branches.is_empty() {
            failed.push(format!("{name}: no real k"));
            notes.push(format!("{name}: no real k"));
            let mut row = vec![name.to_string()];
            row.extend(std::iter::repeat_n(String::new(), 9));
            row.push("no-real-k".into());
            table.push(row);
            continue;
        }
        let chosen = nu_select(&branches);
        match &chosen {
            Ok(b) => notes.push(format!(
                "{name}: {} branch(es); selected k = {:.12}, pi = {:.12} s + {:.12}, tau = {:.12} s + {:.12}",
                branches.len(),
                b.k,
                b.pi.c1,
                b.pi.c0,
                b.tau.c1,
                b.tau.c0
            )),
            Err(e) => {
                failed.push(format!("{name}: {e}"));
                notes.push(format!("{name}: {} branch(es); {e}", branches.len()));
            }
        }
        for (i, b) in branches.iter().enumerate() {
            let selected = chosen.as_ref().is_ok_and(|c| c == b);
            let lambda_n = match degree {
                Some(n) if selected => real(nu_lambda_n(&form, b, n)),
                _ => String::new(),
            };
            let status = match &chosen {
                Err(e) => status_of(e),
                Ok(_) => "ok",
            };
            table.push(vec![
                name.into(),
                i.to_string(),
                real(b.k),
                real(b.pi.c1),
                real(b.pi.c0),
                real(b.tau.c1),
                real(b.tau.c0),
                real(b.lambda),
                lambda_n,
                if selected { "yes" } else { "no" }.into(),
                status.into(),
            ]);
        }
    }
    let status = if failed.is_empty() { Status::Success } else { Status::Failed(failed) };
    Ok(Outcome { table, status, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn load(extra: &str) -> Loaded {
        let text = format!("[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\nbeta = 0.5\n{extra}");
        Loaded::from_str(&text, &Overrides::default()).unwrap()
    }

    fn selected(t: &Table, form: &str) -> Vec<f64> {
        let row = t.rows.iter().find(|r| r[0] == form && r[9] == "yes").unwrap();
        row[2..9].iter().map(|c| c.parse().unwrap()).collect()
    }

    #[test]
    fn all_fixtures_select_and_quantize() {
        let out = run(&load("[levels]\nn = 1\nn_polar = 1\nm = 1\n[solver]\nwindow = [-0.999999, 40.0]\n[nu]\nj = 3\nl_prev = 1\nl_j = 2\n")).unwrap();
        assert_eq!(out.status, Status::Success);
        for form in ["angular", "polar", "radial"] {
            assert_eq!(out.table.rows.iter().filter(|r| r[0] == form).count(), 4);
            let v = selected(&out.table, form);
            // at a quantized level lambda equals lambda_n
            assert!((v[5] - v[6]).abs() < 1e-8 * v[5].abs().max(1.0), "{form}: {v:?}");
            assert!(v[3] < 0.0);
        }
    }

    #[test]
    fn angular_fixture_values() {
        let out = run(&load("[nu]\nfixture = \"angular\"\nj = 3\nl_prev = 1\nl_j = 2\n")).unwrap();
        let v = selected(&out.table, "angular");
        let (lj, lp, j) = (2.0f64, 1.0f64, 3.0f64);
        let shifted = lp + (j - 2.0) / 2.0;
        assert!((v[0] - (lj * (lj + j - 1.0) - lp * (lp + j - 2.0))).abs() < 1e-10, "{v:?}");
        assert!((v[1] - ((j - 2.0) / 2.0 - shifted)).abs() < 1e-10);
        assert_eq!(v[2], 0.0);
    }

    #[test]
    fn custom_without_real_k_fails() {
        let out = run(&load("[nu]\nfixture = \"custom\"\nsigma = [0.0, 0.0, 1.0]\nsigma_tilde = [1.0, 0.0, 1.0]\ntau_tilde = [0.0, 0.0]\n")).unwrap();
        assert_eq!(out.status.exit_code(), 1);
        assert_eq!(out.table.rows[0].last().unwrap(), "no-real-k");
    }
}
