use kgring_core::angular::{polar_factor, polar_wave};
use kgring_core::radial::{solve_energies, RadialWave};

use super::describe;
use crate::config::{theta_samples, Loaded, Parts};
use crate::table::{real, Table};
use crate::{CliError, Outcome, Status};

pub fn run(run: &Loaded) -> Result<Outcome, CliError> {
    let w = &run.config.wavefunction;
    let qn = run.wave_channel();
    let dim = run.params.dim;
    let solved = solve_energies(&run.request(qn.clone())).map_err(|e| CliError::Solver(format!("{}: {e}", describe(&qn))))?;
    let state = solved
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Solver(format!("level not found: {}", describe(&qn))))?;
    let solver = |e: kgring_core::Error| CliError::Solver(e.to_string());

    let mut table = Table::new(&["part", "x", "value", "status"]);
    let mut norms = Vec::new();
    if matches!(w.parts, Parts::Both | Parts::Radial) {
        let wave = RadialWave::from_state(&state, dim).map_err(solver)?;
        let r_max = w.r_max.unwrap_or_else(|| wave.extent());
        for i in 1..=w.r_points {
            let r = r_max * i as f64 / w.r_points as f64;
            table.push(vec!["radial".into(), real(r), real(wave.value(r).map_err(solver)?), "ok".into()]);
        }
        norms.push(("radial-norm", wave.norm_integral()));
    }
    if matches!(w.parts, Parts::Both | Parts::Polar) {
        for theta in theta_samples(w.theta_points) {
            let h = polar_wave(qn.n_polar, &state.shift, dim, theta);
            table.push(vec!["polar".into(), real(theta), real(h), "ok".into()]);
        }
        norms.push(("polar-norm", polar_factor(qn.n_polar, &state.shift, dim).norm_integral()));
    }

    let mut failed = Vec::new();
    for (part, norm) in norms {
        let ok = (norm - 1.0).abs() <= w.norm_tol;
        if !ok {
            failed.push(format!("{part} = {norm:.12}"));
        }
        table.push(vec![part.into(), String::new(), real(norm), if ok { "ok" } else { "norm" }.into()]);
    }
    let notes = vec![format!("{}: E = {:.12}", describe(&qn), state.energy)];
    let status = if failed.is_empty() { Status::Success } else { Status::Failed(failed) };
    Ok(Outcome { table, status, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn load(extra: &str) -> Loaded {
        let text = format!("[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\nbeta = 0.5\n[solver]\nwindow = [-0.999999, 40.0]\npoints = 4000\n{extra}");
        Loaded::from_str(&text, &Overrides::default()).unwrap()
    }

    fn samples(t: &Table, part: &str) -> Vec<f64> {
        t.rows.iter().filter(|r| r[0] == part).map(|r| r[2].parse().unwrap()).collect()
    }

    fn sign_changes(v: &[f64]) -> usize {
        v.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
    }

    #[test]
    fn nodes_and_norms() {
        for (n, np) in [(0, 0), (2, 1), (3, 2)] {
            let out = run(&load(&format!("[wavefunction]\nn = {n}\nn_polar = {np}\nm = 1\n"))).unwrap();
            assert_eq!(out.status, Status::Success);
            let radial = samples(&out.table, "radial");
            assert_eq!(sign_changes(&radial), n as usize);
            if n == 0 {
                assert!(radial.iter().all(|&v| v > 0.0));
            }
            assert_eq!(sign_changes(&samples(&out.table, "polar")), np as usize);
            for part in ["radial-norm", "polar-norm"] {
                assert!((samples(&out.table, part)[0] - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn unreachable_level_is_a_solver_error() {
        let text = "[model]\nmu = 1.0\na0 = 1.0\nr0 = 1.0\n[solver]\nwindow = [-0.99, 1.0]\n[wavefunction]\nn = 3\n";
        let err = run(&Loaded::from_str(text, &Overrides::default()).unwrap()).map(|_| ()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
