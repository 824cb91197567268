use kgring_core::angular::{cascade_factor, effective_l, polar_factor, QuantumNumbers};
use kgring_core::model::{derive_couplings, ModelParams};
use kgring_core::nucore::{nu_branches, nu_lambda_n, nu_select, HypergeometricForm, Linear, Quadratic};
use kgring_core::radial::{solve_energies, RadialWave, SpectrumRequest};
use kgring_core::specfun::{jacobi, laguerre};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coupling_identities(a0 in 1e-2f64..1e2, r0 in 1e-1f64..1e1) {
        let p = ModelParams::new(1.0, a0, r0, 0.0, 3).unwrap();
        let c = derive_couplings(&p).unwrap();
        prop_assert!((c.c * c.c - 4.0 * c.a * c.b).abs() <= 1e-12 * c.c * c.c);
        prop_assert!((c.a * c.b - a0 * a0).abs() <= 1e-12 * a0 * a0);
    }

    #[test]
    fn effective_l_continuous_in_beta(beta in 0.0f64..3.0, a2 in 0.1f64..5.0, np in 0u32..4, m in 0i32..3) {
        let qn = QuantumNumbers::three_d(0, np, m);
        let a = effective_l(&qn, 3, a2, beta).unwrap().l_tilde;
        let b = effective_l(&qn, 3, a2, beta + 1e-9).unwrap().l_tilde;
        prop_assert!((a - b).abs() < 1e-7);
    }

    #[test]
    fn angular_reduction_quantizes(j in 2u32..7, l_prev in 0u32..4, step in 0u32..4) {
        let jf = f64::from(j);
        let l = f64::from(l_prev + step);
        let lp = f64::from(l_prev);
        let form = HypergeometricForm::new(
            Quadratic::new(-1.0, 0.0, 1.0),
            Quadratic::new(-l * (l + jf - 1.0), 0.0, l * (l + jf - 1.0) - lp * (lp + jf - 2.0)),
            Linear::new(-jf, 0.0),
        ).unwrap();
        let branch = nu_select(&nu_branches(&form)).unwrap();
        prop_assert!(branch.tau_slope < 0.0);
        prop_assert!((nu_lambda_n(&form, &branch, step as usize) - branch.lambda).abs() < 1e-9 * branch.lambda.abs().max(1.0));
    }

    #[test]
    fn polynomial_parity(n in 0usize..10, a in -0.9f64..5.0, x in -1.0f64..1.0) {
        let p = jacobi(n, a, a, x).unwrap();
        let q = jacobi(n, a, a, -x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((p - sign * q).abs() <= 1e-12 * p.abs().max(1.0));
    }

    #[test]
    fn laguerre_at_zero_is_binomial(n in 0usize..12, a in -0.9f64..6.0) {
        // L_n^{(a)}(0) = (a + 1)_n / n!
        let want = (1..=n).fold(1.0, |acc, k| acc * (a + k as f64) / k as f64);
        prop_assert!((laguerre(n, a, 0.0).unwrap() - want).abs() <= 1e-12 * want.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solved_states_normalize(a0 in 0.3f64..2.0, beta in 0.0f64..1.0, n in 0u32..4, dim in 3u32..6) {
        let p = ModelParams::new(1.0, a0, 1.0, beta, dim).unwrap();
        let qn = QuantumNumbers::new(n, 0, vec![0; (dim - 3) as usize], 0);
        let req = SpectrumRequest::new(p, qn).with_window(-1.0 + 1e-6, 40.0).with_points(4000);
        for s in solve_energies(&req).unwrap() {
            let wave = RadialWave::from_state(&s, dim).unwrap();
            prop_assert!((wave.norm_integral() - 1.0).abs() < 1e-8);
            let ident = s.zeta * s.zeta - (dim as f64 + 2.0 * s.shift.l_tilde - 2.0).powi(2) - 4.0 * a0 * (1.0 + s.energy);
            prop_assert!(ident.abs() < 1e-10);
            let shift = s.shift;
            let polar = polar_factor(0, &shift, dim);
            prop_assert!((polar.norm_integral() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn cascade_factors_normalize(dim in 4u32..8, n_j in 0u32..4, l_prev in 0u32..4, pick in 0u32..8) {
        let j = 2 + pick % (dim - 3);
        let f = cascade_factor(dim, j, n_j, l_prev).unwrap();
        prop_assert!((f.norm_integral() - 1.0).abs() < 1e-8);
    }
}
