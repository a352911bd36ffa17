mod common;

use approx::assert_relative_eq;
use common::{catalog, random_smooth};
use modisp::evolution::{evolve, nonlinear_phase_step, SolveConfig};
use modisp::experiments::{ode_phase_profile, ScalingPlan, H_MAX};
use modisp::par::Execution;
use modisp::runner::RunConfig;
use modisp::experiments::ExperimentKind;
use modisp::spectral::{lebesgue_norm, sobolev_norm, Grid, SymbolLattice};
use modisp::symbol::SymbolClass;
use proptest::prelude::*;

fn grid_strategy() -> impl Strategy<Value = Grid> {
    (1usize..=2, 3u32..=7, 4.0f64..12.0).prop_map(|(d, k, l)| {
        let n = if d == 1 { 1 << (k + 1) } else { 1 << k };
        Grid::new(d, n, l).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn plancherel_and_round_trip(grid in grid_strategy(), seed in any::<u64>()) {
        let u = random_smooth(&grid, seed);
        let c = u.transform();
        assert_relative_eq!(c.l2_norm(), lebesgue_norm(&u, 2.0).unwrap(), max_relative = 1e-12);
        let back = c.inverse_transform();
        prop_assert!(back.sub(&u).unwrap().max_abs() <= 1e-12 * u.max_abs().max(1e-300));
    }

    #[test]
    fn free_flow_is_a_unitary_group(
        seed in any::<u64>(),
        t1 in -2.0f64..2.0,
        t2 in -2.0f64..2.0,
        which in 0usize..10,
        s in prop::sample::select(vec![-1.0, 0.0, 0.5, 1.0, 2.0]),
    ) {
        let grid = Grid::new(1, 128, 10.0).unwrap();
        let symbol = catalog(1)[which].clone();
        let lattice = SymbolLattice::new(&symbol, &grid).unwrap();
        let u = random_smooth(&grid, seed);
        let stepwise = lattice.propagate(&lattice.propagate(&u, t1).unwrap(), t2).unwrap();
        let direct = lattice.propagate(&u, t1 + t2).unwrap();
        let scale = sobolev_norm(&u, 0.0, false).unwrap();
        prop_assert!(sobolev_norm(&stepwise.sub(&direct).unwrap(), 0.0, false).unwrap() <= 1e-11 * scale);
        assert_relative_eq!(
            sobolev_norm(&direct, s, false).unwrap(),
            sobolev_norm(&u, s, false).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn phase_step_keeps_modulus_and_composes(
        seed in any::<u64>(),
        lambda in -3.0f64..3.0,
        sigma in 0.25f64..3.0,
        dt in 0.0f64..0.5,
        eps in 0.05f64..1.0,
    ) {
        let grid = Grid::new(1, 64, 6.0).unwrap();
        let u = random_smooth(&grid, seed);
        let once = nonlinear_phase_step(&u, lambda, sigma, dt, eps);
        for (a, b) in once.values().iter().zip(u.values()) {
            prop_assert!((a.norm() - b.norm()).abs() <= 1e-15 * b.norm().max(1.0));
        }
        let twice = nonlinear_phase_step(&nonlinear_phase_step(&u, lambda, sigma, dt, eps), lambda, sigma, dt, eps);
        let double = nonlinear_phase_step(&u, lambda, sigma, 2.0 * dt, eps);
        prop_assert!(twice.sub(&double).unwrap().max_abs() <= 1e-12 * u.max_abs().max(1.0));
    }

    #[test]
    fn ode_profile_modulus_is_time_invariant(
        tau in 0.0f64..5.0,
        kappa in 0.1f64..2.0,
        lambda in -2.0f64..2.0,
        sigma in 0.5f64..3.0,
        eps in 0.01f64..1.0,
    ) {
        let grid = Grid::new(1, 64, 6.0).unwrap();
        let start = ode_phase_profile(0.0, &grid, kappa, lambda, sigma, eps);
        let later = ode_phase_profile(tau, &grid, kappa, lambda, sigma, eps);
        for (a, b) in start.values().iter().zip(later.values()) {
            prop_assert!((a.norm() - b.norm()).abs() <= 1e-15 * kappa);
        }
    }

    #[test]
    fn scaling_identities(
        d in 1usize..=2,
        sigma in 0.6f64..4.0,
        frac_m in 0.0f64..1.0,
        frac_s in 0.01f64..0.99,
        omega in 0.1f64..3.0,
        theta in 0.01f64..0.5,
        delta in 0.01f64..0.5,
        h in 1e-8f64..H_MAX,
        bounded in any::<bool>(),
    ) {
        let half_d = 0.5 * d as f64;
        let (class, cap) = if bounded || d as f64 * sigma <= 1.05 {
            (SymbolClass::Bounded { bound: 1.0 }, half_d)
        } else {
            let m = 1.0 + frac_m * ((d as f64 * sigma - 0.05).min(4.0) - 1.0);
            (SymbolClass::Homogeneous { degree: m }, half_d - m / (2.0 * sigma))
        };
        let plan = ScalingPlan::compute(d, sigma, frac_s * cap, class, omega, theta, delta).unwrap();
        prop_assert!(plan.eps_exponent > 0.0);
        prop_assert!(plan.beta > 0.0);
        prop_assert!((plan.beta - plan.beta_closed_form()).abs() < 1e-10);
        prop_assert!((plan.t_h(h).ln() - plan.t_h_closed_form(h).ln()).abs() < 1e-10);
        if let SymbolClass::Homogeneous { degree: m } = class {
            let lhs = (plan.symbol_exponent() - m) * h.ln();
            let rhs = (m + omega) * plan.eps(h).ln();
            prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn singular_config_round_trips(
        sigma in 0.1f64..4.0,
        t in 0.0f64..3.0,
        lambda in -2.0f64..2.0,
        start in 2i32..4,
        count in 3i32..8,
        seed in any::<u64>(),
    ) {
        let rho: Vec<String> = (start..start + count).map(|k| format!("1e-{k}")).collect();
        let text = format!(
            "seed = {seed}\nexecution = sequential\n[singular]\nsigma = {sigma}\nt = {t}\nlambda = {lambda}\nrho_list = {}\n",
            rho.join(", ")
        );
        let cfg = RunConfig::parse(&text, ExperimentKind::Singular).unwrap();
        let again = RunConfig::parse(&cfg.to_config_string(), ExperimentKind::Singular).unwrap();
        prop_assert_eq!(cfg, again);
    }
}

#[test]
fn execution_modes_agree_bitwise() {
    let run = |exec: Execution| {
        let grid = Grid::new(2, 128, 8.0).unwrap().with_execution(exec);
        let u = random_smooth(&grid, 3);
        let cfg = SolveConfig::new(catalog(2)[1].clone(), 1.0, 1.0, 1e-3, 0.05);
        let traj = evolve(&u, &cfg).unwrap();
        (traj.final_field().clone(), traj.diagnostics.iter().map(|d| d.l2).collect::<Vec<_>>())
    };
    let (a, la) = run(Execution::Sequential);
    let (b, lb) = run(Execution::Parallel);
    assert_eq!(a.values(), b.values());
    assert_eq!(la, lb);
}
