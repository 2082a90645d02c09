use descent_core::fdtd::{self, Component, Grid, GridSpec, Sector};
use descent_core::maxwell::{self, EMConfig};
use descent_core::random;
use proptest::prelude::*;

fn keep_only(mut c: EMConfig, keep: &[&str]) -> EMConfig {
    for name in maxwell::COMPONENT_NAMES {
        if !keep.contains(&name) {
            *c.component_mut(name).unwrap() = descent_core::Poly::zero(4);
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn z_invariant_sectors_never_mix(seed in any::<u64>(), eeb in any::<bool>()) {
        let mut rng = random::rng(seed);
        let keep: &[&str] = if eeb { &["Ex", "Ey", "Bz"] } else { &["Bx", "By", "Ez"] };
        let c = keep_only(maxwell::random_config(&mut rng, &[1, 2], 2), keep);
        let spec = GridSpec::with_courant(12, 10, 1, 0.1, 0.9).unwrap();
        let mut grid = Grid::sample(spec, &c);
        grid.step(100, None);
        let sector = if eeb { Sector::Eeb } else { Sector::Bbe };
        prop_assert_eq!(grid.leakage(sector), 0.0);
        for comp in Component::ALL {
            if comp.sector() != sector {
                prop_assert!(grid.field(comp).iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn discrete_energy_is_conserved(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = keep_only(
            maxwell::random_config(&mut rng, &[1, 2, 3], 2),
            &["Ex", "Ey", "Ez", "Bx", "By", "Bz"],
        );
        let spec = GridSpec::with_courant(6, 5, 4, 0.2, 0.7).unwrap();
        let mut grid = Grid::sample(spec, &c);
        let trace = fdtd::simulate(&mut grid, 200, 20, None);
        prop_assert!(trace.energy_drift() < 1e-11, "drift {}", trace.energy_drift());
        prop_assert!(trace.max_div_b_step < 1e-11);
    }
}

#[test]
fn current_source_charges_the_field() {
    let c = EMConfig::from_pairs(&[("jx", "1")]).unwrap();
    let spec = GridSpec::with_courant(4, 4, 1, 0.25, 0.5).unwrap();
    let mut grid = Grid::sample(spec, &EMConfig::zero());
    let steps = 10;
    grid.step(steps, Some(&fdtd::CurrentSampler(&c)));
    // uniform current: dE_x/dt = -j_x exactly
    let expected = -(steps as f64) * spec.dt;
    assert!(grid
        .field(Component::Ex)
        .iter()
        .all(|&v| (v - expected).abs() < 1e-15));
}

#[test]
fn plane_wave_converges_at_second_order() {
    let e1 = fdtd::advection_error(16, 0.5, 1.0, &fdtd::sine_wave).unwrap();
    let e2 = fdtd::advection_error(32, 0.5, 1.0, &fdtd::sine_wave).unwrap();
    assert!((3.2..=4.8).contains(&(e1 / e2)));
}
