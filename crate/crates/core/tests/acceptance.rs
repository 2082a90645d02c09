//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use descent_core::coeff::rational;
use descent_core::exterior::hodge;
use descent_core::fdtd::{self, Grid, GridSpec};
use descent_core::maxwell::{self, EMConfig, Mode, COMPONENT_NAMES};
use descent_core::random;
use descent_core::verify::{self, IdentityResult, SuiteConfig};
use descent_core::Metric;

const SEED: u64 = 20_240_601;

/// Name, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn identities(results: &[IdentityResult]) -> Outcome {
    let checked: usize = results.iter().map(|r| r.checked).sum();
    match results.iter().find(|r| !r.passed()) {
        None => Outcome {
            ok: true,
            detail: format!("{checked} exact checks"),
        },
        Some(r) => Outcome {
            ok: false,
            detail: format!(
                "{} failed {}/{}: {:?}",
                r.name, r.failed, r.checked, r.first_failure
            ),
        },
    }
}

fn sweep() -> SuiteConfig {
    SuiteConfig {
        dims: vec![2, 3, 4, 5],
        seed: SEED,
        trials: 200,
        max_degree: 2,
    }
}

fn criterion_1() -> Outcome {
    identities(&[verify::duality(&sweep(), hodge)])
}

fn criterion_2() -> Outcome {
    identities(&[verify::wave_laplace(&sweep())])
}

fn criterion_3() -> Outcome {
    identities(&[
        verify::codifferential_lorentzian(&sweep()),
        verify::codifferential_nilpotent(&sweep()),
    ])
}

fn criterion_4() -> Outcome {
    let cfg = SuiteConfig {
        dims: vec![4],
        ..sweep()
    };
    identities(&[verify::lie_hodge(&cfg, hodge)])
}

fn criterion_5() -> Outcome {
    let cfg = SuiteConfig {
        dims: vec![4],
        ..sweep()
    };
    let mut all = verify::projector_algebra(&cfg);
    all.extend(verify::projector_commutators(&cfg));
    all.push(verify::hodge_off_diagonal(&cfg, hodge));
    identities(&all)
}

fn splitting(mode: Mode, axes: &[usize], salt: u64) -> Outcome {
    let g = Metric::lorentzian();
    let mut rng = random::rng(SEED + salt);
    for trial in 0..50 {
        let c = maxwell::random_config(&mut rng, axes, 2);
        let eq = maxwell::equivalence(&c, &g, mode).expect("invariant config");
        let rows = maxwell::crosscheck_rows(&c, &g, mode).expect("invariant config");
        if let Some(row) = rows.iter().find(|r| !r.agrees()) {
            return Outcome {
                ok: false,
                detail: format!(
                    "trial {trial}: {} componentwise {} vs intrinsic {}",
                    row.id, row.componentwise, row.intrinsic
                ),
            };
        }
        if !eq.holds() {
            return Outcome {
                ok: false,
                detail: format!("trial {trial}: {eq:?}"),
            };
        }
    }
    Outcome {
        ok: true,
        detail: "50 configs, multisets and crosscheck exact".into(),
    }
}

fn criterion_6() -> Outcome {
    splitting(Mode::Single, &[0, 1, 2], 6)
}

fn criterion_7() -> Outcome {
    splitting(Mode::Double, &[0, 1], 7)
}

fn criterion_8() -> Outcome {
    let g = Metric::lorentzian();
    let configs = [
        ("Ex = x, rho = 1", vec![("Ex", "x"), ("rho", "1")]),
        ("Ey = Bz = t - x", vec![("Ey", "t - x"), ("Bz", "t - x")]),
        ("Bx = 1", vec![("Bx", "1")]),
    ];
    for (name, pairs) in configs {
        let c = EMConfig::from_pairs(&pairs).expect("valid config");
        let full = maxwell::residuals(&c, &g).expect("Lorentzian");
        let single = maxwell::standard_split(&c, &g, Mode::Single).expect("invariant");
        let double = maxwell::standard_split(&c, &g, Mode::Double).expect("invariant");
        if !(full.solves_maxwell() && single.all_zero() && double.all_zero()) {
            return Outcome {
                ok: false,
                detail: format!("{name}: nonzero residual"),
            };
        }
    }
    Outcome {
        ok: true,
        detail: "3 configs, all residuals zero".into(),
    }
}

/// Random z-invariant single-sector configuration scaled to unit peak on the grid.
fn sector_init(rng: &mut random::SuiteRng, spec: GridSpec, keep: [&str; 3]) -> EMConfig {
    let mut c = maxwell::random_config(rng, &[1, 2], 2);
    for name in COMPONENT_NAMES {
        if !keep.contains(&name) {
            *c.component_mut(name).expect("known") = descent_core::Poly::zero(4);
        }
    }
    let grid = Grid::sample(spec, &c);
    let peak = fdtd::Component::ALL
        .iter()
        .map(|&k| fdtd::max_abs(grid.field(k)))
        .fold(0.0, f64::max);
    let scale = rational(1, peak.ceil().max(1.0) as i64);
    for name in keep {
        let p = c.component_mut(name).expect("known");
        *p = p.scale(&scale);
    }
    c
}

fn criterion_9() -> Outcome {
    let spec = GridSpec::with_courant(64, 64, 1, 1.0 / 64.0, 0.5).expect("valid grid");
    let mut rng = random::rng(SEED + 9);
    let (mut leak, mut div, mut drift): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for trial in 0..6 {
        let keep = if trial % 2 == 0 {
            ["Ex", "Ey", "Bz"]
        } else {
            ["Bx", "By", "Ez"]
        };
        let c = sector_init(&mut rng, spec, keep);
        let mut grid = Grid::sample(spec, &c);
        let trace = fdtd::simulate(&mut grid, 1000, 50, None);
        leak = leak.max(trace.max_leakage());
        div = div.max(trace.max_div_b_step);
        drift = drift.max(trace.energy_drift());
    }
    Outcome {
        ok: leak <= 1e-12 && div <= 1e-13 && drift <= 1e-10,
        detail: format!(
            "6 inits: leakage {leak:.2e} (<= 1e-12), div B per step {div:.2e} (<= 1e-13), drift {drift:.2e} (<= 1e-10)"
        ),
    }
}

fn criterion_10() -> Outcome {
    let coarse = fdtd::advection_error(32, 0.5, 1.0, &fdtd::sine_wave).expect("valid grid");
    let fine = fdtd::advection_error(64, 0.5, 1.0, &fdtd::sine_wave).expect("valid grid");
    let ratio = coarse / fine;
    Outcome {
        ok: (3.2..=4.8).contains(&ratio),
        detail: format!("errors {coarse:.3e} / {fine:.3e}, ratio {ratio:.3} in [3.2, 4.8]"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  hodge duality", Some(10), criterion_1),
        ("2  wave = -laplace-beltrami", Some(20), criterion_2),
        ("3  codifferential sign", Some(10), criterion_3),
        ("4  lie-hodge commutation", Some(5), criterion_4),
        ("5  projector algebra", Some(10), criterion_5),
        ("6  single-descent splitting", Some(30), criterion_6),
        ("7  double-descent splitting", Some(30), criterion_7),
        ("8  known solutions", None, criterion_8),
        ("9  fdtd sector decoupling", Some(60), criterion_9),
        ("10 fdtd convergence", Some(60), criterion_10),
    ];
    let mut all_ok = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= Duration::from_secs(l));
        let ok = outcome.ok && in_time;
        all_ok &= ok;
        let bound = limit.map_or("no limit".to_string(), |l| format!("limit {l}s"));
        println!(
            "{} criterion {name}: {} [{:.2}s, {bound}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
