//! `descent`: identity suites, descent decompositions, Maxwell sector
//! reports and Yee simulations from the command line.
//!
//! Exit codes: 0 success, 1 identity failure, 2 bad arguments or input,
//! 3 descent condition violated.

mod input;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use descent_core::coeff::coordinate_names;
use descent_core::descent::{decompose_double, decompose_single, DescentPair};
use descent_core::exterior::{hodge, Form, Metric};
use descent_core::fdtd::{self, CurrentSampler, FieldSampler, Grid, GridSpec};
use descent_core::maxwell::{self, EMConfig, Mode};
use descent_core::verify::{self, SuiteConfig};
use descent_core::{DescentError, MaxwellError};

use input::Input;

#[derive(Parser)]
#[command(
    name = "descent",
    version,
    about = "Descent decompositions of differential forms and Maxwell's equations"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Single,
    Double,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Single => Mode::Single,
            ModeArg::Double => Mode::Double,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    /// Flip the sign of the Hodge star on 1-forms.
    HodgeSign,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized exact identity suites.
    Verify {
        /// Dimensions to sweep.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trials per identity and signature.
        #[arg(long, env = "DESCENT_TRIALS", default_value_t = 200)]
        trials: usize,
        /// Largest degree of random polynomial coefficients.
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Decompose a form, or the F, G and J forms of a field configuration.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Descent coordinate for single mode.
        #[arg(long, default_value = "z")]
        axis: String,
    },
    /// Sector residual report and componentwise crosscheck of a field configuration.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Evolve a field configuration on a periodic Yee lattice and write a CSV trace.
    Simulate {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        nz: usize,
        #[arg(long)]
        dx: f64,
        /// Fraction of the stability limit Δ/√3.
        #[arg(long)]
        courant: f64,
        #[arg(long)]
        steps: usize,
        /// Initial configuration (JSON); currents act as sources.
        #[arg(long)]
        init: PathBuf,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Record a row every this many steps.
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
}

/// Error paired with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<MaxwellError> for Failure {
    fn from(e: MaxwellError) -> Self {
        let code = match e {
            MaxwellError::DescentViolated { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DescentError> for Failure {
    fn from(e: DescentError) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            dims,
            seed,
            trials,
            max_degree,
            inject_fault,
        } => run_verify(dims, seed, trials, max_degree, inject_fault, cli.format),
        Command::Decompose { input, mode, axis } => {
            run_decompose(&input, mode.into(), &axis, cli.format)
        }
        Command::Reduce { input, mode } => run_reduce(&input, mode.into(), cli.format),
        Command::Simulate {
            nx,
            ny,
            nz,
            dx,
            courant,
            steps,
            init,
            output,
            every,
        } => GridSpec::with_courant(nx, ny, nz, dx, courant)
            .map_err(|e| Failure::usage(e.to_string()))
            .and_then(|spec| run_simulate(spec, steps, every, &init, output.as_deref())),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(value: &Value, text: impl FnOnce() -> String, format: Format) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, value)
                .map_err(|e| Failure::usage(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn flipped_hodge(w: &Form, g: &Metric) -> Form {
    let ones = w.grade(1);
    let star = hodge(w, g);
    &(&star - &hodge(&ones, g)) - &hodge(&ones, g)
}

fn run_verify(
    dims: Vec<usize>,
    seed: u64,
    trials: usize,
    max_degree: u32,
    fault: Option<Fault>,
    format: Format,
) -> Result<u8, Failure> {
    if dims.is_empty() {
        return Err(Failure::usage("--dims must list at least one dimension"));
    }
    if let Some(&m) = dims.iter().find(|&&m| !(2..=8).contains(&m)) {
        return Err(Failure::usage(format!("dimension {m} outside 2..=8")));
    }
    if trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    let cfg = SuiteConfig {
        dims,
        seed,
        trials,
        max_degree,
    };
    let star: verify::HodgeFn = match fault {
        Some(Fault::HodgeSign) => flipped_hodge,
        None => hodge,
    };
    let report = verify::run(&cfg, star);
    let value = json!({
        "seed": report.seed,
        "trials": report.trials,
        "dims": report.dims,
        "passed": report.passed(),
        "identities": report.identities,
    });
    emit(
        &value,
        || {
            let dims: Vec<String> = report.dims.iter().map(usize::to_string).collect();
            let mut s = format!(
                "seed {} trials {} dims {}\n",
                report.seed,
                report.trials,
                dims.join(",")
            );
            for r in &report.identities {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                s += &format!(
                    "{verdict} {} [{}] {}/{} failed\n",
                    r.name, r.scope, r.failed, r.checked
                );
                if let Some(first) = &r.first_failure {
                    s += &format!("  first failure: {first}\n");
                }
            }
            s
        },
        format,
    )?;
    if report.passed() {
        Ok(0)
    } else {
        let names: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
        eprintln!(
            "identities failed: {} (seed {})",
            names.join(", "),
            report.seed
        );
        Ok(1)
    }
}

fn axis_index(name: &str, dim: usize) -> Result<usize, Failure> {
    coordinate_names(dim)
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Failure::usage(format!("unknown axis {name:?}")))
}

fn check_form_descent(w: &Form, axes: &[usize], label: &str) -> Result<(), Failure> {
    let names = coordinate_names(w.dim());
    for &a in axes {
        if w.depends_on(a) {
            return Err(Failure {
                code: 3,
                message: format!(
                    "descent condition violated: {label} depends on {}",
                    names[a]
                ),
            });
        }
    }
    Ok(())
}

fn decompose_form(w: &Form, mode: Mode, axis: &str, label: &str) -> Result<Value, Failure> {
    let dim = w.dim();
    let record = match mode {
        Mode::Single => {
            let a = axis_index(axis, dim)?;
            check_form_descent(w, &[a], label)?;
            decompose_single(&DescentPair::coordinate(dim, a), w)?.record()
        }
        Mode::Double => {
            if dim < 2 {
                return Err(Failure::usage(
                    "double descent needs at least two coordinates",
                ));
            }
            let (y, z) = (dim - 2, dim - 1);
            check_form_descent(w, &[y, z], label)?;
            decompose_double(
                &DescentPair::coordinate(dim, y),
                &DescentPair::coordinate(dim, z),
                w,
            )?
            .record()
        }
    };
    Ok(json!({ "mode": record.mode, "components": record.components, "tags": record.tags }))
}

fn run_decompose(path: &Path, mode: Mode, axis: &str, format: Format) -> Result<u8, Failure> {
    let value = match input::load(path)? {
        Input::Form(w) => decompose_form(&w, mode, axis, "form")?,
        Input::Config(c) => {
            let g = Metric::lorentzian();
            let axes: Vec<&str> = match mode {
                Mode::Single => vec![axis],
                Mode::Double => vec!["y", "z"],
            };
            for a in &axes {
                let v = descent_core::FrameVector::axis(4, axis_index(a, 4)?);
                if let Some(component) = c.invariance_violations(&v).first() {
                    return Err(MaxwellError::DescentViolated {
                        component: component.to_string(),
                        axis: a.to_string(),
                    }
                    .into());
                }
            }
            let f = maxwell::assemble_f(&c);
            let gf = maxwell::assemble_g_vacuum(&c, &g)?;
            let j = maxwell::assemble_j(&c);
            json!({
                "F": decompose_form(&f, mode, axis, "F")?,
                "G": decompose_form(&gf, mode, axis, "G")?,
                "J": decompose_form(&j, mode, axis, "J")?,
            })
        }
    };
    emit(&value, || text_tree(&value, 0), format)?;
    Ok(0)
}

/// Indented `key: value` rendering of a JSON tree.
fn text_tree(value: &Value, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", text_tree(v, depth + 1))
                }
                other => format!("{pad}{k}: {}\n", scalar_text(other)),
            })
            .collect(),
        Value::Array(items) => items.iter().map(|v| text_tree(v, depth)).collect(),
        other => format!("{pad}{}\n", scalar_text(other)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run_reduce(path: &Path, mode: Mode, format: Format) -> Result<u8, Failure> {
    let c = match input::load(path)? {
        Input::Config(c) => *c,
        Input::Form(_) => {
            return Err(Failure::usage(
                "reduce expects a field configuration, not a form",
            ))
        }
    };
    let g = Metric::lorentzian();
    let report = maxwell::standard_split(&c, &g, mode)?;
    let rows = maxwell::crosscheck_rows(&c, &g, mode)?;
    let equivalence = maxwell::equivalence(&c, &g, mode)?;
    let full = maxwell::residuals(&c, &g)?;
    let record = report.record();
    let crosscheck: serde_json::Map<String, Value> = rows
        .iter()
        .map(|r| {
            (
                r.id.to_string(),
                json!({
                    "componentwise": r.componentwise.to_string(),
                    "intrinsic": r.intrinsic.to_string(),
                    "agrees": r.agrees(),
                }),
            )
        })
        .collect();
    let value = json!({
        "mode": record.mode,
        "sectors": record.sectors,
        "residuals": record.residuals,
        "crosscheck": crosscheck,
        "equivalence": {
            "faraday_recomposes": equivalence.faraday_recomposes,
            "ampere_recomposes": equivalence.ampere_recomposes,
            "coefficients_match": equivalence.coefficients_match,
            "constitutive_vanishes": equivalence.constitutive_vanishes,
        },
        "solves_maxwell": full.solves_maxwell(),
    });
    emit(&value, || text_tree(&value, 0), format)?;
    Ok(0)
}

fn run_simulate(
    spec: GridSpec,
    steps: usize,
    every: usize,
    init: &Path,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let c: EMConfig = match input::load(init)? {
        Input::Config(c) => *c,
        Input::Form(_) => return Err(Failure::usage("--init expects a field configuration")),
    };
    let has_current = !(c.jx.is_zero() && c.jy.is_zero() && c.jz.is_zero());
    let current = CurrentSampler(&c);
    let source: Option<&dyn FieldSampler> = has_current.then_some(&current as &dyn FieldSampler);
    let mut grid = Grid::sample(spec, &c);
    let trace = fdtd::simulate(&mut grid, steps, every, source);

    let sink: Box<dyn Write> = match output {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    for row in &trace.rows {
        writer
            .serialize(row)
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    writer.flush()?;
    let summary = format!(
        "steps {} dt {} max_leakage {:e} energy_drift {:e} max_divB {:e}",
        steps,
        spec.dt,
        trace.max_leakage(),
        trace.energy_drift(),
        trace.max_div_b()
    );
    if output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}
