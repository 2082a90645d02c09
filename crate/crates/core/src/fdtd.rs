//! Yee-lattice leapfrog Maxwell solver on a periodic box.
//!
//! E lives on cell edges and B on cell faces:
//!
//! ```text
//! E_x (i+½, j, k)    B_x (i, j+½, k+½)
//! E_y (i, j+½, k)    B_y (i+½, j, k+½)
//! E_z (i, j, k+½)    B_z (i+½, j+½, k)
//! ```
//!
//! The grid stores `E` at integer time levels and `B` half a step behind, so a
//! step is `B ← B − dt·curl E` followed by `E ← E + dt·curl B − dt·j`.
//!
//! For data that does not depend on `z` the update never mixes the
//! `(E_x, E_y, B_z)` components with `(B_x, B_y, E_z)`, and each sector's
//! discrete energy is conserved on its own.

use serde::Serialize;

use crate::error::FdtdError;
use crate::maxwell::EMConfig;

/// Field component on the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Ex,
    Ey,
    Ez,
    Bx,
    By,
    Bz,
}

impl Component {
    pub const ALL: [Component; 6] = [
        Component::Ex,
        Component::Ey,
        Component::Ez,
        Component::Bx,
        Component::By,
        Component::Bz,
    ];

    /// Offset of the component's sample point within a cell, in units of Δ.
    pub fn offset(self) -> [f64; 3] {
        match self {
            Component::Ex => [0.5, 0.0, 0.0],
            Component::Ey => [0.0, 0.5, 0.0],
            Component::Ez => [0.0, 0.0, 0.5],
            Component::Bx => [0.0, 0.5, 0.5],
            Component::By => [0.5, 0.0, 0.5],
            Component::Bz => [0.5, 0.5, 0.0],
        }
    }

    pub fn is_electric(self) -> bool {
        matches!(self, Component::Ex | Component::Ey | Component::Ez)
    }

    pub fn sector(self) -> Sector {
        match self {
            Component::Ex | Component::Ey | Component::Bz => Sector::Eeb,
            Component::Bx | Component::By | Component::Ez => Sector::Bbe,
        }
    }
}

/// The two field sectors that decouple under translation invariance along `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// `(E_x, E_y, B_z)`
    Eeb,
    /// `(B_x, B_y, E_z)`
    Bbe,
}

impl Sector {
    pub fn complement(self) -> Sector {
        match self {
            Sector::Eeb => Sector::Bbe,
            Sector::Bbe => Sector::Eeb,
        }
    }
}

/// Continuous field values: `value(component, [t, x, y, z])`.
pub trait FieldSampler {
    fn value(&self, component: Component, point: [f64; 4]) -> f64;
}

impl<F: Fn(Component, [f64; 4]) -> f64> FieldSampler for F {
    fn value(&self, component: Component, point: [f64; 4]) -> f64 {
        self(component, point)
    }
}

impl FieldSampler for EMConfig {
    fn value(&self, component: Component, point: [f64; 4]) -> f64 {
        let p = match component {
            Component::Ex => &self.ex,
            Component::Ey => &self.ey,
            Component::Ez => &self.ez,
            Component::Bx => &self.bx,
            Component::By => &self.by,
            Component::Bz => &self.bz,
        };
        p.eval_f64(&point)
    }
}

/// Current density sampled at E positions (and half-integer time levels).
pub struct CurrentSampler<'a>(pub &'a EMConfig);

impl FieldSampler for CurrentSampler<'_> {
    fn value(&self, component: Component, point: [f64; 4]) -> f64 {
        let p = match component {
            Component::Ex => &self.0.jx,
            Component::Ey => &self.0.jy,
            Component::Ez => &self.0.jz,
            _ => return 0.0,
        };
        p.eval_f64(&point)
    }
}

/// Lattice size, spacing and time step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    pub dx: f64,
    pub dt: f64,
}

impl GridSpec {
    /// Time step `courant · Δ/√3`; a Courant number above one is rejected.
    pub fn with_courant(
        nx: usize,
        ny: usize,
        nz: usize,
        dx: f64,
        courant: f64,
    ) -> Result<Self, FdtdError> {
        let limit = dx / 3f64.sqrt();
        Self::new(nx, ny, nz, dx, courant * limit)
    }

    pub fn new(nx: usize, ny: usize, nz: usize, dx: f64, dt: f64) -> Result<Self, FdtdError> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(FdtdError::EmptyGrid);
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(FdtdError::BadSpacing);
        }
        let limit = dx / 3f64.sqrt();
        if !(dt.is_finite() && dt > 0.0 && dt <= limit * (1.0 + 1e-12)) {
            return Err(FdtdError::Courant { dt, limit });
        }
        Ok(Self { nx, ny, nz, dx, dt })
    }

    pub fn cells(&self) -> usize {
        self.nx * self.ny * self.nz
    }
}

/// Energies of the two sectors, using the discretely conserved leapfrog
/// energy `Σ E^n·E^n + Σ B^{n−½}·B^{n+½}` times the cell volume.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SectorEnergies {
    pub eeb: f64,
    pub bbe: f64,
    pub total: f64,
}

impl SectorEnergies {
    pub fn of(&self, sector: Sector) -> f64 {
        match sector {
            Sector::Eeb => self.eeb,
            Sector::Bbe => self.bbe,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    spec: GridSpec,
    step: usize,
    fields: [Vec<f64>; 6],
}

fn slot(c: Component) -> usize {
    match c {
        Component::Ex => 0,
        Component::Ey => 1,
        Component::Ez => 2,
        Component::Bx => 3,
        Component::By => 4,
        Component::Bz => 5,
    }
}

impl Grid {
    pub fn zeros(spec: GridSpec) -> Self {
        let n = spec.cells();
        Self {
            spec,
            step: 0,
            fields: std::array::from_fn(|_| vec![0.0; n]),
        }
    }

    /// Samples E at `t = 0` and B at `t = −dt/2` on their staggered positions.
    pub fn sample(spec: GridSpec, source: &impl FieldSampler) -> Self {
        let mut grid = Self::zeros(spec);
        for c in Component::ALL {
            let t = if c.is_electric() { 0.0 } else { -0.5 * spec.dt };
            grid.fill(c, t, source);
        }
        grid
    }

    fn fill<S: FieldSampler + ?Sized>(&mut self, c: Component, t: f64, source: &S) {
        let (nx, ny, nz) = (self.spec.nx, self.spec.ny, self.spec.nz);
        let h = self.spec.dx;
        let off = c.offset();
        let field = &mut self.fields[slot(c)];
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let point = [
                        t,
                        (i as f64 + off[0]) * h,
                        (j as f64 + off[1]) * h,
                        (k as f64 + off[2]) * h,
                    ];
                    field[i + nx * (j + ny * k)] = source.value(c, point);
                }
            }
        }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    /// Time level of the electric field.
    pub fn time(&self) -> f64 {
        self.step as f64 * self.spec.dt
    }

    pub fn field(&self, c: Component) -> &[f64] {
        &self.fields[slot(c)]
    }

    pub fn at(&self, c: Component, i: usize, j: usize, k: usize) -> f64 {
        self.fields[slot(c)][self.index(i, j, k)]
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.spec.nx * (j + self.spec.ny * k)
    }

    /// `curl E` on B positions, scaled by `1/Δ`.
    fn curl_e(&self) -> [Vec<f64>; 3] {
        let GridSpec { nx, ny, nz, dx, .. } = self.spec;
        let [ex, ey, ez] = [0, 1, 2].map(|s| &self.fields[s]);
        let n = self.spec.cells();
        let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for k in 0..nz {
            let kp = (k + 1) % nz;
            for j in 0..ny {
                let jp = (j + 1) % ny;
                for i in 0..nx {
                    let ip = (i + 1) % nx;
                    let at = |i, j, k| i + nx * (j + ny * k);
                    let c = at(i, j, k);
                    out[0][c] = ((ez[at(i, jp, k)] - ez[c]) - (ey[at(i, j, kp)] - ey[c])) / dx;
                    out[1][c] = ((ex[at(i, j, kp)] - ex[c]) - (ez[at(ip, j, k)] - ez[c])) / dx;
                    out[2][c] = ((ey[at(ip, j, k)] - ey[c]) - (ex[at(i, jp, k)] - ex[c])) / dx;
                }
            }
        }
        out
    }

    /// `curl B` on E positions, scaled by `1/Δ`.
    fn curl_b(&self) -> [Vec<f64>; 3] {
        let GridSpec { nx, ny, nz, dx, .. } = self.spec;
        let [bx, by, bz] = [3, 4, 5].map(|s| &self.fields[s]);
        let n = self.spec.cells();
        let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for k in 0..nz {
            let km = (k + nz - 1) % nz;
            for j in 0..ny {
                let jm = (j + ny - 1) % ny;
                for i in 0..nx {
                    let im = (i + nx - 1) % nx;
                    let at = |i, j, k| i + nx * (j + ny * k);
                    let c = at(i, j, k);
                    out[0][c] = ((bz[c] - bz[at(i, jm, k)]) - (by[c] - by[at(i, j, km)])) / dx;
                    out[1][c] = ((bx[c] - bx[at(i, j, km)]) - (bz[c] - bz[at(im, j, k)])) / dx;
                    out[2][c] = ((by[c] - by[at(im, j, k)]) - (bx[c] - bx[at(i, jm, k)])) / dx;
                }
            }
        }
        out
    }

    /// B advanced half a step past the electric time level, without mutating the grid.
    fn b_ahead(&self) -> [Vec<f64>; 3] {
        let dt = self.spec.dt;
        let curl = self.curl_e();
        std::array::from_fn(|a| {
            self.fields[3 + a]
                .iter()
                .zip(&curl[a])
                .map(|(b, c)| b - dt * c)
                .collect()
        })
    }

    /// Advances `steps` leapfrog steps; `current` is sampled at E positions
    /// and half-integer time levels.
    pub fn step(&mut self, steps: usize, current: Option<&dyn FieldSampler>) {
        let dt = self.spec.dt;
        for _ in 0..steps {
            let ahead = self.b_ahead();
            for (a, b) in ahead.into_iter().enumerate() {
                self.fields[3 + a] = b;
            }
            let curl = self.curl_b();
            for (a, c) in curl.iter().enumerate() {
                for (e, v) in self.fields[a].iter_mut().zip(c) {
                    *e += dt * v;
                }
            }
            if let Some(current) = current {
                let t = (self.step as f64 + 0.5) * dt;
                let mut j = Grid::zeros(self.spec);
                for c in [Component::Ex, Component::Ey, Component::Ez] {
                    j.fill(c, t, current);
                }
                for a in 0..3 {
                    for (e, v) in self.fields[a].iter_mut().zip(&j.fields[a]) {
                        *e -= dt * v;
                    }
                }
            }
            self.step += 1;
        }
    }

    pub fn energies(&self) -> SectorEnergies {
        let vol = self.spec.dx.powi(3);
        let ahead = self.b_ahead();
        let square = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let [ex, ey, ez, bx, by, bz] = &self.fields;
        let eeb = (square(ex) + square(ey) + dot(bz, &ahead[2])) * vol;
        let bbe = (square(ez) + dot(bx, &ahead[0]) + dot(by, &ahead[1])) * vol;
        SectorEnergies {
            eeb,
            bbe,
            total: eeb + bbe,
        }
    }

    /// Energy in the sector complementary to `sector`.
    pub fn leakage(&self, sector: Sector) -> f64 {
        self.energies().of(sector.complement()).abs()
    }

    /// Discrete divergence of B at cell centres.
    pub fn div_b(&self) -> Vec<f64> {
        let GridSpec { nx, ny, nz, dx, .. } = self.spec;
        let [bx, by, bz] = [3, 4, 5].map(|s| &self.fields[s]);
        let mut out = vec![0.0; self.spec.cells()];
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    let at = |i, j, k| i + nx * (j + ny * k);
                    let c = at(i, j, k);
                    out[c] = ((bx[at((i + 1) % nx, j, k)] - bx[c])
                        + (by[at(i, (j + 1) % ny, k)] - by[c])
                        + (bz[at(i, j, (k + 1) % nz)] - bz[c]))
                        / dx;
                }
            }
        }
        out
    }

    pub fn div_b_max(&self) -> f64 {
        max_abs(&self.div_b())
    }
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// One row of a simulation trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub step: usize,
    pub time: f64,
    pub eeb_energy: f64,
    pub bbe_energy: f64,
    pub total: f64,
    #[serde(rename = "divB_max")]
    pub div_b_max: f64,
    /// Complement-sector energy relative to the total.
    pub leakage: f64,
}

/// Summary statistics of a simulation run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    /// Sector holding more energy at step 0; leakage is measured against it.
    pub sector: Sector,
    pub rows: Vec<TraceRow>,
    /// Largest change of discrete div B over a single step.
    pub max_div_b_step: f64,
}

impl Trace {
    pub fn max_leakage(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.leakage))
    }

    /// Largest `|W_n − W_0| / |W_0|` of the conserved total energy.
    pub fn energy_drift(&self) -> f64 {
        let w0 = self.rows[0].total;
        if w0 == 0.0 {
            return self.rows.iter().fold(0.0, |m, r| m.max(r.total.abs()));
        }
        self.rows
            .iter()
            .fold(0.0, |m, r| m.max(((r.total - w0) / w0).abs()))
    }

    pub fn max_div_b(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.div_b_max))
    }
}

/// Runs `steps` steps, recording a row every `every` steps (and always the
/// first and last).
pub fn simulate(
    grid: &mut Grid,
    steps: usize,
    every: usize,
    current: Option<&dyn FieldSampler>,
) -> Trace {
    let every = every.max(1);
    let initial = grid.energies();
    let sector = if initial.eeb.abs() >= initial.bbe.abs() {
        Sector::Eeb
    } else {
        Sector::Bbe
    };
    let row = |grid: &Grid, div: &[f64]| {
        let e = grid.energies();
        let spurious = e.of(sector.complement()).abs();
        TraceRow {
            step: grid.steps_taken(),
            time: grid.time(),
            eeb_energy: e.eeb,
            bbe_energy: e.bbe,
            total: e.total,
            div_b_max: max_abs(div),
            leakage: if e.total == 0.0 {
                0.0
            } else {
                spurious / e.total.abs()
            },
        }
    };
    let mut div = grid.div_b();
    let mut rows = vec![row(grid, &div)];
    let mut max_div_b_step: f64 = 0.0;
    for n in 1..=steps {
        grid.step(1, current);
        let next = grid.div_b();
        let change = next
            .iter()
            .zip(&div)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>();
        max_div_b_step = max_div_b_step.max(max_abs(&change));
        div = next;
        if n % every == 0 || n == steps {
            rows.push(row(grid, &div));
        }
    }
    Trace {
        sector,
        rows,
        max_div_b_step,
    }
}

/// Max-norm error of `E_y` against `exact` after advecting to time `period`
/// on an `n × 1 × 1` grid of unit length.
pub fn advection_error(
    n: usize,
    courant: f64,
    period: f64,
    exact: &impl FieldSampler,
) -> Result<f64, FdtdError> {
    let dx = 1.0 / n as f64;
    let limit = courant * dx / 3f64.sqrt();
    let steps = (period / limit).ceil() as usize;
    let spec = GridSpec::new(n, 1, 1, dx, period / steps as f64)?;
    let mut grid = Grid::sample(spec, exact);
    grid.step(steps, None);
    let mut reference = Grid::zeros(spec);
    reference.fill(Component::Ey, grid.time(), exact);
    let err = grid
        .field(Component::Ey)
        .iter()
        .zip(reference.field(Component::Ey))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(err)
}

/// Travelling wave `E_y = B_z = sin 2π(x − t)` on the unit-periodic line.
pub fn sine_wave(component: Component, p: [f64; 4]) -> f64 {
    match component {
        Component::Ey | Component::Bz => (2.0 * std::f64::consts::PI * (p[1] - p[0])).sin(),
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> GridSpec {
        GridSpec::with_courant(n, n, 1, 1.0 / n as f64, 0.5).unwrap()
    }

    #[test]
    fn courant_is_enforced() {
        assert!(matches!(
            GridSpec::with_courant(4, 4, 1, 0.1, 1.5),
            Err(FdtdError::Courant { .. })
        ));
        assert!(GridSpec::with_courant(4, 4, 1, 0.1, 1.0).is_ok());
        assert_eq!(
            GridSpec::with_courant(0, 4, 1, 0.1, 0.5),
            Err(FdtdError::EmptyGrid)
        );
        assert_eq!(
            GridSpec::with_courant(4, 4, 1, 0.0, 0.5),
            Err(FdtdError::BadSpacing)
        );
    }

    #[test]
    fn zero_stays_zero() {
        let mut g = Grid::sample(spec(8), &EMConfig::zero());
        g.step(20, None);
        assert!(Component::ALL
            .iter()
            .all(|&c| g.field(c).iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn constant_bx_is_stationary() {
        let c = EMConfig::from_pairs(&[("Bx", "1")]).unwrap();
        let mut g = Grid::sample(spec(8), &c);
        let before = g.clone();
        g.step(50, None);
        for comp in Component::ALL {
            assert_eq!(g.field(comp), before.field(comp));
        }
    }

    #[test]
    fn sampling_uses_staggered_positions() {
        let c = EMConfig::from_pairs(&[("Ey", "x"), ("Bz", "t")]).unwrap();
        let s = spec(4);
        let g = Grid::sample(s, &c);
        assert_eq!(g.at(Component::Ey, 2, 0, 0), 0.5);
        assert_eq!(g.at(Component::Bz, 0, 0, 0), -0.5 * s.dt);
        assert!(g.field(Component::Ex).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn z_dependent_data_leaks() {
        let c = EMConfig::from_pairs(&[("Ex", "z"), ("Ey", "x y")]).unwrap();
        let s = GridSpec::with_courant(6, 6, 6, 1.0 / 6.0, 0.5).unwrap();
        let mut g = Grid::sample(s, &c);
        g.step(10, None);
        assert!(g.leakage(Sector::Eeb) > 0.0);
    }

    #[test]
    fn sector_energies_add_up() {
        let c = EMConfig::from_pairs(&[("Ex", "x"), ("Bx", "y"), ("Ez", "x y")]).unwrap();
        let e = Grid::sample(spec(8), &c).energies();
        assert!((e.eeb + e.bbe - e.total).abs() <= 1e-15 * e.total.abs());
    }
}
