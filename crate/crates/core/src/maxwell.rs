//! Maxwell's equations in terms of the Faraday form `F`, the Ampère form `G`
//! and the charge-current form `J`, and their splitting into decoupled sectors
//! under one or two descent conditions.
//!
//! Conventions on `(t, x, y, z)` with metric `diag(+1, -1, -1, -1)`:
//!
//! - `F = dt∧E − B`, `E = E_x dx + E_y dy + E_z dz`, `B = B_x dy∧dz + B_y dz∧dx + B_z dx∧dy`
//! - `G = ⋆F = −dt∧H − D` (vacuum, so `H = B` and `D = E` componentwise)
//! - `J = dt∧j − R`, `j = j_x dy∧dz + j_y dz∧dx + j_z dx∧dy`, `R = ρ dx∧dy∧dz`
//!
//! # Residual catalogue
//!
//! Single descent along `z` (pair `(∂_z, dz)`), with `w = dz∧w₁ + w₀`:
//!
//! | id | residual |
//! |----|----------|
//! | `EEB.faraday` | `dF₀` |
//! | `EEB.ampere` | `dG₁ + J₁` |
//! | `EEB.constitutive` | `G₁ − i_Z⋆F₀` |
//! | `EEB.continuity` | `dJ₁` |
//! | `BBE.faraday` | `dF₁` |
//! | `BBE.ampere` | `dG₀ − J₀` |
//! | `BBE.constitutive` | `G₀ − i_Z⋆F₁` |
//!
//! Double descent along `y` and `z`, with `i_{Y∧Z} = i_Z i_Y`:
//!
//! | id | residual |
//! |----|----------|
//! | `sector.Ex.faraday` | `dF₀₀` |
//! | `sector.Ex.ampere` | `d i_{Y∧Z}⋆F₀₀ − J₁₁` |
//! | `sector.Ex.constitutive` | `G₁₁ − i_{Y∧Z}⋆F₀₀` |
//! | `sector.Ex.continuity` | `dJ₁₁` |
//! | `sector.EyBz.faraday` | `dF₁₀` |
//! | `sector.EyBz.ampere` | `d i_{Y∧Z}⋆F₁₀ + J₀₁` |
//! | `sector.EyBz.constitutive` | `G₀₁ − i_{Y∧Z}⋆F₁₀` |
//! | `sector.ByEz.faraday` | `dF₀₁` |
//! | `sector.ByEz.ampere` | `d i_{Y∧Z}⋆F₀₁ − J₁₀` |
//! | `sector.ByEz.constitutive` | `G₁₀ + i_{Y∧Z}⋆F₀₁` |
//! | `sector.Bx.faraday` | `dF₁₁` |
//! | `sector.Bx.ampere` | `d i_{Y∧Z}⋆F₁₁ − J₀₀` |
//! | `sector.Bx.constitutive` | `G₀₀ − i_{Y∧Z}⋆F₁₁` |
//!
//! The componentwise equations (`EEB1`…`BBE4`, `E1`…`B2`) are each a fixed
//! signed coefficient of one of these forms; see [`catalogue`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{coordinate_names, Poly, Rational};
use crate::descent::{decompose_double, decompose_single, hodge_components, DescentPair};
use crate::error::{DescentError, MaxwellError};
use crate::exterior::{
    exterior_derivative, hodge, interior, wedge, BasisIndex, Form, FrameVector, Metric,
};

const DIM: usize = 4;
const T: usize = 0;
const X: usize = 1;
const Y: usize = 2;
const Z: usize = 3;

/// Physical components of an electromagnetic configuration on `(t, x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMConfig {
    pub ex: Poly,
    pub ey: Poly,
    pub ez: Poly,
    pub bx: Poly,
    pub by: Poly,
    pub bz: Poly,
    pub rho: Poly,
    pub jx: Poly,
    pub jy: Poly,
    pub jz: Poly,
}

/// Textual form of [`EMConfig`]: polynomial strings keyed by component name.
/// Missing components are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EMConfigText {
    #[serde(rename = "Ex", default, skip_serializing_if = "Option::is_none")]
    pub ex: Option<String>,
    #[serde(rename = "Ey", default, skip_serializing_if = "Option::is_none")]
    pub ey: Option<String>,
    #[serde(rename = "Ez", default, skip_serializing_if = "Option::is_none")]
    pub ez: Option<String>,
    #[serde(rename = "Bx", default, skip_serializing_if = "Option::is_none")]
    pub bx: Option<String>,
    #[serde(rename = "By", default, skip_serializing_if = "Option::is_none")]
    pub by: Option<String>,
    #[serde(rename = "Bz", default, skip_serializing_if = "Option::is_none")]
    pub bz: Option<String>,
    #[serde(rename = "rho", default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(rename = "jx", default, skip_serializing_if = "Option::is_none")]
    pub jx: Option<String>,
    #[serde(rename = "jy", default, skip_serializing_if = "Option::is_none")]
    pub jy: Option<String>,
    #[serde(rename = "jz", default, skip_serializing_if = "Option::is_none")]
    pub jz: Option<String>,
}

pub const COMPONENT_NAMES: [&str; 10] =
    ["Ex", "Ey", "Ez", "Bx", "By", "Bz", "rho", "jx", "jy", "jz"];

impl EMConfig {
    pub fn zero() -> Self {
        let z = Poly::zero(DIM);
        Self {
            ex: z.clone(),
            ey: z.clone(),
            ez: z.clone(),
            bx: z.clone(),
            by: z.clone(),
            bz: z.clone(),
            rho: z.clone(),
            jx: z.clone(),
            jy: z.clone(),
            jz: z,
        }
    }

    /// Builds a configuration from `(name, polynomial text)` pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self, MaxwellError> {
        let mut c = Self::zero();
        for (name, text) in pairs {
            let p = Poly::parse(text, DIM)?;
            *c.component_mut(name).ok_or_else(|| {
                MaxwellError::Parse(crate::error::ParseError::UnknownVariable {
                    name: name.to_string(),
                    known: COMPONENT_NAMES.join(", "),
                })
            })? = p;
        }
        Ok(c)
    }

    pub fn from_text(text: &EMConfigText) -> Result<Self, MaxwellError> {
        let parse = |s: &Option<String>| -> Result<Poly, MaxwellError> {
            match s {
                Some(s) => Ok(Poly::parse(s, DIM)?),
                None => Ok(Poly::zero(DIM)),
            }
        };
        Ok(Self {
            ex: parse(&text.ex)?,
            ey: parse(&text.ey)?,
            ez: parse(&text.ez)?,
            bx: parse(&text.bx)?,
            by: parse(&text.by)?,
            bz: parse(&text.bz)?,
            rho: parse(&text.rho)?,
            jx: parse(&text.jx)?,
            jy: parse(&text.jy)?,
            jz: parse(&text.jz)?,
        })
    }

    pub fn to_text(&self) -> EMConfigText {
        let show = |p: &Poly| (!p.is_zero()).then(|| p.to_string());
        EMConfigText {
            ex: show(&self.ex),
            ey: show(&self.ey),
            ez: show(&self.ez),
            bx: show(&self.bx),
            by: show(&self.by),
            bz: show(&self.bz),
            rho: show(&self.rho),
            jx: show(&self.jx),
            jy: show(&self.jy),
            jz: show(&self.jz),
        }
    }

    pub fn component(&self, name: &str) -> Option<&Poly> {
        Some(match name {
            "Ex" => &self.ex,
            "Ey" => &self.ey,
            "Ez" => &self.ez,
            "Bx" => &self.bx,
            "By" => &self.by,
            "Bz" => &self.bz,
            "rho" => &self.rho,
            "jx" => &self.jx,
            "jy" => &self.jy,
            "jz" => &self.jz,
            _ => return None,
        })
    }

    pub fn component_mut(&mut self, name: &str) -> Option<&mut Poly> {
        Some(match name {
            "Ex" => &mut self.ex,
            "Ey" => &mut self.ey,
            "Ez" => &mut self.ez,
            "Bx" => &mut self.bx,
            "By" => &mut self.by,
            "Bz" => &mut self.bz,
            "rho" => &mut self.rho,
            "jx" => &mut self.jx,
            "jy" => &mut self.jy,
            "jz" => &mut self.jz,
            _ => return None,
        })
    }

    pub fn components(&self) -> impl Iterator<Item = (&'static str, &Poly)> {
        COMPONENT_NAMES
            .iter()
            .map(move |&n| (n, self.component(n).expect("known name")))
    }

    /// Components with a nonvanishing derivative along `vector`.
    pub fn invariance_violations(&self, vector: &FrameVector) -> Vec<&'static str> {
        self.components()
            .filter(|(_, p)| !vector.apply(p).is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// `∂_t ρ + div j`.
    pub fn continuity(&self) -> Poly {
        let d = |p: &Poly, a: usize| p.partial(a).expect("axis in range");
        &(&d(&self.rho, T) + &d(&self.jx, X)) + &(&d(&self.jy, Y) + &d(&self.jz, Z))
    }
}

fn basis(axes: &[usize]) -> BasisIndex {
    BasisIndex::from_axes(axes).expect("increasing axes")
}

/// `F = dt∧E − B`.
pub fn assemble_f(c: &EMConfig) -> Form {
    let mut f = Form::zero(DIM);
    f.add_term(basis(&[T, X]), c.ex.clone());
    f.add_term(basis(&[T, Y]), c.ey.clone());
    f.add_term(basis(&[T, Z]), c.ez.clone());
    f.add_term(basis(&[Y, Z]), -&c.bx);
    // dz∧dx = −dx∧dz
    f.add_term(basis(&[X, Z]), c.by.clone());
    f.add_term(basis(&[X, Y]), -&c.bz);
    f
}

/// `G = ⋆F` for the Minkowski metric.
pub fn assemble_g_vacuum(c: &EMConfig, g: &Metric) -> Result<Form, MaxwellError> {
    if g.dim() != DIM {
        return Err(MaxwellError::WrongDimension(g.dim()));
    }
    if !g.is_lorentzian() {
        return Err(MaxwellError::NotLorentzian);
    }
    Ok(hodge(&assemble_f(c), g))
}

/// `J = dt∧j − R`.
pub fn assemble_j(c: &EMConfig) -> Form {
    let mut j = Form::zero(DIM);
    j.add_term(basis(&[T, Y, Z]), c.jx.clone());
    // dt∧dz∧dx = −dt∧dx∧dz
    j.add_term(basis(&[T, X, Z]), -&c.jy);
    j.add_term(basis(&[T, X, Y]), c.jz.clone());
    j.add_term(basis(&[X, Y, Z]), -&c.rho);
    j
}

fn time() -> FrameVector {
    FrameVector::axis(DIM, T)
}

/// `i_T ω` and `−(ω − dt∧i_T ω)`: the time and space parts of a 2- or 3-form.
pub fn split_time(w: &Form) -> (Form, Form) {
    let along = interior(&time(), w).expect("four-dimensional form");
    let dt = Form::dx(DIM, T);
    let spatial = -(w - &wedge(&dt, &along).expect("same dimension"));
    (along, spatial)
}

/// Magnetic excitation `H = −i_T G` and electric excitation `D = −(G − dt∧i_T G)`.
pub fn excitations(g_form: &Form) -> (Form, Form) {
    let (along, spatial) = split_time(g_form);
    (-along, spatial)
}

/// Electric field 1-form `E = i_T F` and magnetic 2-form `B = −(F − dt∧i_T F)`.
pub fn fields(f_form: &Form) -> (Form, Form) {
    split_time(f_form)
}

/// `dF`, `dG − J` and `dJ` for vacuum `G = ⋆F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuals {
    pub faraday: Form,
    pub ampere: Form,
    pub continuity: Form,
}

impl Residuals {
    pub fn solves_maxwell(&self) -> bool {
        self.faraday.is_zero() && self.ampere.is_zero()
    }
}

pub fn residuals(c: &EMConfig, g: &Metric) -> Result<Residuals, MaxwellError> {
    let f = assemble_f(c);
    let gf = assemble_g_vacuum(c, g)?;
    let j = assemble_j(c);
    Ok(Residuals {
        faraday: exterior_derivative(&f),
        ampere: &exterior_derivative(&gf) - &j,
        continuity: exterior_derivative(&j),
    })
}

/// Descent mode of a sector report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Single,
    Double,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(Mode::Single),
            "double" => Ok(Mode::Double),
            other => Err(format!("unknown mode {other:?} (expected single|double)")),
        }
    }
}

/// Named residual forms of the reduced equations, grouped by sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorReport {
    pub mode: Mode,
    pub residuals: BTreeMap<String, Form>,
}

/// Serializable view of a [`SectorReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorRecord {
    pub mode: Mode,
    pub sectors: BTreeMap<String, Vec<String>>,
    pub residuals: BTreeMap<String, String>,
}

impl SectorReport {
    /// Sector name of an equation id (`EEB.ampere` → `EEB`, `sector.Ex.gauss` → `sector.Ex`).
    pub fn sector_of(id: &str) -> &str {
        id.rsplit_once('.').map_or(id, |(s, _)| s)
    }

    pub fn sectors(&self) -> BTreeMap<String, Vec<String>> {
        let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for id in self.residuals.keys() {
            out.entry(Self::sector_of(id).to_string())
                .or_default()
                .push(id.clone());
        }
        out
    }

    pub fn all_zero(&self) -> bool {
        self.residuals.values().all(Form::is_zero)
    }

    pub fn residual(&self, id: &str) -> &Form {
        &self.residuals[id]
    }

    pub fn record(&self) -> SectorRecord {
        let names = coordinate_names(DIM);
        SectorRecord {
            mode: self.mode,
            sectors: self.sectors(),
            residuals: self
                .residuals
                .iter()
                .map(|(k, v)| (k.clone(), v.render(&names)))
                .collect(),
        }
    }
}

fn axis_name(pair: &DescentPair) -> String {
    let v = pair.vector();
    let names = coordinate_names(v.dim());
    let unit: Vec<usize> = (0..v.dim())
        .filter(|&a| !v.component(a).is_zero())
        .collect();
    match unit.as_slice() {
        [a] if v.component(*a).is_one() => names[*a].clone(),
        _ => pair.label().to_string(),
    }
}

fn check_descent(c: &EMConfig, pairs: &[&DescentPair]) -> Result<(), MaxwellError> {
    for pair in pairs {
        if let Some(component) = c.invariance_violations(pair.vector()).first() {
            return Err(MaxwellError::DescentViolated {
                component: component.to_string(),
                axis: axis_name(pair),
            });
        }
    }
    Ok(())
}

/// Reduced equations require unit spacelike metric pairs (`g(X, X) = −1`).
fn check_unit_spacelike(pair: &DescentPair, g: &Metric) -> Result<(), MaxwellError> {
    let norm = pair.metric_norm(g)?;
    if norm == -Rational::one() {
        Ok(())
    } else {
        Err(MaxwellError::Descent(DescentError::NotMetric))
    }
}

/// Splits Maxwell's equations for a configuration invariant along `pair_z`.
pub fn split_single(
    c: &EMConfig,
    g: &Metric,
    pair_z: &DescentPair,
) -> Result<SectorReport, MaxwellError> {
    let f = assemble_f(c);
    let gf = assemble_g_vacuum(c, g)?;
    let j = assemble_j(c);
    if pair_z.dim() != DIM {
        return Err(MaxwellError::WrongDimension(pair_z.dim()));
    }
    check_unit_spacelike(pair_z, g)?;
    check_descent(c, &[pair_z])?;

    let fd = decompose_single(pair_z, &f)?;
    let gd = decompose_single(pair_z, &gf)?;
    let jd = decompose_single(pair_z, &j)?;
    let star_f = hodge_components(pair_z, &f, g)?;
    let d = exterior_derivative;

    let mut residuals = BTreeMap::new();
    let mut put = |id: &str, form: Form| {
        residuals.insert(id.to_string(), form);
    };
    put("EEB.faraday", d(&fd.scalar_part));
    put("EEB.ampere", &d(&gd.vector_part) + &jd.vector_part);
    put("EEB.constitutive", &gd.vector_part - &star_f.vector_part);
    put("EEB.continuity", d(&jd.vector_part));
    put("BBE.faraday", d(&fd.vector_part));
    put("BBE.ampere", &d(&gd.scalar_part) - &jd.scalar_part);
    put("BBE.constitutive", &gd.scalar_part - &star_f.scalar_part);
    Ok(SectorReport {
        mode: Mode::Single,
        residuals,
    })
}

/// Physical sector names of the four double-descent slots of `F`.
pub fn double_sector_name(r: usize, s: usize) -> &'static str {
    match (r, s) {
        (0, 0) => "Ex",
        (1, 0) => "EyBz",
        (0, 1) => "ByEz",
        _ => "Bx",
    }
}

/// Splits Maxwell's equations for a configuration invariant along both pairs.
pub fn split_double(
    c: &EMConfig,
    g: &Metric,
    pair_y: &DescentPair,
    pair_z: &DescentPair,
) -> Result<SectorReport, MaxwellError> {
    let f = assemble_f(c);
    let gf = assemble_g_vacuum(c, g)?;
    let j = assemble_j(c);
    if pair_y.dim() != DIM || pair_z.dim() != DIM {
        return Err(MaxwellError::WrongDimension(pair_y.dim().max(pair_z.dim())));
    }
    check_unit_spacelike(pair_y, g)?;
    check_unit_spacelike(pair_z, g)?;
    check_descent(c, &[pair_y, pair_z])?;

    let fd = decompose_double(pair_y, pair_z, &f)?;
    let gd = decompose_double(pair_y, pair_z, &gf)?;
    let jd = decompose_double(pair_y, pair_z, &j)?;
    let d = exterior_derivative;
    // i_{Y∧Z} ⋆ F_(r,s)
    let dual = |r: usize, s: usize| -> Result<Form, MaxwellError> {
        let star = hodge(fd.part(r, s), g);
        Ok(pair_z.contract(&pair_y.contract(&star)?)?)
    };

    let mut residuals = BTreeMap::new();
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let sector = double_sector_name(r, s);
        let star = dual(r, s)?;
        let (jr, js) = (1 - r, 1 - s);
        let source = jd.part(jr, js);
        let ampere = match (r, s) {
            (1, 0) => &d(&star) + source,
            _ => &d(&star) - source,
        };
        // G_(1-r,1-s) = ±i_{Y∧Z}⋆F_(r,s); the minus sign only for slot (0,1)
        let expected = if (r, s) == (0, 1) { -&star } else { star };
        residuals.insert(format!("sector.{sector}.faraday"), d(fd.part(r, s)));
        residuals.insert(format!("sector.{sector}.ampere"), ampere);
        residuals.insert(
            format!("sector.{sector}.constitutive"),
            gd.part(jr, js) - &expected,
        );
    }
    residuals.insert("sector.Ex.continuity".into(), d(jd.part(1, 1)));
    Ok(SectorReport {
        mode: Mode::Double,
        residuals,
    })
}

/// One row of the componentwise catalogue: the scalar equation `id` equals
/// `sign` times the coefficient of `basis` in residual form `residual`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub id: &'static str,
    pub residual: &'static str,
    pub basis: &'static [usize],
    pub sign: i8,
}

const SINGLE_CATALOGUE: [CatalogueEntry; 9] = [
    CatalogueEntry {
        id: "EEB1",
        residual: "EEB.faraday",
        basis: &[T, X, Y],
        sign: -1,
    },
    CatalogueEntry {
        id: "EEB2",
        residual: "EEB.ampere",
        basis: &[X, Y],
        sign: 1,
    },
    CatalogueEntry {
        id: "EEB3",
        residual: "EEB.ampere",
        basis: &[T, Y],
        sign: -1,
    },
    CatalogueEntry {
        id: "EEB4",
        residual: "EEB.ampere",
        basis: &[T, X],
        sign: 1,
    },
    CatalogueEntry {
        id: "EEB.cont",
        residual: "EEB.continuity",
        basis: &[T, X, Y],
        sign: -1,
    },
    CatalogueEntry {
        id: "BBE1",
        residual: "BBE.faraday",
        basis: &[X, Y],
        sign: 1,
    },
    CatalogueEntry {
        id: "BBE2",
        residual: "BBE.faraday",
        basis: &[T, Y],
        sign: 1,
    },
    CatalogueEntry {
        id: "BBE3",
        residual: "BBE.faraday",
        basis: &[T, X],
        sign: -1,
    },
    CatalogueEntry {
        id: "BBE4",
        residual: "BBE.ampere",
        basis: &[T, X, Y],
        sign: 1,
    },
];

const DOUBLE_CATALOGUE: [CatalogueEntry; 9] = [
    CatalogueEntry {
        id: "E1",
        residual: "sector.Ex.ampere",
        basis: &[X],
        sign: -1,
    },
    CatalogueEntry {
        id: "E2",
        residual: "sector.Ex.ampere",
        basis: &[T],
        sign: 1,
    },
    CatalogueEntry {
        id: "E.cont",
        residual: "sector.Ex.continuity",
        basis: &[T, X],
        sign: -1,
    },
    CatalogueEntry {
        id: "EB1",
        residual: "sector.EyBz.faraday",
        basis: &[T, X],
        sign: 1,
    },
    CatalogueEntry {
        id: "EB2",
        residual: "sector.EyBz.ampere",
        basis: &[T, X],
        sign: 1,
    },
    CatalogueEntry {
        id: "BE1",
        residual: "sector.ByEz.faraday",
        basis: &[T, X],
        sign: -1,
    },
    CatalogueEntry {
        id: "BE2",
        residual: "sector.ByEz.ampere",
        basis: &[T, X],
        sign: 1,
    },
    CatalogueEntry {
        id: "B1",
        residual: "sector.Bx.faraday",
        basis: &[X],
        sign: -1,
    },
    CatalogueEntry {
        id: "B2",
        residual: "sector.Bx.faraday",
        basis: &[T],
        sign: -1,
    },
];

pub fn catalogue(mode: Mode) -> &'static [CatalogueEntry] {
    match mode {
        Mode::Single => &SINGLE_CATALOGUE,
        Mode::Double => &DOUBLE_CATALOGUE,
    }
}

/// Scalar residuals of the componentwise reduced equations, evaluated
/// directly from partial derivatives of the configuration.
pub fn componentwise_crosscheck(
    c: &EMConfig,
    g: &Metric,
    mode: Mode,
) -> Result<BTreeMap<String, Poly>, MaxwellError> {
    if !g.is_lorentzian() {
        return Err(MaxwellError::NotLorentzian);
    }
    let z_pair = DescentPair::coordinate(DIM, Z);
    let y_pair = DescentPair::coordinate(DIM, Y);
    match mode {
        Mode::Single => check_descent(c, &[&z_pair])?,
        Mode::Double => check_descent(c, &[&y_pair, &z_pair])?,
    }
    let d = |p: &Poly, a: usize| p.partial(a).expect("axis in range");
    let mut out = BTreeMap::new();
    let mut put = |id: &str, p: Poly| {
        out.insert(id.to_string(), p);
    };
    match mode {
        Mode::Single => {
            put("EEB1", &(&d(&c.bz, T) + &d(&c.ey, X)) - &d(&c.ex, Y));
            put("EEB2", &(&d(&c.ex, X) + &d(&c.ey, Y)) - &c.rho);
            put("EEB3", &(&(-d(&c.ex, T)) + &d(&c.bz, Y)) - &c.jx);
            put("EEB4", &(&(-d(&c.ey, T)) - &d(&c.bz, X)) - &c.jy);
            put("EEB.cont", &(&d(&c.rho, T) + &d(&c.jx, X)) + &d(&c.jy, Y));
            put("BBE1", &d(&c.bx, X) + &d(&c.by, Y));
            put("BBE2", &d(&c.bx, T) + &d(&c.ez, Y));
            put("BBE3", &d(&c.by, T) - &d(&c.ez, X));
            put(
                "BBE4",
                &(&(&(-d(&c.ez, T)) + &d(&c.by, X)) - &d(&c.bx, Y)) - &c.jz,
            );
        }
        Mode::Double => {
            put("E1", &d(&c.ex, X) - &c.rho);
            put("E2", &(-d(&c.ex, T)) - &c.jx);
            put("E.cont", &d(&c.rho, T) + &d(&c.jx, X));
            put("EB1", &d(&c.bz, T) + &d(&c.ey, X));
            put("EB2", &(&(-d(&c.ey, T)) - &d(&c.bz, X)) - &c.jy);
            put("BE1", &d(&c.by, T) - &d(&c.ez, X));
            put("BE2", &(&(-d(&c.ez, T)) + &d(&c.by, X)) - &c.jz);
            put("B1", d(&c.bx, X));
            put("B2", d(&c.bx, T));
        }
    }
    Ok(out)
}

/// Componentwise value and the matching signed coefficient of the intrinsic residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckRow {
    pub id: &'static str,
    pub componentwise: Poly,
    pub intrinsic: Poly,
}

impl CrosscheckRow {
    pub fn agrees(&self) -> bool {
        self.componentwise == self.intrinsic
    }
}

/// Pairs every componentwise equation with its catalogued intrinsic coefficient.
pub fn crosscheck_rows(
    c: &EMConfig,
    g: &Metric,
    mode: Mode,
) -> Result<Vec<CrosscheckRow>, MaxwellError> {
    let scalars = componentwise_crosscheck(c, g, mode)?;
    let report = standard_split(c, g, mode)?;
    Ok(catalogue(mode)
        .iter()
        .map(|entry| {
            let coef = report
                .residual(entry.residual)
                .coefficient(basis(entry.basis));
            let intrinsic = if entry.sign > 0 { coef } else { -coef };
            CrosscheckRow {
                id: entry.id,
                componentwise: scalars[entry.id].clone(),
                intrinsic,
            }
        })
        .collect())
}

/// Split along `z` (single) or `y, z` (double) coordinate pairs.
pub fn standard_split(c: &EMConfig, g: &Metric, mode: Mode) -> Result<SectorReport, MaxwellError> {
    let z_pair = DescentPair::coordinate(DIM, Z);
    match mode {
        Mode::Single => split_single(c, g, &z_pair),
        Mode::Double => split_double(c, g, &DescentPair::coordinate(DIM, Y), &z_pair),
    }
}

/// Result of reassembling the four-dimensional residuals from the sector residuals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    /// `dF` equals the recomposition of the sector Faraday residuals.
    pub faraday_recomposes: bool,
    /// `dG − J` equals the recomposition of the sector Ampère residuals.
    pub ampere_recomposes: bool,
    /// The nonzero coefficients of `{dF, dG − J}` and of the sector residuals
    /// agree as multisets up to sign.
    pub coefficients_match: bool,
    /// The Hodge (constitutive) residuals vanish identically.
    pub constitutive_vanishes: bool,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.faraday_recomposes
            && self.ampere_recomposes
            && self.coefficients_match
            && self.constitutive_vanishes
    }
}

fn signed_coefficients<'a>(forms: impl IntoIterator<Item = &'a Form>) -> Vec<Poly> {
    let mut out: Vec<Poly> = forms
        .into_iter()
        .flat_map(|f| f.terms().map(|(_, p)| p.up_to_sign()).collect::<Vec<_>>())
        .collect();
    out.sort_by_key(|p| p.to_string());
    out
}

/// Checks that the sector splitting neither loses nor invents equations.
pub fn equivalence(c: &EMConfig, g: &Metric, mode: Mode) -> Result<Equivalence, MaxwellError> {
    let full = residuals(c, g)?;
    let report = standard_split(c, g, mode)?;
    let r = |id: &str| report.residual(id).clone();
    let dz = Form::dx(DIM, Z);
    let dy = Form::dx(DIM, Y);
    let w = |a: &Form, b: &Form| wedge(a, b).expect("same dimension");

    let (faraday, ampere, sector_faraday, sector_ampere) = match mode {
        Mode::Single => {
            let faraday = &r("EEB.faraday") - &w(&dz, &r("BBE.faraday"));
            let ampere = &r("BBE.ampere") - &w(&dz, &r("EEB.ampere"));
            (
                faraday,
                ampere,
                vec![r("EEB.faraday"), r("BBE.faraday")],
                vec![r("EEB.ampere"), r("BBE.ampere")],
            )
        }
        Mode::Double => {
            let dydz = w(&dy, &dz);
            let mut faraday = r("sector.Ex.faraday");
            faraday = &faraday - &w(&dy, &r("sector.EyBz.faraday"));
            faraday = &faraday - &w(&dz, &r("sector.ByEz.faraday"));
            faraday = &faraday + &w(&dydz, &r("sector.Bx.faraday"));
            let mut ampere = r("sector.Bx.ampere");
            ampere = &ampere + &w(&dy, &r("sector.ByEz.ampere"));
            ampere = &ampere - &w(&dz, &r("sector.EyBz.ampere"));
            ampere = &ampere + &w(&dydz, &r("sector.Ex.ampere"));
            let sectors = ["Ex", "EyBz", "ByEz", "Bx"];
            (
                faraday,
                ampere,
                sectors
                    .iter()
                    .map(|s| r(&format!("sector.{s}.faraday")))
                    .collect(),
                sectors
                    .iter()
                    .map(|s| r(&format!("sector.{s}.ampere")))
                    .collect(),
            )
        }
    };
    let constitutive_vanishes = report
        .residuals
        .iter()
        .filter(|(k, _)| k.ends_with(".constitutive"))
        .all(|(_, v)| v.is_zero());
    let lhs = signed_coefficients([&full.faraday, &full.ampere]);
    let rhs = signed_coefficients(sector_faraday.iter().chain(&sector_ampere));
    Ok(Equivalence {
        faraday_recomposes: faraday == full.faraday,
        ampere_recomposes: ampere == full.ampere,
        coefficients_match: lhs == rhs,
        constitutive_vanishes,
    })
}

/// Random configuration whose components depend only on the listed axes.
pub fn random_config(rng: &mut impl rand::Rng, axes: &[usize], max_degree: u32) -> EMConfig {
    let mut c = EMConfig::zero();
    for name in COMPONENT_NAMES {
        let p = crate::random::poly_in(rng, DIM, axes, max_degree, 3);
        *c.component_mut(name).expect("known") = p;
    }
    c
}
