//! Decompositions of the exterior algebra induced by a vector field and a dual 1-form.
//!
//! A [`DescentPair`] `(X, ξ)` with `ξ(X) = 1` gives complementary projectors
//! `P = ε_ξ i_X` and `Q = i_X ε_ξ`. Every form splits as `w = ξ ∧ w₁ + w₀`
//! with `i_X w₀ = i_X w₁ = 0`; the part `w₁` is tagged by a placeholder vector
//! (`e_z` for the pair `(∂_z, dz)`) to mark it as vector-valued.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::{coordinate_names, Rational};
use crate::error::DescentError;
use crate::exterior::{
    extend, flat, hodge, interior, lie_derivative, Covector, Form, FrameVector, Metric,
};

/// Constant vector field together with a constant 1-form contracting to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentPair {
    vector: FrameVector,
    covector: Covector,
    label: String,
}

impl DescentPair {
    /// Validates `ξ(X) = 1`.
    pub fn new(
        vector: FrameVector,
        covector: Covector,
        label: impl Into<String>,
    ) -> Result<Self, DescentError> {
        if vector.dim() != covector.dim() {
            return Err(crate::error::ExteriorError::DimensionMismatch {
                left: vector.dim(),
                right: covector.dim(),
            }
            .into());
        }
        let contraction = covector.pair(&vector);
        if !contraction.is_one() {
            return Err(DescentError::NotDual(contraction.to_string()));
        }
        Ok(Self {
            vector,
            covector,
            label: label.into(),
        })
    }

    /// Pair `(∂_axis, dx^axis)` labelled `e_<coordinate>`.
    pub fn coordinate(dim: usize, axis: usize) -> Self {
        let name = &coordinate_names(dim)[axis];
        Self::new(
            FrameVector::axis(dim, axis),
            FrameVector::axis(dim, axis),
            format!("e_{name}"),
        )
        .expect("coordinate pair is dual")
    }

    /// Pair with `ξ = X^♭ / g(X, X)`.
    pub fn metric(
        vector: FrameVector,
        g: &Metric,
        label: impl Into<String>,
    ) -> Result<Self, DescentError> {
        let norm = g.inner(&vector, &vector);
        if norm.is_zero() {
            return Err(DescentError::NullNorm);
        }
        let lowered = FrameVector::from_one_form(&flat(&vector, g))?;
        let covector = lowered.scale(&(Rational::one() / norm));
        Self::new(vector, covector, label)
    }

    pub fn vector(&self) -> &FrameVector {
        &self.vector
    }

    pub fn covector(&self) -> &Covector {
        &self.covector
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    /// `g(X, X)` if `ξ = X^♭ / g(X, X)`, otherwise an error.
    pub fn metric_norm(&self, g: &Metric) -> Result<Rational, DescentError> {
        let norm = g.inner(&self.vector, &self.vector);
        if norm.is_zero() {
            return Err(DescentError::NullNorm);
        }
        let expected =
            FrameVector::from_one_form(&flat(&self.vector, g))?.scale(&(Rational::one() / &norm));
        if expected == self.covector {
            Ok(norm)
        } else {
            Err(DescentError::NotMetric)
        }
    }

    pub fn contract(&self, w: &Form) -> Result<Form, DescentError> {
        Ok(interior(&self.vector, w)?)
    }

    pub fn extend(&self, w: &Form) -> Result<Form, DescentError> {
        Ok(extend(&self.covector, w)?)
    }
}

/// `P = ε_ξ i_X`.
pub fn proj_p(pair: &DescentPair, w: &Form) -> Result<Form, DescentError> {
    pair.extend(&pair.contract(w)?)
}

/// `Q = i_X ε_ξ`.
pub fn proj_q(pair: &DescentPair, w: &Form) -> Result<Form, DescentError> {
    pair.contract(&pair.extend(w)?)
}

/// Whether `L_X w = 0`.
pub fn is_invariant(x: &FrameVector, w: &Form) -> bool {
    lie_derivative(x, w).is_zero()
}

/// `w = ξ ∧ vector_part + scalar_part`, both parts annihilated by `i_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleDecomposition {
    pub scalar_part: Form,
    pub vector_part: Form,
    pub pair: DescentPair,
}

impl SingleDecomposition {
    pub fn recompose(&self) -> Form {
        let lifted = self.pair.extend(&self.vector_part).expect("same dimension");
        &lifted + &self.scalar_part
    }

    pub fn tags(&self) -> [(&'static str, String); 2] {
        [("(0)", "1".to_string()), ("(1)", self.pair.label.clone())]
    }

    pub fn record(&self) -> DecompositionRecord {
        let names = coordinate_names(self.pair.dim());
        let mut components = BTreeMap::new();
        components.insert("(0)".to_string(), self.scalar_part.render(&names));
        components.insert("(1)".to_string(), self.vector_part.render(&names));
        DecompositionRecord {
            mode: "single".into(),
            components,
            tags: self
                .tags()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

/// Serializable view of a decomposition: component text and tag per slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionRecord {
    pub mode: String,
    pub components: BTreeMap<String, String>,
    pub tags: BTreeMap<String, String>,
}

pub fn decompose_single(pair: &DescentPair, w: &Form) -> Result<SingleDecomposition, DescentError> {
    let vector_part = pair.contract(w)?;
    let scalar_part = proj_q(pair, w)?;
    Ok(SingleDecomposition {
        scalar_part,
        vector_part,
        pair: pair.clone(),
    })
}

/// Four-way split `w = w₀₀ + ξ^Y∧w₁₀ + ξ^Z∧w₀₁ + ξ^Y∧ξ^Z∧w₁₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleDecomposition {
    /// `parts[r][s]` is `w_(r,s)`: `r` counts the `ξ^Y` factor, `s` the `ξ^Z` factor.
    pub parts: [[Form; 2]; 2],
    pub pair_y: DescentPair,
    pub pair_z: DescentPair,
}

pub const DOUBLE_SLOTS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

impl DoubleDecomposition {
    pub fn part(&self, r: usize, s: usize) -> &Form {
        &self.parts[r][s]
    }

    pub fn recompose(&self) -> Form {
        let y = &self.pair_y;
        let z = &self.pair_z;
        let e = |pair: &DescentPair, w: &Form| pair.extend(w).expect("same dimension");
        let mut out = self.parts[0][0].clone();
        out = &out + &e(y, &self.parts[1][0]);
        out = &out + &e(z, &self.parts[0][1]);
        out = &out + &e(y, &e(z, &self.parts[1][1]));
        out
    }

    pub fn tag(&self, r: usize, s: usize) -> String {
        match (r, s) {
            (0, 0) => "1".to_string(),
            (1, 0) => self.pair_y.label.clone(),
            (0, 1) => self.pair_z.label.clone(),
            _ => format!("{}^{}", self.pair_y.label, self.pair_z.label),
        }
    }

    pub fn record(&self) -> DecompositionRecord {
        let names = coordinate_names(self.pair_y.dim());
        let mut components = BTreeMap::new();
        let mut tags = BTreeMap::new();
        for (r, s) in DOUBLE_SLOTS {
            let key = format!("({r},{s})");
            components.insert(key.clone(), self.parts[r][s].render(&names));
            tags.insert(key, self.tag(r, s));
        }
        DecompositionRecord {
            mode: "double".into(),
            components,
            tags,
        }
    }
}

fn check_biorthogonal(pair_y: &DescentPair, pair_z: &DescentPair) -> Result<(), DescentError> {
    if pair_y.dim() != pair_z.dim() {
        return Err(crate::error::ExteriorError::DimensionMismatch {
            left: pair_y.dim(),
            right: pair_z.dim(),
        }
        .into());
    }
    let yz = pair_y.covector.pair(&pair_z.vector);
    let zy = pair_z.covector.pair(&pair_y.vector);
    if yz.is_zero() && zy.is_zero() {
        Ok(())
    } else {
        Err(DescentError::NotBiorthogonal)
    }
}

pub fn decompose_double(
    pair_y: &DescentPair,
    pair_z: &DescentPair,
    w: &Form,
) -> Result<DoubleDecomposition, DescentError> {
    check_biorthogonal(pair_y, pair_z)?;
    let iy_iz = |v: &Form| -> Result<Form, DescentError> { pair_y.contract(&pair_z.contract(v)?) };
    let p00 = -iy_iz(&pair_y.extend(&pair_z.extend(w)?)?)?;
    let p01 = -iy_iz(&pair_y.extend(w)?)?;
    let p10 = iy_iz(&pair_z.extend(w)?)?;
    let p11 = -iy_iz(w)?;
    Ok(DoubleDecomposition {
        parts: [[p00, p01], [p10, p11]],
        pair_y: pair_y.clone(),
        pair_z: pair_z.clone(),
    })
}

fn sign_power(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Components of `⋆w` from the components of `w`, for homogeneous `w`.
///
/// `(⋆w)₁ = i_X ⋆w₀` and `(⋆w)₀ = (−1)^{p−1} g(X,X)^{−1} i_X ⋆w₁`; the Hodge star
/// exchanges the two summands.
pub fn hodge_components(
    pair: &DescentPair,
    w: &Form,
    g: &Metric,
) -> Result<SingleDecomposition, DescentError> {
    let norm = pair.metric_norm(g)?;
    let p = homogeneous_degree(w)?;
    let parts = decompose_single(pair, w)?;
    let vector_part = pair.contract(&hodge(&parts.scalar_part, g))?;
    let factor = if p == 0 {
        Rational::zero()
    } else {
        sign_power(p - 1) / norm
    };
    let scalar_part = pair.contract(&hodge(&parts.vector_part, g))?.scale(&factor);
    Ok(SingleDecomposition {
        scalar_part,
        vector_part,
        pair: pair.clone(),
    })
}

/// Components of `⋆w` in the four-way split, for homogeneous `w` of degree `p`:
///
/// - `(⋆w)₁₁ = i_Z i_Y ⋆w₀₀`
/// - `(⋆w)₀₁ = (−1)^{p−1} g(Y,Y)^{−1} i_Z i_Y ⋆w₁₀`
/// - `(⋆w)₁₀ = (−1)^p g(Z,Z)^{−1} i_Z i_Y ⋆w₀₁`
/// - `(⋆w)₀₀ = (g(Y,Y) g(Z,Z))^{−1} i_Z i_Y ⋆w₁₁`
pub fn hodge_components_double(
    pair_y: &DescentPair,
    pair_z: &DescentPair,
    w: &Form,
    g: &Metric,
) -> Result<DoubleDecomposition, DescentError> {
    let norm_y = pair_y.metric_norm(g)?;
    let norm_z = pair_z.metric_norm(g)?;
    let p = homogeneous_degree(w)?;
    let parts = decompose_double(pair_y, pair_z, w)?;
    let iyz_star = |v: &Form| -> Result<Form, DescentError> {
        pair_z.contract(&pair_y.contract(&hodge(v, g))?)
    };
    let one = Rational::one();
    let c11 = one.clone();
    let c01 = if p == 0 {
        Rational::zero()
    } else {
        sign_power(p - 1) / &norm_y
    };
    let c10 = sign_power(p) / &norm_z;
    let c00 = &one / (&norm_y * &norm_z);
    let n11 = iyz_star(&parts.parts[0][0])?.scale(&c11);
    let n01 = iyz_star(&parts.parts[1][0])?.scale(&c01);
    let n10 = iyz_star(&parts.parts[0][1])?.scale(&c10);
    let n00 = iyz_star(&parts.parts[1][1])?.scale(&c00);
    Ok(DoubleDecomposition {
        parts: [[n00, n01], [n10, n11]],
        pair_y: pair_y.clone(),
        pair_z: pair_z.clone(),
    })
}

fn homogeneous_degree(w: &Form) -> Result<usize, DescentError> {
    if w.is_zero() {
        return Ok(0);
    }
    w.homogeneous_degree().ok_or(DescentError::NotHomogeneous)
}

/// Outcome of checking the projector commutator formula on a set of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    /// `[P_i, P_j] w` for each test form.
    pub commutators: Vec<Form>,
    /// `[P_i, P_j] w − (ξ^j(X_i) ε_{ξ^i} i_{X_j} − ξ^i(X_j) ε_{ξ^j} i_{X_i}) w`.
    pub residuals: Vec<Form>,
    pub xi_j_of_x_i: Rational,
    pub xi_i_of_x_j: Rational,
}

impl CommutatorReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(Form::is_zero)
    }

    pub fn projectors_commute(&self) -> bool {
        self.commutators.iter().all(Form::is_zero)
    }
}

pub fn projector_commutator(
    pair_i: &DescentPair,
    pair_j: &DescentPair,
    forms: &[Form],
) -> Result<CommutatorReport, DescentError> {
    let a = pair_j.covector.pair(&pair_i.vector);
    let b = pair_i.covector.pair(&pair_j.vector);
    let mut commutators = Vec::with_capacity(forms.len());
    let mut residuals = Vec::with_capacity(forms.len());
    for w in forms {
        let pij = proj_p(pair_i, &proj_p(pair_j, w)?)?;
        let pji = proj_p(pair_j, &proj_p(pair_i, w)?)?;
        let comm = &pij - &pji;
        let first = pair_i.extend(&pair_j.contract(w)?)?.scale(&a);
        let second = pair_j.extend(&pair_i.contract(w)?)?.scale(&b);
        let expected = &first - &second;
        residuals.push(&comm - &expected);
        commutators.push(comm);
    }
    Ok(CommutatorReport {
        commutators,
        residuals,
        xi_j_of_x_i: a,
        xi_i_of_x_j: b,
    })
}
