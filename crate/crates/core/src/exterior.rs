//! The exterior algebra of polynomial differential forms on flat space.
//!
//! Forms are expanded in the constant coordinate coframe `dx^0, ..., dx^{m-1}`
//! with [`Poly`] coefficients. The frame `∂_0, ..., ∂_{m-1}` is orthonormal for
//! a diagonal [`Metric`] with ±1 entries and the volume form is `dx^0 ∧ ... ∧ dx^{m-1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::{coordinate_names, int, Poly, Rational};
use crate::error::{ExteriorError, ParseError};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

/// A basis multi-index `dx^{μ1} ∧ ... ∧ dx^{μp}` with `μ1 < ... < μp`,
/// stored as a bit mask.
///
/// Ordered by degree, then lexicographically on the increasing index tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisIndex(u16);

impl BasisIndex {
    pub const EMPTY: BasisIndex = BasisIndex(0);

    pub fn from_mask(mask: u16) -> Self {
        Self(mask)
    }

    /// Builds the basis index from strictly increasing axes.
    pub fn from_axes(axes: &[usize]) -> Option<Self> {
        if axes.windows(2).any(|w| w[0] >= w[1]) || axes.iter().any(|&a| a >= MAX_DIM) {
            return None;
        }
        Some(Self(axes.iter().fold(0u16, |m, &a| m | (1 << a))))
    }

    pub fn single(axis: usize) -> Self {
        Self(1 << axis)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, axis: usize) -> bool {
        self.0 & (1 << axis) != 0
    }

    pub fn axes(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&a| self.0 & (1 << a) != 0)
    }

    /// Largest axis index plus one (0 for the empty index).
    fn span(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    /// `dx^self ∧ dx^other` as `(sign, index)`, or `None` when they overlap.
    pub fn wedge(self, other: Self) -> Option<(i8, Self)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each pair (a in self, b in other) with a > b needs one transposition
        let mut swaps = 0u32;
        for b in other.axes() {
            swaps += (self.0 >> (b + 1)).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Self(self.0 | other.0)))
    }

    /// Contracts with `∂_axis`: `(sign, remaining index)`, or `None` if the axis is absent.
    pub fn contract(self, axis: usize) -> Option<(i8, Self)> {
        if !self.contains(axis) {
            return None;
        }
        let position = (self.0 & ((1u16 << axis) - 1)).count_ones();
        let sign = if position.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Self(self.0 & !(1 << axis))))
    }

    pub fn render(self, names: &[String]) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        self.axes()
            .map(|a| format!("d{}", names[a]))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for BasisIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.axes().cmp(other.axes()))
    }
}

impl PartialOrd for BasisIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Diagonal metric with ±1 entries, together with its Hodge lookup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    signs: Vec<i8>,
    /// `hodge[I] = (sign, complement)` with `⋆dx^I = sign · dx^complement`.
    hodge: Vec<(i8, BasisIndex)>,
}

impl Metric {
    pub fn new(signs: &[i64]) -> Result<Self, ExteriorError> {
        let dim = signs.len();
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(ExteriorError::UnsupportedDimension(dim));
        }
        let signs = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                other => Err(ExteriorError::BadSignature(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let full = BasisIndex(((1u32 << dim) - 1) as u16);
        let hodge = (0..(1u32 << dim))
            .map(|mask| {
                let index = BasisIndex(mask as u16);
                // ⋆dx^I = i_{(dx^I)^♯} Ω with i_{Y1∧...∧Yp} = i_{Yp} ⋯ i_{Y1}
                let mut sign = 1i8;
                let mut rest = full;
                for axis in index.axes() {
                    sign *= signs[axis];
                    let (s, r) = rest.contract(axis).expect("axis present in volume form");
                    sign *= s;
                    rest = r;
                }
                (sign, rest)
            })
            .collect();
        Ok(Self { signs, hodge })
    }

    /// Minkowski metric `diag(+1, -1, -1, -1)` on `(t, x, y, z)`.
    pub fn lorentzian() -> Self {
        Self::new(&[1, -1, -1, -1]).expect("valid signature")
    }

    pub fn euclidean(dim: usize) -> Result<Self, ExteriorError> {
        Self::new(&vec![1; dim])
    }

    /// Builds the metric whose negative entries are the set bits of `mask`.
    pub fn from_negative_mask(dim: usize, mask: u32) -> Result<Self, ExteriorError> {
        let signs: Vec<i64> = (0..dim)
            .map(|a| if mask & (1 << a) != 0 { -1 } else { 1 })
            .collect();
        Self::new(&signs)
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, axis: usize) -> i8 {
        self.signs[axis]
    }

    /// Negative index of inertia.
    pub fn negative_index(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn is_lorentzian(&self) -> bool {
        self.signs == [1, -1, -1, -1]
    }

    pub fn volume(&self) -> Form {
        let full = BasisIndex(((1u32 << self.dim()) - 1) as u16);
        Form::basis(self.dim(), full)
    }

    pub fn hodge_of_basis(&self, index: BasisIndex) -> (i8, BasisIndex) {
        self.hodge[index.mask() as usize]
    }

    /// `g(X, Y)` for constant vectors.
    pub fn inner(&self, a: &FrameVector, b: &FrameVector) -> Rational {
        assert_eq!(a.dim(), self.dim());
        assert_eq!(b.dim(), self.dim());
        let mut sum = Rational::zero();
        for (axis, (x, y)) in a.components.iter().zip(&b.components).enumerate() {
            let term = x * y;
            if self.signs[axis] > 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: String = self
            .signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect();
        write!(f, "({signs})")
    }
}

/// Constant-coefficient vector `c^μ ∂_μ`.
///
/// The same representation is used for constant 1-forms `ξ_μ dx^μ`; see
/// [`FrameVector::as_one_form`] and [`flat`]/[`sharp`] for the metric conversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrameVector {
    components: Vec<Rational>,
}

/// Constant 1-form, stored by its components `ξ_μ`.
pub type Covector = FrameVector;

impl FrameVector {
    pub fn new(components: Vec<Rational>) -> Self {
        Self { components }
    }

    pub fn from_ints(components: &[i64]) -> Self {
        Self::new(components.iter().map(|&c| int(c)).collect())
    }

    /// Coordinate vector `∂_axis` (or coordinate covector `dx^axis`).
    pub fn axis(dim: usize, axis: usize) -> Self {
        let mut components = vec![Rational::zero(); dim];
        components[axis] = Rational::one();
        Self { components }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.components
    }

    pub fn component(&self, axis: usize) -> &Rational {
        &self.components[axis]
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(f.dim(), self.dim());
        let mut out = Poly::zero(f.dim());
        for (axis, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &f.partial(axis).expect("axis in range").scale(c);
            }
        }
        out
    }

    /// Pairing `ξ(X)` of this covector with a vector.
    pub fn pair(&self, vector: &FrameVector) -> Rational {
        assert_eq!(self.dim(), vector.dim());
        self.components
            .iter()
            .zip(&vector.components)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.components.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// The covector view: `ξ_μ dx^μ` as a [`Form`].
    pub fn as_one_form(&self) -> Form {
        let dim = self.dim();
        let mut f = Form::zero(dim);
        for (axis, c) in self.components.iter().enumerate() {
            f.add_term(BasisIndex::single(axis), Poly::constant(dim, c.clone()));
        }
        f
    }

    /// Reads a constant 1-form back into its components.
    pub fn from_one_form(w: &Form) -> Result<Self, ExteriorError> {
        let mut components = vec![Rational::zero(); w.dim()];
        for (index, coef) in w.terms() {
            if index.degree() != 1 {
                return Err(ExteriorError::NotConstantOneForm);
            }
            let c = coef
                .as_constant()
                .ok_or(ExteriorError::NotConstantOneForm)?;
            components[index.axes().next().unwrap()] = c;
        }
        Ok(Self { components })
    }
}

/// Mixed-degree differential form with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<BasisIndex, Poly>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(f: Poly) -> Self {
        let mut w = Self::zero(f.dim());
        w.add_term(BasisIndex::EMPTY, f);
        w
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(Poly::one(dim))
    }

    pub fn basis(dim: usize, index: BasisIndex) -> Self {
        Self::term(index, Poly::one(dim))
    }

    /// `dx^axis`.
    pub fn dx(dim: usize, axis: usize) -> Self {
        Self::basis(dim, BasisIndex::single(axis))
    }

    pub fn term(index: BasisIndex, coef: Poly) -> Self {
        let mut w = Self::zero(coef.dim());
        w.add_term(index, coef);
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: BasisIndex) -> Poly {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    /// Accumulates `coef · dx^index`.
    pub fn add_term(&mut self, index: BasisIndex, coef: Poly) {
        assert_eq!(coef.dim(), self.dim, "coefficient dimension mismatch");
        assert!(index.span() <= self.dim, "basis index exceeds dimension");
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn add_signed(&mut self, index: BasisIndex, sign: i8, coef: &Poly) {
        if sign > 0 {
            self.add_term(index, coef.clone());
        } else {
            self.add_term(index, -coef);
        }
    }

    /// Degrees present in the form, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|k| k.degree()).collect();
        d.dedup();
        d
    }

    /// The degree if the form is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// The degree-`p` slice.
    pub fn grade(&self, p: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == p)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_poly(&self, f: &Poly) -> Form {
        let mut out = Form::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(*k, v * f);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Form {
        let mut out = Form::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(*k, v.scale(c));
        }
        out
    }

    /// Applies `op` to every coefficient, keeping the basis.
    pub fn map_coefficients(&self, mut op: impl FnMut(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(*k, op(v));
        }
        out
    }

    /// Whether any coefficient depends on coordinate `axis`.
    pub fn depends_on(&self, axis: usize) -> bool {
        self.terms.values().any(|p| p.depends_on(axis))
    }

    /// Whether any basis element contains `dx^axis`.
    pub fn has_factor(&self, axis: usize) -> bool {
        self.terms.keys().any(|k| k.contains(axis))
    }

    fn check_dim(&self, other_dim: usize) -> Result<(), ExteriorError> {
        if self.dim == other_dim {
            Ok(())
        } else {
            Err(ExteriorError::DimensionMismatch {
                left: self.dim,
                right: other_dim,
            })
        }
    }

    /// Canonical text, e.g. `(2*t) dt^dx + (-1) dy^dz`.
    ///
    /// A form with only a degree-0 part renders as the bare polynomial.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        if self.degrees() == [0] {
            return self.terms[&BasisIndex::EMPTY].render(names);
        }
        self.terms
            .iter()
            .map(|(k, v)| {
                if k.degree() == 0 {
                    format!("({})", v.render(names))
                } else {
                    format!("({}) {}", v.render(names), k.render(names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the text produced by [`Form::render`].
    pub fn parse(text: &str, dim: usize) -> Result<Self, ParseError> {
        let names = coordinate_names(dim);
        parse_form(text, &names)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&coordinate_names(self.dim)))
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim, "form dimension mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim, "form dimension mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, -v);
        }
        out
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coefficients(|p| -p)
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

fn parse_form(text: &str, names: &[String]) -> Result<Form, ParseError> {
    let unexpected = |found: &str| ParseError::Unexpected {
        found: found.into(),
        input: text.into(),
    };
    let mut form = Form::zero(names.len());
    let terms = split_terms(text).ok_or_else(|| unexpected("unbalanced parenthesis"))?;
    if terms.is_empty() {
        return Err(unexpected("end of input"));
    }
    for (negate, body) in terms {
        if body.is_empty() {
            return Err(unexpected("empty term"));
        }
        let (mut coef, basis_text) = if let Some(inner) = body.strip_prefix('(') {
            let close =
                matching_paren(inner).ok_or_else(|| unexpected("unbalanced parenthesis"))?;
            (
                Poly::parse_with_names(&inner[..close], names)?,
                inner[close + 1..].trim(),
            )
        } else {
            // a trailing `dx^dy`-style token is the basis, anything before it the coefficient
            match body
                .rsplit_once(char::is_whitespace)
                .map_or(("", body), |(a, b)| (a.trim(), b))
            {
                (prefix, last) if looks_like_basis(last, names) => {
                    let coef = if prefix.is_empty() {
                        Poly::one(names.len())
                    } else {
                        Poly::parse_with_names(prefix.trim_end_matches('*'), names)?
                    };
                    (coef, last)
                }
                _ => (Poly::parse_with_names(body, names)?, ""),
            }
        };
        let (sign, index) = parse_basis(basis_text, names)?;
        if negate != (sign < 0) {
            coef = -coef;
        }
        form.add_term(index, coef);
    }
    Ok(form)
}

/// Splits at top-level `+`/`-`, returning `(negated, term)` pairs.
fn split_terms(text: &str) -> Option<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negate = false;
    let mut dangling = false;
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => {
                depth += 1;
                start.get_or_insert(i);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            '+' | '-' if depth == 0 => {
                if let Some(s) = start.take() {
                    out.push((negate, text[s..i].trim()));
                    negate = false;
                }
                negate ^= c == '-';
                dangling = true;
            }
            c if c.is_whitespace() => {}
            _ => {
                start.get_or_insert(i);
                dangling = false;
            }
        }
    }
    if depth != 0 {
        return None;
    }
    if let Some(s) = start {
        out.push((negate, text[s..].trim()));
    } else if dangling {
        out.push((negate, ""));
    }
    Some(out)
}

fn matching_paren(after_open: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, c) in after_open.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn looks_like_basis(token: &str, names: &[String]) -> bool {
    token.split('^').all(|part| {
        part.strip_prefix('d')
            .is_some_and(|name| names.iter().any(|n| n == name))
    })
}

fn parse_basis(text: &str, names: &[String]) -> Result<(i8, BasisIndex), ParseError> {
    if text.is_empty() || text == "1" {
        return Ok((1, BasisIndex::EMPTY));
    }
    let mut sign = 1i8;
    let mut index = BasisIndex::EMPTY;
    for part in text.split('^') {
        let part = part.trim();
        let name = part
            .strip_prefix('d')
            .ok_or_else(|| ParseError::BadBasis(text.into()))?;
        let axis = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseError::BadBasis(text.into()))?;
        let (s, next) = index
            .wedge(BasisIndex::single(axis))
            .ok_or_else(|| ParseError::BadBasis(text.into()))?;
        sign *= s;
        index = next;
    }
    Ok((sign, index))
}

/// Exterior product.
pub fn wedge(a: &Form, b: &Form) -> Result<Form, ExteriorError> {
    a.check_dim(b.dim)?;
    let mut out = Form::zero(a.dim);
    for (ka, va) in &a.terms {
        for (kb, vb) in &b.terms {
            if let Some((sign, k)) = ka.wedge(*kb) {
                out.add_signed(k, sign, &(va * vb));
            }
        }
    }
    Ok(out)
}

/// Interior product `i_X`, a degree −1 antiderivation.
pub fn interior(x: &FrameVector, w: &Form) -> Result<Form, ExteriorError> {
    w.check_dim(x.dim())?;
    let mut out = Form::zero(w.dim);
    for (k, v) in &w.terms {
        for axis in k.axes() {
            let c = &x.components[axis];
            if c.is_zero() {
                continue;
            }
            let (sign, rest) = k.contract(axis).expect("axis present");
            out.add_signed(rest, sign, &v.scale(c));
        }
    }
    Ok(out)
}

/// Extension `ε_ξ(w) = ξ ∧ w` by a constant 1-form.
pub fn extend(xi: &Covector, w: &Form) -> Result<Form, ExteriorError> {
    w.check_dim(xi.dim())?;
    wedge(&xi.as_one_form(), w)
}

/// Raises the index of a constant 1-form.
pub fn sharp(w: &Form, g: &Metric) -> Result<FrameVector, ExteriorError> {
    w.check_dim(g.dim())?;
    let lowered = FrameVector::from_one_form(w)?;
    Ok(FrameVector::new(
        lowered
            .components
            .iter()
            .enumerate()
            .map(|(a, c)| if g.sign(a) > 0 { c.clone() } else { -c })
            .collect(),
    ))
}

/// Lowers the index of a constant vector, returning a 1-form.
pub fn flat(x: &FrameVector, g: &Metric) -> Form {
    assert_eq!(x.dim(), g.dim());
    let lowered = FrameVector::new(
        x.components
            .iter()
            .enumerate()
            .map(|(a, c)| if g.sign(a) > 0 { c.clone() } else { -c })
            .collect(),
    );
    lowered.as_one_form()
}

/// Exterior derivative `d`.
pub fn exterior_derivative(w: &Form) -> Form {
    let mut out = Form::zero(w.dim);
    for (k, v) in &w.terms {
        for axis in 0..w.dim {
            if k.contains(axis) || !v.depends_on(axis) {
                continue;
            }
            let (sign, index) = BasisIndex::single(axis).wedge(*k).expect("disjoint");
            out.add_signed(index, sign, &v.partial(axis).expect("axis in range"));
        }
    }
    out
}

/// Lie derivative along a constant vector field; acts on coefficients only.
pub fn lie_derivative(x: &FrameVector, w: &Form) -> Form {
    assert_eq!(x.dim(), w.dim, "dimension mismatch");
    w.map_coefficients(|p| x.apply(p))
}

/// Hodge star, computed basis element by basis element from the metric's table.
pub fn hodge(w: &Form, g: &Metric) -> Form {
    assert_eq!(w.dim, g.dim(), "dimension mismatch");
    let mut out = Form::zero(w.dim);
    for (k, v) in &w.terms {
        let (sign, image) = g.hodge_of_basis(*k);
        out.add_signed(image, sign, v);
    }
    out
}

/// Sign `(−1)^{m(p+1)+s+1}` multiplying `⋆d⋆` on degree-`p` forms.
pub fn codifferential_sign(g: &Metric, p: usize) -> i8 {
    let exponent = g.dim() * (p + 1) + g.negative_index() + 1;
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Codifferential `δ = (−1)^{m(p+1)+s+1} ⋆d⋆`, applied per degree.
pub fn codifferential(w: &Form, g: &Metric) -> Form {
    let mut out = Form::zero(w.dim);
    for p in w.degrees() {
        let slice = hodge(&exterior_derivative(&hodge(&w.grade(p), g)), g);
        out = if codifferential_sign(g, p) > 0 {
            &out + &slice
        } else {
            &out - &slice
        };
    }
    out
}

/// Laplace–Beltrami operator `dδ + δd`.
pub fn laplace_beltrami(w: &Form, g: &Metric) -> Form {
    let d_delta = exterior_derivative(&codifferential(w, g));
    let delta_d = codifferential(&exterior_derivative(w), g);
    &d_delta + &delta_d
}

/// Coefficientwise d'Alembert operator `Σ_a g^{aa} ∂_a ∂_a`.
pub fn wave_operator(w: &Form, g: &Metric) -> Form {
    assert_eq!(w.dim, g.dim(), "dimension mismatch");
    w.map_coefficients(|p| wave_scalar(p, g))
}

fn wave_scalar(f: &Poly, g: &Metric) -> Poly {
    let mut out = Poly::zero(f.dim());
    for axis in 0..f.dim() {
        if !f.depends_on(axis) {
            continue;
        }
        let second = f
            .partial(axis)
            .and_then(|p| p.partial(axis))
            .expect("axis in range");
        out = if g.sign(axis) > 0 {
            &out + &second
        } else {
            &out - &second
        };
    }
    out
}

/// Principal symbol of the d'Alembert operator evaluated on `(df, dh)`.
///
/// Computed as `½ [[L, ĥ], f̂](1)` where `L` is the wave operator and `f̂`, `ĥ`
/// are multiplication operators; the result equals `g^{ab} ∂_a f ∂_b h`.
pub fn principal_symbol(g: &Metric, f: &Poly, h: &Poly) -> Poly {
    let dim = g.dim();
    let one = Poly::one(dim);
    let l = |p: &Poly| wave_scalar(p, g);
    // [L, ĥ] u = L(h u) − h L(u)
    let comm_h = |u: &Poly| &l(&(h * u)) - &(h * &l(u));
    // [[L, ĥ], f̂] u = [L, ĥ](f u) − f [L, ĥ](u)
    let nested = &comm_h(&(f * &one)) - &(f * &comm_h(&one));
    nested.scale(&Rational::new(1.into(), 2.into()))
}
