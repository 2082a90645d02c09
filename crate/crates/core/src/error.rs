use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} in {input:?}")]
    BadCharacter { ch: char, input: String },
    #[error("unexpected {found:?} in {input:?}")]
    Unexpected { found: String, input: String },
    #[error("unknown variable {name:?} (known: {known})")]
    UnknownVariable { name: String, known: String },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("bad basis element {0:?}")]
    BadBasis(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unsupported dimension {0} (expected 2..=8)")]
    UnsupportedDimension(usize),
    #[error("metric entries must be +1 or -1, got {0}")]
    BadSignature(i64),
    #[error("expected a 1-form with constant coefficients")]
    NotConstantOneForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("invalid descent pair: xi(X) = {0}, expected 1")]
    NotDual(String),
    #[error("vector field has null norm g(X, X) = 0")]
    NullNorm,
    #[error("pair is not metric: xi must equal X^flat / g(X, X)")]
    NotMetric,
    #[error("pairs are not biorthogonal: xi_i(X_j) must vanish for i != j")]
    NotBiorthogonal,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxwellError {
    #[error("field configurations live in four dimensions, got {0}")]
    WrongDimension(usize),
    #[error("vacuum constitutive relation needs a Lorentzian metric (+,-,-,-)")]
    NotLorentzian,
    #[error("descent condition violated: {component} depends on {axis}")]
    DescentViolated { component: String, axis: String },
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FdtdError {
    #[error("Courant condition violated: dt = {dt} exceeds dx / sqrt(3) = {limit}")]
    Courant { dt: f64, limit: f64 },
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("grid spacing must be positive and finite")]
    BadSpacing,
}
