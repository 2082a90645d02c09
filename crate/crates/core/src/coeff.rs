//! Exact multivariate polynomials over the rationals.
//!
//! [`Poly`] is the coefficient ring of every differential form in this crate.
//! Coefficients are arbitrary-precision rationals, so identities can be checked
//! by plain equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CoeffError, ParseError};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Names of the coordinates for an ambient dimension.
///
/// Dimensions up to four use a prefix of `t, x, y, z`; larger dimensions use
/// `x0, x1, ...`.
pub fn coordinate_names(dim: usize) -> Vec<String> {
    const SPACETIME: [&str; 4] = ["t", "x", "y", "z"];
    if dim <= SPACETIME.len() {
        SPACETIME[..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (0..dim).map(|i| format!("x{i}")).collect()
    }
}

/// Exponent vector of a monomial, one entry per coordinate.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared coordinate by coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Self {
            exponents: vec![0; dim],
        }
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        let mut m = Self::one(dim);
        m.exponents[axis] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `dim` coordinates with exact rational coefficients.
///
/// No zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        p.insert(Monomial::one(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The coordinate function `x^axis`.
    pub fn var(dim: usize, axis: usize) -> Self {
        assert!(axis < dim, "axis {axis} out of range for dimension {dim}");
        let mut p = Self::zero(dim);
        p.insert(Monomial::var(dim, axis), Rational::one());
        p
    }

    /// Single term `c * m`.
    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.dim());
        p.insert(m, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Self::zero(dim);
        for (c, e) in terms {
            assert_eq!(e.len(), dim, "exponent vector has wrong length");
            p.insert(Monomial::new(e), c);
        }
        p
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Returns the constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), CoeffError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(CoeffError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Exact partial derivative along coordinate `axis`.
    pub fn partial(&self, axis: usize) -> Result<Self, CoeffError> {
        if axis >= self.dim {
            return Err(CoeffError::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exponents[axis];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents[axis] = e - 1;
            out.insert(dm, c * int(e as i64));
        }
        Ok(out)
    }

    /// Whether any term has a positive power of coordinate `axis`.
    ///
    /// Out-of-range axes are reported as `false`.
    pub fn depends_on(&self, axis: usize) -> bool {
        axis < self.dim && self.terms.keys().any(|m| m.exponents[axis] > 0)
    }

    /// Floating-point evaluation at `point` (length `dim`).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim);
        self.terms
            .iter()
            .map(|(m, c)| {
                let value = c.to_f64().unwrap_or(f64::NAN);
                m.exponents
                    .iter()
                    .zip(point)
                    .fold(value, |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (&e, x) in m.exponents.iter().zip(point) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        total
    }

    /// Canonical sign representative: `self` or `-self`, whichever has a
    /// positive leading coefficient (in graded-lex order).
    pub fn up_to_sign(&self) -> Self {
        match self.terms.values().next_back() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Renders the polynomial with explicit coordinate names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the textual syntax produced by [`Poly::render`] (and `Display`).
    ///
    /// Terms look like `coef * t^a x^b`, with optional `*` between factors and
    /// rationals written `p/q`.
    pub fn parse(text: &str, dim: usize) -> Result<Self, ParseError> {
        let names = coordinate_names(dim);
        Self::parse_with_names(text, &names)
    }

    pub fn parse_with_names(text: &str, names: &[String]) -> Result<Self, ParseError> {
        let tokens = lex(text)?;
        let mut parser = PolyParser {
            tokens: &tokens,
            pos: 0,
            names,
        };
        let p = parser.poly()?;
        if parser.pos != tokens.len() {
            return Err(ParseError::Unexpected {
                found: tokens[parser.pos].describe(),
                input: text.to_string(),
            });
        }
        Ok(p)
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (axis, &e) in m.exponents.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[axis].clone()),
            _ => parts.push(format!("{}^{}", names[axis], e)),
        }
    }
    parts.join(" ")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&coordinate_names(self.dim)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => n.to_string(),
            Token::Ident(s) => s.clone(),
            Token::Plus => "+".into(),
            Token::Minus => "-".into(),
            Token::Star => "*".into(),
            Token::Slash => "/".into(),
            Token::Caret => "^".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                tokens.push(Token::Number(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(ParseError::BadCharacter {
                    ch: other,
                    input: text.to_string(),
                })
            }
        }
    }
    Ok(tokens)
}

struct PolyParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    names: &'a [String],
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn input(&self) -> String {
        self.tokens
            .iter()
            .map(Token::describe)
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let dim = self.names.len();
        let mut total = Poly::zero(dim);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            total = if sign < 0 { &total - &t } else { &total + &t };
            match self.peek() {
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                _ => break,
            }
            self.pos += 1;
            // tolerate "a + -b"
            if let Some(Token::Minus) = self.peek() {
                self.pos += 1;
                sign = -sign;
            }
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let dim = self.names.len();
        let mut coef = Rational::one();
        let mut mono = Monomial::one(dim);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(Token::Number(_)) => {
                    coef *= self.number()?;
                }
                Some(Token::Ident(name)) => {
                    let axis = self.names.iter().position(|n| n == name).ok_or_else(|| {
                        ParseError::UnknownVariable {
                            name: name.clone(),
                            known: self.names.join(", "),
                        }
                    })?;
                    self.pos += 1;
                    let mut e = 1u32;
                    if let Some(Token::Caret) = self.peek() {
                        self.pos += 1;
                        match self.peek() {
                            Some(Token::Number(n)) => {
                                e = n.to_u32().ok_or_else(|| ParseError::Unexpected {
                                    found: n.to_string(),
                                    input: self.input(),
                                })?;
                                self.pos += 1;
                            }
                            other => {
                                return Err(ParseError::Unexpected {
                                    found: other.map_or("end of input".into(), Token::describe),
                                    input: self.input(),
                                })
                            }
                        }
                    }
                    mono.exponents[axis] += e;
                }
                other => {
                    if factors == 0 {
                        return Err(ParseError::Unexpected {
                            found: other.map_or("end of input".into(), Token::describe),
                            input: self.input(),
                        });
                    }
                    break;
                }
            }
            factors += 1;
            if let Some(Token::Star) = self.peek() {
                self.pos += 1;
                match self.peek() {
                    Some(Token::Number(_)) | Some(Token::Ident(_)) => {}
                    other => {
                        return Err(ParseError::Unexpected {
                            found: other.map_or("end of input".into(), Token::describe),
                            input: self.input(),
                        })
                    }
                }
            }
        }
        Ok(Poly::term(coef, mono))
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let num = match self.peek() {
            Some(Token::Number(n)) => n.clone(),
            _ => unreachable!(),
        };
        self.pos += 1;
        if let Some(Token::Slash) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Token::Number(d)) if !d.is_zero() => {
                    let d = d.clone();
                    self.pos += 1;
                    return Ok(Rational::new(num, d));
                }
                Some(Token::Number(_)) => return Err(ParseError::ZeroDenominator),
                other => {
                    return Err(ParseError::Unexpected {
                        found: other.map_or("end of input".into(), Token::describe),
                        input: self.input(),
                    })
                }
            }
        }
        Ok(Rational::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 4).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((p("t") + p("-t")).is_zero());
        assert_eq!(p("x^2") + p("x^2"), p("2*x^2"));
        assert_eq!(p("t + x") + p("x"), p("t + 2*x"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("t") * p("x"), p("t x"));
        assert_eq!(p("t - x") * p("t + x"), p("t^2 - x^2"));
        assert!((Poly::zero(4) * p("t^3 + 7")).is_zero());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("t^2").partial(0).unwrap(), p("2*t"));
        assert!(p("t + x").partial(3).unwrap().is_zero());
        assert_eq!(p("t x y").partial(1).unwrap(), p("t y"));
    }

    #[test]
    fn partial_out_of_range() {
        assert_eq!(
            p("t").partial(4),
            Err(CoeffError::AxisOutOfRange { axis: 4, dim: 4 })
        );
    }

    #[test]
    fn depends_on_examples() {
        assert!(!p("t - x").depends_on(3));
        assert!(p("z").depends_on(3));
        assert!(!Poly::zero(4).depends_on(2));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Poly::var(3, 0);
        let b = Poly::var(4, 0);
        assert_eq!(
            a.try_add(&b),
            Err(CoeffError::DimensionMismatch { left: 3, right: 4 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn rendering_is_graded_lex_descending() {
        assert_eq!(p("1 + x + t^2 - 3/2*t").to_string(), "t^2 - 3/2*t + x + 1");
        assert_eq!(p("-y z").to_string(), "-y z");
        assert_eq!(Poly::zero(4).to_string(), "0");
    }

    #[test]
    fn parse_accepts_juxtaposition_and_stars() {
        assert_eq!(p("2t"), p("2*t"));
        assert_eq!(p("2 * t^2 * x"), p("2t^2 x"));
        assert_eq!(p("t + -x"), p("t - x"));
        assert_eq!(p("6/4 t"), p("3/2*t"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Poly::parse("w", 4),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            Poly::parse("1/0", 4),
            Err(ParseError::ZeroDenominator)
        ));
        assert!(Poly::parse("t +", 4).is_err());
        assert!(Poly::parse("t $", 4).is_err());
        assert!(Poly::parse("", 4).is_err());
    }

    #[test]
    fn eval_matches_exact() {
        let q = p("t^2 - 1/2*x y + 3");
        let exact = q.eval(&[int(2), int(1), int(4), int(0)]);
        assert_eq!(exact, int(5));
        assert_eq!(q.eval_f64(&[2.0, 1.0, 4.0, 0.0]), 5.0);
    }

    #[test]
    fn higher_dimensions_use_indexed_names() {
        let q = Poly::parse("x0 x4^2", 5).unwrap();
        assert_eq!(q.to_string(), "x0 x4^2");
    }
}
