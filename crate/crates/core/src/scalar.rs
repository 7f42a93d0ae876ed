//! Braiding matrices and the symbolic scalars attached to wires.
//!
//! A [`QMatrix`] stores the `n x n` table of nonzero scalars defining a
//! diagonal braiding. Three backings are supported:
//!
//! - `rational`: exact arbitrary-precision rationals,
//! - `cyclotomic(order)`: each entry is `w^k` for a fixed primitive
//!   root of unity `w`, stored as the exponent class `k` modulo `order`,
//! - `graded(order)`: the cyclotomic matrix `entry(s,t) = g_s * g_t mod
//!   order` induced by an integer grading `g`.
//!
//! Diagram evaluation never multiplies numbers directly. It accumulates a
//! [`CoeffMonomial`] — a sparse exponent table over ordered generator
//! pairs, i.e. a formal product `prod q(a,b)^e` — and only
//! [`QMatrix::eval`] turns that into a number. Keeping the exponent
//! vector exact is what lets the cipher test `d_i = 1` with no rounding.
//!
//! # Text format
//!
//! ```text
//! qmatrix v1
//! n <generators>
//! mode rational | mode cyclotomic <order> | mode graded <order>
//! grading g1 .. gn            # graded mode only
//! row <i> e1 .. en            # rational / cyclotomic modes, n rows
//! ```
//!
//! Rational entries are written `p/q` (or a bare integer); cyclotomic
//! entries are exponent classes. `#` comments and blank lines are
//! allowed anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::textfmt::{expect_header, meaningful_lines, parse_field, ParseError};

/// A generator index. Indices are 1-based throughout, matching the
/// `v_1 .. v_n` basis convention.
pub type Gen = u32;

/// A word of generator indices, possibly empty, repetitions allowed.
pub type Word = Vec<Gen>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("generator pair ({0}, {1}) out of range for n = {2}", pair.0, pair.1, n)]
    IndexOutOfRange { pair: (Gen, Gen), n: u32 },
    #[error("expected a {expected} matrix, found {found}")]
    ModeMismatch { expected: &'static str, found: &'static str },
    #[error("entry ({row}, {col}) is zero; braiding entries must be nonzero")]
    ZeroEntry { row: u32, col: u32 },
    #[error("matrix is {rows} rows of widths {widths:?}, expected {n} x {n}")]
    BadShape { n: u32, rows: usize, widths: Vec<usize> },
    #[error("grading has {found} entries, expected {n}")]
    BadGrading { n: u32, found: usize },
    #[error("order must be at least 1")]
    BadOrder,
    #[error("monomial exponent {0} too large to evaluate")]
    ExponentOverflow(i64),
    #[error("cannot multiply {0} with {1}")]
    IncompatibleScalars(String, String),
}

/// How a symbolic coefficient should be realized numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumericMode {
    /// Exact: a rational number or a root-of-unity class, depending on
    /// the matrix backing.
    #[default]
    Exact,
    /// Double-precision: a real for rational matrices, a point on the
    /// unit circle for cyclotomic ones.
    Float,
}

// ---------------------------------------------------------------------------
// CoeffMonomial
// ---------------------------------------------------------------------------

/// A formal Laurent monomial `prod q(a,b)^e` in the braiding-matrix
/// entries, stored as a sparse map from ordered generator pairs to
/// nonzero integer exponents.
///
/// The empty monomial is the multiplicative identity. Multiplication
/// adds exponents and drops zeros, so the representation is canonical
/// and equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffMonomial {
    exponents: BTreeMap<(Gen, Gen), i64>,
}

impl CoeffMonomial {
    /// The identity monomial (empty product).
    pub fn one() -> Self {
        CoeffMonomial::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = ((Gen, Gen), i64)>>(pairs: I) -> Self {
        let mut m = CoeffMonomial::one();
        for (pair, e) in pairs {
            m.push(pair, e);
        }
        m
    }

    /// Multiply by `q(pair)^exponent`, keeping the sparse form canonical.
    pub fn push(&mut self, pair: (Gen, Gen), exponent: i64) {
        if exponent == 0 {
            return;
        }
        let slot = self.exponents.entry(pair).or_insert(0);
        *slot += exponent;
        if *slot == 0 {
            self.exponents.remove(&pair);
        }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, pair: (Gen, Gen)) -> i64 {
        self.exponents.get(&pair).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Gen, Gen), &i64)> {
        self.exponents.iter()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Exponentwise sum of `self` and `other`.
    pub fn mul(&self, other: &CoeffMonomial) -> CoeffMonomial {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn mul_assign(&mut self, other: &CoeffMonomial) {
        for (&pair, &e) in &other.exponents {
            self.push(pair, e);
        }
    }

    /// Negate every exponent: `m.mul(&m.inv())` is the identity.
    pub fn inv(&self) -> CoeffMonomial {
        CoeffMonomial {
            exponents: self.exponents.iter().map(|(&p, &e)| (p, -e)).collect(),
        }
    }
}

impl fmt::Display for CoeffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&(a, b), &e) in &self.exponents {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "q({a},{b})")?;
            } else {
                write!(f, "q({a},{b})^{e}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// ScalarValue
// ---------------------------------------------------------------------------

/// A numeric realization of a coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    /// Exact rational in lowest terms with positive denominator.
    Rational(BigRational),
    /// The class `k` of `w^k` for a primitive `order`-th root of unity.
    Cyclotomic { class: u64, order: u64 },
    /// Double-precision complex value (`im = 0` for real results).
    Float { re: f64, im: f64 },
}

impl ScalarValue {
    pub fn one_rational() -> Self {
        ScalarValue::Rational(BigRational::one())
    }

    pub fn is_one(&self) -> bool {
        match self {
            ScalarValue::Rational(r) => r.is_one(),
            ScalarValue::Cyclotomic { class, .. } => *class == 0,
            ScalarValue::Float { re, im } => *re == 1.0 && *im == 0.0,
        }
    }

    /// The value as a complex pair, for tolerance comparisons.
    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            ScalarValue::Rational(r) => (ratio_to_f64(r), 0.0),
            ScalarValue::Cyclotomic { class, order } => {
                let theta = std::f64::consts::TAU * (*class as f64) / (*order as f64);
                (theta.cos(), theta.sin())
            }
            ScalarValue::Float { re, im } => (*re, *im),
        }
    }

    /// Componentwise comparison at `tol`, relative to the larger magnitude.
    pub fn approx_eq(&self, other: &ScalarValue, tol: f64) -> bool {
        let (ar, ai) = self.to_complex();
        let (br, bi) = other.to_complex();
        let scale = 1f64.max(ar.hypot(ai)).max(br.hypot(bi));
        (ar - br).abs() <= tol * scale && (ai - bi).abs() <= tol * scale
    }

    /// Multiplicative inverse; defined for every braiding scalar since
    /// entries are nonzero.
    pub fn recip(&self) -> Result<ScalarValue, ScalarError> {
        match self {
            ScalarValue::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::IncompatibleScalars("0".into(), "reciprocal".into()))
                } else {
                    Ok(ScalarValue::Rational(r.recip()))
                }
            }
            ScalarValue::Cyclotomic { class, order } => {
                Ok(ScalarValue::Cyclotomic { class: (order - class) % order, order: *order })
            }
            ScalarValue::Float { re, im } => {
                let norm = re * re + im * im;
                Ok(ScalarValue::Float { re: re / norm, im: -im / norm })
            }
        }
    }

    pub fn mul(&self, other: &ScalarValue) -> Result<ScalarValue, ScalarError> {
        match (self, other) {
            (ScalarValue::Rational(a), ScalarValue::Rational(b)) => Ok(ScalarValue::Rational(a * b)),
            (
                ScalarValue::Cyclotomic { class: a, order: n },
                ScalarValue::Cyclotomic { class: b, order: m },
            ) if n == m => Ok(ScalarValue::Cyclotomic { class: (a + b) % n, order: *n }),
            (ScalarValue::Float { re: ar, im: ai }, ScalarValue::Float { re: br, im: bi }) => {
                Ok(ScalarValue::Float { re: ar * br - ai * bi, im: ar * bi + ai * br })
            }
            (a, b) => Err(ScalarError::IncompatibleScalars(a.to_string(), b.to_string())),
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Rational(r) => write!(f, "{r}"),
            ScalarValue::Cyclotomic { class, order } => write!(f, "w^{class} (mod {order})"),
            ScalarValue::Float { re, im } => {
                if *im == 0.0 {
                    write!(f, "{re}")
                } else {
                    write!(f, "{re}{im:+}i")
                }
            }
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// QMatrix
// ---------------------------------------------------------------------------

/// The matrix mode, as written in the text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMode {
    Rational,
    Cyclotomic { order: u64 },
    Graded { order: u64 },
}

impl QMode {
    pub fn label(&self) -> &'static str {
        match self {
            QMode::Rational => "rational",
            QMode::Cyclotomic { .. } => "cyclotomic",
            QMode::Graded { .. } => "graded",
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            QMode::Rational => None,
            QMode::Cyclotomic { order } | QMode::Graded { order } => Some(*order),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Rational(Vec<Vec<BigRational>>),
    Cyclotomic { order: u64, rows: Vec<Vec<u64>> },
    Graded { order: u64, grading: Vec<i64> },
}

/// An `n x n` table of nonzero scalars defining a diagonal braiding.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: u32,
    repr: Repr,
}

impl QMatrix {
    /// Build a rational matrix, rejecting zero entries and ragged rows.
    pub fn rational(rows: Vec<Vec<BigRational>>) -> Result<Self, ScalarError> {
        let n = rows.len() as u32;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(ScalarError::BadShape {
                n,
                rows: rows.len(),
                widths: rows.iter().map(Vec::len).collect(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    return Err(ScalarError::ZeroEntry { row: i as u32 + 1, col: j as u32 + 1 });
                }
            }
        }
        Ok(QMatrix { n, repr: Repr::Rational(rows) })
    }

    /// An `n x n` rational matrix with every entry equal to `value`.
    pub fn constant_rational(n: u32, value: BigRational) -> Result<Self, ScalarError> {
        QMatrix::rational(vec![vec![value; n as usize]; n as usize])
    }

    /// Build a cyclotomic matrix; exponents are reduced modulo `order`.
    pub fn cyclotomic(order: u64, rows: Vec<Vec<i64>>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::BadOrder);
        }
        let n = rows.len() as u32;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(ScalarError::BadShape {
                n,
                rows: rows.len(),
                widths: rows.iter().map(Vec::len).collect(),
            });
        }
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.rem_euclid(order as i64) as u64).collect())
            .collect();
        Ok(QMatrix { n, repr: Repr::Cyclotomic { order, rows } })
    }

    /// The graded construction: `entry(s, t) = g_s * g_t mod order`.
    pub fn graded(n: u32, order: u64, grading: Vec<i64>) -> Result<Self, ScalarError> {
        if order == 0 {
            return Err(ScalarError::BadOrder);
        }
        if grading.len() != n as usize {
            return Err(ScalarError::BadGrading { n, found: grading.len() });
        }
        Ok(QMatrix { n, repr: Repr::Graded { order, grading } })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> QMode {
        match &self.repr {
            Repr::Rational(_) => QMode::Rational,
            Repr::Cyclotomic { order, .. } => QMode::Cyclotomic { order: *order },
            Repr::Graded { order, .. } => QMode::Graded { order: *order },
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, Repr::Rational(_))
    }

    pub fn order(&self) -> Option<u64> {
        self.mode().order()
    }

    pub fn in_range(&self, g: Gen) -> bool {
        g >= 1 && g <= self.n
    }

    fn check_pair(&self, s: Gen, t: Gen) -> Result<(), ScalarError> {
        if self.in_range(s) && self.in_range(t) {
            Ok(())
        } else {
            Err(ScalarError::IndexOutOfRange { pair: (s, t), n: self.n })
        }
    }

    /// The exact rational entry `q(s, t)`; rational mode only.
    pub fn rational_entry(&self, s: Gen, t: Gen) -> Result<&BigRational, ScalarError> {
        self.check_pair(s, t)?;
        match &self.repr {
            Repr::Rational(rows) => Ok(&rows[(s - 1) as usize][(t - 1) as usize]),
            other => Err(ScalarError::ModeMismatch { expected: "rational", found: mode_name(other) }),
        }
    }

    /// The exponent class of `q(s, t)`; cyclotomic and graded modes.
    pub fn exponent_entry(&self, s: Gen, t: Gen) -> Result<u64, ScalarError> {
        self.check_pair(s, t)?;
        match &self.repr {
            Repr::Cyclotomic { rows, .. } => Ok(rows[(s - 1) as usize][(t - 1) as usize]),
            Repr::Graded { order, grading } => {
                let g = grading[(s - 1) as usize] as i128 * grading[(t - 1) as usize] as i128;
                Ok(g.rem_euclid(*order as i128) as u64)
            }
            Repr::Rational(_) => {
                Err(ScalarError::ModeMismatch { expected: "cyclotomic", found: "rational" })
            }
        }
    }

    /// Whether `q(s1, t1) = q(s2, t2)` as scalars.
    pub fn entries_equal(&self, a: (Gen, Gen), b: (Gen, Gen)) -> Result<bool, ScalarError> {
        match &self.repr {
            Repr::Rational(_) => Ok(self.rational_entry(a.0, a.1)? == self.rational_entry(b.0, b.1)?),
            _ => Ok(self.exponent_entry(a.0, a.1)? == self.exponent_entry(b.0, b.1)?),
        }
    }

    /// Whether `q(s, t)` is the unit scalar.
    pub fn entry_is_one(&self, s: Gen, t: Gen) -> Result<bool, ScalarError> {
        match &self.repr {
            Repr::Rational(_) => Ok(self.rational_entry(s, t)?.is_one()),
            _ => Ok(self.exponent_entry(s, t)? == 0),
        }
    }

    /// The entry `q(s, t)` as a numeric scalar in the requested mode.
    pub fn entry_scalar(&self, s: Gen, t: Gen, mode: NumericMode) -> Result<ScalarValue, ScalarError> {
        match (&self.repr, mode) {
            (Repr::Rational(_), NumericMode::Exact) => {
                Ok(ScalarValue::Rational(self.rational_entry(s, t)?.clone()))
            }
            (Repr::Rational(_), NumericMode::Float) => {
                Ok(ScalarValue::Float { re: ratio_to_f64(self.rational_entry(s, t)?), im: 0.0 })
            }
            (_, NumericMode::Exact) => {
                let order = self.order().expect("non-rational matrix has an order");
                Ok(ScalarValue::Cyclotomic { class: self.exponent_entry(s, t)?, order })
            }
            (_, NumericMode::Float) => {
                let order = self.order().expect("non-rational matrix has an order") as f64;
                let theta = std::f64::consts::TAU * self.exponent_entry(s, t)? as f64 / order;
                Ok(ScalarValue::Float { re: theta.cos(), im: theta.sin() })
            }
        }
    }

    /// Evaluate a symbolic monomial against this matrix.
    pub fn eval(&self, m: &CoeffMonomial, mode: NumericMode) -> Result<ScalarValue, ScalarError> {
        match (mode, &self.repr) {
            (NumericMode::Exact, Repr::Rational(_)) => self.eval_rational(m).map(ScalarValue::Rational),
            (NumericMode::Exact, _) => {
                let order = self.order().expect("non-rational matrix has an order");
                let mut class: i128 = 0;
                for (&(a, b), &e) in m.iter() {
                    class += self.exponent_entry(a, b)? as i128 * e as i128;
                }
                Ok(ScalarValue::Cyclotomic { class: class.rem_euclid(order as i128) as u64, order })
            }
            (NumericMode::Float, Repr::Rational(_)) => {
                let mut acc = 1f64;
                for (&(a, b), &e) in m.iter() {
                    let r = self.rational_entry(a, b)?;
                    let exp = i32::try_from(e).map_err(|_| ScalarError::ExponentOverflow(e))?;
                    acc *= ratio_to_f64(r).powi(exp);
                }
                Ok(ScalarValue::Float { re: acc, im: 0.0 })
            }
            (NumericMode::Float, _) => {
                // Multiply unit-circle points factor by factor rather than
                // summing exponent classes, so the float route stays
                // distinct from the exact one.
                let order = self.order().expect("non-rational matrix has an order") as f64;
                let (mut re, mut im) = (1f64, 0f64);
                for (&(a, b), &e) in m.iter() {
                    let theta = std::f64::consts::TAU * self.exponent_entry(a, b)? as f64 * e as f64 / order;
                    let (fr, fi) = (theta.cos(), theta.sin());
                    (re, im) = (re * fr - im * fi, re * fi + im * fr);
                }
                Ok(ScalarValue::Float { re, im })
            }
        }
    }

    /// Exact rational evaluation; rational mode only.
    pub fn eval_rational(&self, m: &CoeffMonomial) -> Result<BigRational, ScalarError> {
        let mut acc = BigRational::one();
        for (&(a, b), &e) in m.iter() {
            let r = self.rational_entry(a, b)?;
            let exp = i32::try_from(e).map_err(|_| ScalarError::ExponentOverflow(e))?;
            acc *= num_traits::pow::Pow::pow(r, exp);
        }
        Ok(acc)
    }

    // -- text format --------------------------------------------------------

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = meaningful_lines(text);
        expect_header(&mut lines, "qmatrix")?;

        let (ln, line) = lines.next().ok_or_else(|| ParseError::new(1, "missing `n` line"))?;
        let n: u32 = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", v] => parse_field(ln, "generator count", v)?,
            _ => return Err(ParseError::new(ln, format!("expected `n <int>`, found `{line}`"))),
        };

        let (ln, line) = lines.next().ok_or_else(|| ParseError::new(ln, "missing `mode` line"))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let mode = match fields[..] {
            ["mode", "rational"] => QMode::Rational,
            ["mode", "cyclotomic", v] => QMode::Cyclotomic { order: parse_field(ln, "order", v)? },
            ["mode", "graded", v] => QMode::Graded { order: parse_field(ln, "order", v)? },
            _ => return Err(ParseError::new(ln, format!("expected `mode rational|cyclotomic <k>|graded <k>`, found `{line}`"))),
        };
        if mode.order() == Some(0) {
            return Err(ParseError::new(ln, "order must be at least 1"));
        }

        match mode {
            QMode::Graded { order } => {
                let (ln, line) = lines.next().ok_or_else(|| ParseError::new(ln, "missing `grading` line"))?;
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.first() != Some(&"grading") {
                    return Err(ParseError::new(ln, format!("expected `grading g1 .. gn`, found `{line}`")));
                }
                let grading = fields[1..]
                    .iter()
                    .map(|t| parse_field::<i64>(ln, "grading entry", t))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some((ln, line)) = lines.next() {
                    return Err(ParseError::new(ln, format!("unexpected trailing line `{line}`")));
                }
                QMatrix::graded(n, order, grading).map_err(|e| ParseError::new(ln, e.to_string()))
            }
            QMode::Rational | QMode::Cyclotomic { .. } => {
                let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
                let mut last_ln = ln;
                for expected in 1..=n {
                    let (ln, line) = lines
                        .next()
                        .ok_or_else(|| ParseError::new(last_ln, format!("missing `row {expected}`")))?;
                    last_ln = ln;
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != n as usize + 2 || fields[0] != "row" {
                        return Err(ParseError::new(ln, format!("expected `row {expected} e1 .. e{n}`, found `{line}`")));
                    }
                    let idx: u32 = parse_field(ln, "row index", fields[1])?;
                    if idx != expected {
                        return Err(ParseError::new(ln, format!("expected row {expected}, found row {idx}")));
                    }
                    rows.push((ln, fields[2..].to_vec()));
                }
                if let Some((ln, line)) = lines.next() {
                    return Err(ParseError::new(ln, format!("unexpected trailing line `{line}`")));
                }
                match mode {
                    QMode::Rational => {
                        let parsed = rows
                            .iter()
                            .map(|(ln, row)| row.iter().map(|t| parse_rational(*ln, t)).collect::<Result<Vec<_>, _>>())
                            .collect::<Result<Vec<_>, _>>()?;
                        QMatrix::rational(parsed).map_err(|e| ParseError::new(last_ln, e.to_string()))
                    }
                    QMode::Cyclotomic { order } => {
                        let parsed = rows
                            .iter()
                            .map(|(ln, row)| {
                                row.iter().map(|t| parse_field::<i64>(*ln, "exponent", t)).collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        QMatrix::cyclotomic(order, parsed).map_err(|e| ParseError::new(last_ln, e.to_string()))
                    }
                    QMode::Graded { .. } => unreachable!(),
                }
            }
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from("qmatrix v1\n");
        out.push_str(&format!("n {}\n", self.n));
        match &self.repr {
            Repr::Rational(rows) => {
                out.push_str("mode rational\n");
                for (i, row) in rows.iter().enumerate() {
                    out.push_str(&format!("row {}", i + 1));
                    for e in row {
                        out.push_str(&format!(" {e}"));
                    }
                    out.push('\n');
                }
            }
            Repr::Cyclotomic { order, rows } => {
                out.push_str(&format!("mode cyclotomic {order}\n"));
                for (i, row) in rows.iter().enumerate() {
                    out.push_str(&format!("row {}", i + 1));
                    for e in row {
                        out.push_str(&format!(" {e}"));
                    }
                    out.push('\n');
                }
            }
            Repr::Graded { order, grading } => {
                out.push_str(&format!("mode graded {order}\n"));
                out.push_str("grading");
                for g in grading {
                    out.push_str(&format!(" {g}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Parse `p/q` or a bare integer into an exact rational.
pub fn parse_rational(line: usize, token: &str) -> Result<BigRational, ParseError> {
    let make = |num: &str, den: Option<&str>| -> Option<BigRational> {
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = match den {
            Some(d) => d.parse().ok()?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    };
    let value = match token.split_once('/') {
        Some((num, den)) => make(num, Some(den)),
        None => make(token, None),
    };
    value.ok_or_else(|| ParseError::new(line, format!("invalid rational `{token}`")))
}

fn mode_name(repr: &Repr) -> &'static str {
    match repr {
        Repr::Rational(_) => "rational",
        Repr::Cyclotomic { .. } => "cyclotomic",
        Repr::Graded { .. } => "graded",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn coca_matrix() -> QMatrix {
        QMatrix::graded(8, 7, vec![1, 2, 3, 4, 1, 2, 3, 4]).unwrap()
    }

    #[test]
    fn monomial_identity_and_cancellation() {
        let id = CoeffMonomial::one();
        let m = CoeffMonomial::from_pairs([((1, 2), 3)]);
        assert_eq!(id.mul(&m), m);

        let a = CoeffMonomial::from_pairs([((1, 2), 2)]);
        let b = CoeffMonomial::from_pairs([((1, 2), -2)]);
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn monomial_exponent_addition() {
        let a = CoeffMonomial::from_pairs([((1, 2), 1), ((3, 1), 2)]);
        let b = CoeffMonomial::from_pairs([((3, 1), -1)]);
        assert_eq!(a.mul(&b), CoeffMonomial::from_pairs([((1, 2), 1), ((3, 1), 1)]));
    }

    #[test]
    fn monomial_inverse() {
        assert!(CoeffMonomial::one().inv().is_one());
        assert_eq!(
            CoeffMonomial::from_pairs([((2, 5), 3)]).inv(),
            CoeffMonomial::from_pairs([((2, 5), -3)])
        );
        let m = CoeffMonomial::from_pairs([((1, 2), 1), ((4, 4), -2)]);
        assert_eq!(m.inv(), CoeffMonomial::from_pairs([((1, 2), -1), ((4, 4), 2)]));
        assert!(m.mul(&m.inv()).is_one());
    }

    #[test]
    fn graded_entries_match_grade_products() {
        let q = coca_matrix();
        assert_eq!(q.exponent_entry(1, 4).unwrap(), 4);
        assert_eq!(q.exponent_entry(4, 4).unwrap(), 2); // 16 mod 7

        let zero = QMatrix::graded(2, 5, vec![0, 0]).unwrap();
        for s in 1..=2 {
            for t in 1..=2 {
                assert_eq!(zero.exponent_entry(s, t).unwrap(), 0);
            }
        }

        let ones = QMatrix::graded(3, 7, vec![1, 1, 1]).unwrap();
        for s in 1..=3 {
            for t in 1..=3 {
                assert_eq!(ones.exponent_entry(s, t).unwrap(), 1);
            }
        }
    }

    #[test]
    fn eval_graded_monomial() {
        // grade(5) * grade(6) = 1 * 2, doubled = 4 mod 7
        let q = QMatrix::graded(8, 7, vec![1, 2, 3, 4, 1, 2, 3, 4]).unwrap();
        let m = CoeffMonomial::from_pairs([((5, 6), 2)]);
        assert_eq!(q.eval(&m, NumericMode::Exact).unwrap(), ScalarValue::Cyclotomic { class: 4, order: 7 });
    }

    #[test]
    fn eval_empty_monomial() {
        let q = QMatrix::constant_rational(2, big(1, 1)).unwrap();
        assert_eq!(q.eval(&CoeffMonomial::one(), NumericMode::Exact).unwrap(), ScalarValue::Rational(big(1, 1)));
        let c = coca_matrix();
        assert_eq!(
            c.eval(&CoeffMonomial::one(), NumericMode::Exact).unwrap(),
            ScalarValue::Cyclotomic { class: 0, order: 7 }
        );
    }

    #[test]
    fn eval_rational_monomial() {
        let mut rows = vec![vec![big(1, 1); 3]; 3];
        rows[0][1] = big(3, 2); // q(1,2)
        rows[2][0] = big(5, 1); // q(3,1)
        let q = QMatrix::rational(rows).unwrap();
        let m = CoeffMonomial::from_pairs([((1, 2), 2), ((3, 1), -1)]);
        assert_eq!(q.eval_rational(&m).unwrap(), big(9, 20));
    }

    #[test]
    fn eval_rejects_out_of_range_pairs() {
        let q = QMatrix::constant_rational(2, big(2, 1)).unwrap();
        let m = CoeffMonomial::from_pairs([((1, 3), 1)]);
        assert!(matches!(q.eval(&m, NumericMode::Exact), Err(ScalarError::IndexOutOfRange { .. })));
    }

    #[test]
    fn rational_matrix_rejects_zero_entries() {
        let rows = vec![vec![big(1, 1), big(0, 1)], vec![big(1, 1), big(1, 1)]];
        assert!(matches!(QMatrix::rational(rows), Err(ScalarError::ZeroEntry { row: 1, col: 2 })));
    }

    #[test]
    fn cyclotomic_exponents_are_reduced() {
        let q = QMatrix::cyclotomic(5, vec![vec![7, -1], vec![0, 4]]).unwrap();
        assert_eq!(q.exponent_entry(1, 1).unwrap(), 2);
        assert_eq!(q.exponent_entry(1, 2).unwrap(), 4);
    }

    #[test]
    fn format_round_trip() {
        let texts = [
            "qmatrix v1\nn 8\nmode graded 7\ngrading 1 2 3 4 1 2 3 4\n",
            "qmatrix v1\nn 2\nmode rational\nrow 1 3/2 5\nrow 2 1 7/4\n",
            "qmatrix v1\nn 2\nmode cyclotomic 5\nrow 1 0 3\nrow 2 2 4\n",
        ];
        for text in texts {
            let q = QMatrix::parse(text).unwrap();
            assert_eq!(q.serialize(), text);
            assert_eq!(QMatrix::parse(&q.serialize()).unwrap(), q);
        }
    }

    #[test]
    fn parse_accepts_comments() {
        let text = "# braiding for the bottle\nqmatrix v1\nn 1\nmode rational\nrow 1 2 # the only entry\n";
        let q = QMatrix::parse(text).unwrap();
        assert_eq!(q.rational_entry(1, 1).unwrap(), &big(2, 1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = QMatrix::parse("qmatrix v1\nn 2\nmode rational\nrow 1 1 1\nrow 2 1 x\n").unwrap_err();
        assert_eq!(err.line, 5);
        let err = QMatrix::parse("qmatrix v2\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(CoeffMonomial::one().to_string(), "1");
        let m = CoeffMonomial::from_pairs([((1, 2), 1), ((3, 1), -2)]);
        assert_eq!(m.to_string(), "q(1,2) q(3,1)^-2");
        assert_eq!(ScalarValue::Cyclotomic { class: 4, order: 7 }.to_string(), "w^4 (mod 7)");
        assert_eq!(ScalarValue::Rational(big(9, 20)).to_string(), "9/20");
        assert_eq!(ScalarValue::Rational(big(64, 1)).to_string(), "64");
    }
}
