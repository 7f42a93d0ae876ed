//! Shape vocabularies and the attribute decoders.
//!
//! A vocabulary names the shape behind each generator index. The
//! decoders read an evaluation result as a design attribute:
//!
//! - color: a root-of-unity class picks a name off a color wheel,
//! - size: a positive scalar is the scale factor,
//! - brightness: each single-letter wire's coefficient is that shape's
//!   brightness in units,
//! - mirror: crossings against a scaling axis mark which copy of a
//!   duplicated component is the mirrored (right-side) one.
//!
//! # Vocabulary text format
//!
//! ```text
//! vocab v1
//! offset <r>          # optional, default 0
//! shape <index> <name ..>
//! ```
//!
//! With a nonzero offset, index `i` refers to the entry written as
//! `shape <i + r> ..` — the written table is public while the shift
//! stays private.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use thiserror::Error;

use crate::braid::WireState;
use crate::diagram::EvalResult;
use crate::scalar::{Gen, NumericMode, QMatrix, ScalarError, ScalarValue, Word};
use crate::textfmt::{expect_header, meaningful_lines, parse_field, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error("no shape registered for generator {0}")]
    UnknownShape(Gen),
    #[error("class is modulo {class_order} but the wheel has {wheel_order} colors")]
    OrderMismatch { class_order: u64, wheel_order: u64 },
    #[error("expected a root-of-unity class, found {0}")]
    NotACyclotomicClass(String),
    #[error("scale factor must be a positive real, found {0}")]
    NonPositiveScale(String),
    #[error("wire {index} carries {length} letters; brightness reads single-letter wires only")]
    MultiLetterWire { index: usize, length: usize },
    #[error("mirrored generator {0} occurs in the word but no scaling coefficient covers it")]
    MirrorScalarMissing(Gen),
    #[error("{found} mirrored components but the scaling pairs carry total exponent {expected}")]
    MirrorCountMismatch { expected: i64, found: i64 },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

// ---------------------------------------------------------------------------
// ShapeVocabulary
// ---------------------------------------------------------------------------

/// Registry mapping generator indices to shape names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeVocabulary {
    entries: BTreeMap<i64, String>,
    offset: i64,
}

impl ShapeVocabulary {
    pub fn new<I: IntoIterator<Item = (Gen, String)>>(entries: I) -> Self {
        ShapeVocabulary {
            entries: entries.into_iter().map(|(g, name)| (g as i64, name)).collect(),
            offset: 0,
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn with_offset(mut self, offset: i64) -> Self {
        self.offset = offset;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The shape name behind index `i` (after the offset shift).
    pub fn lookup(&self, i: Gen) -> Result<&str, DesignError> {
        self.entries
            .get(&(i as i64 + self.offset))
            .map(String::as_str)
            .ok_or(DesignError::UnknownShape(i))
    }

    /// Reverse lookup: the index whose (offset-shifted) entry is `name`.
    pub fn index_of(&self, name: &str) -> Option<i64> {
        self.entries
            .iter()
            .find(|(_, n)| n.as_str() == name)
            .map(|(&written, _)| written - self.offset)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = meaningful_lines(text);
        expect_header(&mut lines, "vocab")?;
        let mut entries = BTreeMap::new();
        let mut offset = 0i64;
        for (ln, line) in lines {
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("offset") => {
                    let value = fields.next().ok_or_else(|| ParseError::new(ln, "offset needs a value"))?;
                    offset = parse_field(ln, "offset", value)?;
                }
                Some("shape") => {
                    let idx = fields.next().ok_or_else(|| ParseError::new(ln, "shape needs an index"))?;
                    let idx: i64 = parse_field(ln, "shape index", idx)?;
                    let name = fields.collect::<Vec<_>>().join(" ");
                    if name.is_empty() {
                        return Err(ParseError::new(ln, "shape name must be non-empty"));
                    }
                    if entries.insert(idx, name).is_some() {
                        return Err(ParseError::new(ln, format!("duplicate shape index {idx}")));
                    }
                }
                _ => return Err(ParseError::new(ln, format!("expected `shape` or `offset`, found `{line}`"))),
            }
        }
        Ok(ShapeVocabulary { entries, offset })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from("vocab v1\n");
        if self.offset != 0 {
            out.push_str(&format!("offset {}\n", self.offset));
        }
        for (idx, name) in &self.entries {
            out.push_str(&format!("shape {idx} {name}\n"));
        }
        out
    }
}

/// Elementwise shape lookup, preserving order and multiplicity.
pub fn render_word(vocab: &ShapeVocabulary, word: &[Gen]) -> Result<Vec<String>, DesignError> {
    word.iter().map(|&g| vocab.lookup(g).map(str::to_string)).collect()
}

// ---------------------------------------------------------------------------
// ColorWheel
// ---------------------------------------------------------------------------

/// An ordered list of color names, one per root-of-unity class. Class 1
/// is the first name; class 0 wraps around to the last, since `w^order`
/// is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorWheel {
    names: Vec<String>,
}

impl ColorWheel {
    pub fn new(names: Vec<String>) -> Self {
        ColorWheel { names }
    }

    /// The bundled seven-color wheel.
    pub fn default_seven() -> Self {
        ColorWheel::new(
            ["Red", "orange", "yellow", "green", "cyan", "blue", "purple"]
                .into_iter()
                .map(str::to_string)
                .collect(),
        )
    }

    pub fn order(&self) -> u64 {
        self.names.len() as u64
    }

    /// The color for an arbitrary integer exponent; periodic in the
    /// wheel order.
    pub fn color_for_class(&self, k: i64) -> &str {
        let order = self.names.len() as i64;
        let r = k.rem_euclid(order);
        let idx = if r == 0 { order } else { r };
        &self.names[(idx - 1) as usize]
    }

    /// Decode an evaluated scalar; the class order must match the wheel.
    pub fn decode(&self, value: &ScalarValue) -> Result<&str, DesignError> {
        match value {
            ScalarValue::Cyclotomic { class, order } => {
                if *order != self.order() {
                    return Err(DesignError::OrderMismatch { class_order: *order, wheel_order: self.order() });
                }
                Ok(self.color_for_class(*class as i64))
            }
            other => Err(DesignError::NotACyclotomicClass(other.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Size, brightness, mirror
// ---------------------------------------------------------------------------

/// A positive scalar read as a multiplicative scale factor.
pub fn decode_size(value: &ScalarValue) -> Result<ScalarValue, DesignError> {
    let ok = match value {
        ScalarValue::Rational(r) => r.is_positive(),
        ScalarValue::Float { re, im } => *re > 0.0 && *im == 0.0,
        ScalarValue::Cyclotomic { .. } => false,
    };
    if ok {
        Ok(value.clone())
    } else {
        Err(DesignError::NonPositiveScale(value.to_string()))
    }
}

/// Pair each single-letter wire with its shape name and the numeric
/// value of its coefficient. A clean wire reads as brightness 1.
pub fn decode_brightness(
    wires: &[WireState],
    q: &QMatrix,
    vocab: &ShapeVocabulary,
) -> Result<Vec<(String, ScalarValue)>, DesignError> {
    let mut out = Vec::with_capacity(wires.len());
    for (index, wire) in wires.iter().enumerate() {
        if wire.word.len() != 1 {
            return Err(DesignError::MultiLetterWire { index: index + 1, length: wire.word.len() });
        }
        let name = vocab.lookup(wire.word[0])?.to_string();
        let value = q.eval(&wire.coeff, NumericMode::Exact)?;
        out.push((name, value));
    }
    Ok(out)
}

/// Which side a mirrored component landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// One component of a decoded assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorComponent {
    pub gen: Gen,
    pub name: String,
    pub side: Option<Side>,
}

impl MirrorComponent {
    /// Human-readable label: the side prefix plus the base shape name.
    pub fn label(&self) -> String {
        match self.side {
            Some(Side::Right) => format!("right {}", self.name),
            Some(Side::Left) => format!("left {}", self.name),
            None => self.name.clone(),
        }
    }
}

/// Annotate the output word of an evaluation: the first occurrence of
/// each mirrored generator is the right-side copy, later occurrences are
/// left-side, and everything else passes through.
///
/// The annotation count is audited against the coefficient: summing the
/// exponents of the scaling pairs — the coefficient pairs whose matrix
/// entry is not 1 — must give exactly one crossing per right-side copy.
pub fn decode_mirror(
    result: &EvalResult,
    mirrored: &BTreeSet<Gen>,
    vocab: &ShapeVocabulary,
    q: &QMatrix,
) -> Result<Vec<MirrorComponent>, DesignError> {
    let word: Word = result.wires.iter().flat_map(|w| w.word.iter().copied()).collect();

    let mut seen: BTreeSet<Gen> = BTreeSet::new();
    let mut components = Vec::with_capacity(word.len());
    for &g in &word {
        let side = if mirrored.contains(&g) {
            if seen.insert(g) {
                Some(Side::Right)
            } else {
                Some(Side::Left)
            }
        } else {
            None
        };
        components.push(MirrorComponent { gen: g, name: vocab.lookup(g)?.to_string(), side });
    }

    // audit: one scaling crossing per right-side copy
    let mut scaled_total = 0i64;
    let mut scaled_by_gen: BTreeMap<Gen, i64> = BTreeMap::new();
    for (&(a, b), &e) in result.global_coeff.iter() {
        if !q.entry_is_one(a, b)? {
            scaled_total += e;
            *scaled_by_gen.entry(a).or_insert(0) += e;
            *scaled_by_gen.entry(b).or_insert(0) += e;
        }
    }
    for &g in &seen {
        if scaled_by_gen.get(&g).copied().unwrap_or(0) < 1 {
            return Err(DesignError::MirrorScalarMissing(g));
        }
    }
    let annotations = seen.len() as i64;
    if annotations != scaled_total {
        return Err(DesignError::MirrorCountMismatch { expected: scaled_total, found: annotations });
    }

    Ok(components)
}
