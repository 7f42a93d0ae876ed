//! Exact evaluation of layered braiding diagrams over diagonal braided
//! vector spaces.
//!
//! A diagonal braiding on a basis `v_1 .. v_n` is determined by an `n x n`
//! matrix of nonzero scalars: crossing two wires swaps them and multiplies
//! by the matrix entry indexed by the two generators involved. This crate
//! keeps every such scalar symbolic — a sparse Laurent monomial in the
//! matrix entries — so that downstream equality tests are exact, and only
//! evaluates numerically (exact rationals, root-of-unity classes, or
//! floats) on request.
//!
//! The pieces:
//!
//! - [`scalar`]: braiding matrices, symbolic coefficient monomials, and
//!   their numeric evaluation backends.
//! - [`braid`]: the crossing operator on words, its inverse, and
//!   exhaustive law checkers (Yang–Baxter, inverse, box naturality) plus
//!   the Yetter–Drinfeld construction over `Z^n`.
//! - [`diagram`]: a line-oriented DSL for layered string diagrams, a
//!   validator, and the evaluator.
//! - [`oracle`]: an independent linear-operator evaluator used to
//!   cross-check [`diagram::evaluate`].
//! - [`design`]: shape vocabularies and decoders that read evaluation
//!   coefficients as colors, sizes, brightness units, and mirrored
//!   components.
//! - [`cipher`]: a secret-word protocol that hides a vocabulary index in
//!   a list of blinded crossing coefficients.
//! - [`fixtures`]: the bundled example diagrams, matrices, and
//!   vocabularies used throughout the test suite and addressable by name
//!   from the CLI.
//!
//! Everything in this crate is a plain immutable value and every
//! operation is pure, so sharing across threads needs no coordination;
//! the exhaustive checkers can be fanned out over index ranges freely.

pub mod braid;
pub mod cipher;
pub mod design;
pub mod diagram;
pub mod fixtures;
pub mod oracle;
pub mod scalar;
pub mod textfmt;

pub use braid::{braid, braid_inverse, cross_coeff, BoxMorphism, CheckReport, Direction, WireState};
pub use diagram::{evaluate, parse_diagram, state_at, validate, Diagram, EvalResult, Gate, Layer};
pub use scalar::{CoeffMonomial, Gen, NumericMode, QMatrix, ScalarValue, Word};
