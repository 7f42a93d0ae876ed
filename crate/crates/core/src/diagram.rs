//! Layered string diagrams: text format, validation, and evaluation.
//!
//! A diagram is read top to bottom. It starts from a row of input wires,
//! one generator per wire, and applies one layer of gates per line. Gates
//! act on consecutive wires, left to right:
//!
//! | token     | gate             | wires in | wires out |
//! |-----------|------------------|----------|-----------|
//! | `id`      | identity         | 1        | 1         |
//! | `x`       | crossing         | 2        | 2         |
//! | `xi`      | inverse crossing | 2        | 2         |
//! | `m`       | multiply         | 2        | 1         |
//! | `f:<a>><b>` | relabeling box | 1        | 1         |
//! | `bend`    | layout only      | 1        | 1         |
//!
//! `bend` marks a purely cosmetic wire bend in a hand-drawn source; the
//! parser accepts it and reads it as `id`. Multiplication concatenates
//! the left word before the right word. A relabeling box only applies to
//! a wire carrying exactly its source generator.
//!
//! # Text format
//!
//! ```text
//! diagram v1
//! name <identifier>
//! inputs <g1> <g2> ..
//! layer <gate tokens>
//! ```
//!
//! with `#` comments and blank lines allowed anywhere. The serializer
//! emits this canonical form back, one layer per line.

use std::fmt;

use thiserror::Error;

use crate::braid::{admissible_box, braid, braid_inverse, WireState};
use crate::scalar::{CoeffMonomial, Gen, QMatrix, ScalarError, Word};
use crate::textfmt::{expect_header, meaningful_lines, ParseError};

/// One gate of a layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    Id,
    Cross,
    CrossInv,
    Mul,
    Box { from: Gen, to: Gen },
}

impl Gate {
    pub fn input_arity(&self) -> usize {
        match self {
            Gate::Id | Gate::Box { .. } => 1,
            Gate::Cross | Gate::CrossInv | Gate::Mul => 2,
        }
    }

    pub fn output_arity(&self) -> usize {
        match self {
            Gate::Id | Gate::Box { .. } | Gate::Mul => 1,
            Gate::Cross | Gate::CrossInv => 2,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Id => write!(f, "id"),
            Gate::Cross => write!(f, "x"),
            Gate::CrossInv => write!(f, "xi"),
            Gate::Mul => write!(f, "m"),
            Gate::Box { from, to } => write!(f, "f:{from}>{to}"),
        }
    }
}

/// One horizontal slice of gates, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub gates: Vec<Gate>,
}

impl Layer {
    pub fn input_arity(&self) -> usize {
        self.gates.iter().map(Gate::input_arity).sum()
    }

    pub fn output_arity(&self) -> usize {
        self.gates.iter().map(Gate::output_arity).sum()
    }
}

/// A named, layered string diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub name: String,
    pub inputs: Word,
    pub layers: Vec<Layer>,
}

/// A validation finding. Issues are data, not errors: [`validate`]
/// returns all of them at once.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Issue {
    #[error("layer {layer}: gates take {found} wires but {expected} enter the layer")]
    ArityMismatch { layer: usize, expected: usize, found: usize },
    #[error("input wire {wire}: generator {gen} out of range for n = {n}")]
    InputOutOfRange { wire: usize, gen: Gen, n: u32 },
    #[error("layer {layer}: box {from}>{to} references a generator out of range for n = {n}")]
    BoxOutOfRange { layer: usize, from: Gen, to: Gen, n: u32 },
    #[error("layer {layer}: box {from}>{to} is not admissible under this matrix")]
    InadmissibleBox { layer: usize, from: Gen, to: Gen },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("diagram `{name}` is invalid: {}", issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { name: String, issues: Vec<Issue> },
    #[error("layer {layer}: box {from}>{to} applied to a wire carrying [{word}], expected exactly [{from}]",
            word = word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" "))]
    BoxOnWrongWord { layer: usize, from: Gen, to: Gen, word: Word },
    #[error("layer index {index} out of range: diagram has {layers} layers")]
    LayerOutOfRange { index: usize, layers: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The outcome of evaluating a diagram: the surviving wires, the product
/// of all wire coefficients, and a per-layer trace (entry 0 is the input
/// row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub wires: Vec<WireState>,
    pub global_coeff: CoeffMonomial,
    pub trace: Vec<Vec<WireState>>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Tokens of a line together with their 1-based start columns.
fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (idx, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..idx]));
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_gate(line: usize, column: usize, token: &str) -> Result<Gate, ParseError> {
    match token {
        "id" | "bend" => Ok(Gate::Id),
        "x" => Ok(Gate::Cross),
        "xi" => Ok(Gate::CrossInv),
        "m" => Ok(Gate::Mul),
        _ => {
            if let Some(rest) = token.strip_prefix("f:") {
                if let Some((a, b)) = rest.split_once('>') {
                    let from = a
                        .parse::<Gen>()
                        .map_err(|_| ParseError::at(line, column, format!("invalid box source in `{token}`")))?;
                    let to = b
                        .parse::<Gen>()
                        .map_err(|_| ParseError::at(line, column, format!("invalid box target in `{token}`")))?;
                    return Ok(Gate::Box { from, to });
                }
                return Err(ParseError::at(line, column, format!("box token `{token}` must look like f:<a>><b>")));
            }
            Err(ParseError::at(line, column, format!("unknown gate token `{token}`")))
        }
    }
}

/// Parse the diagram text format.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let mut lines = meaningful_lines(text);
    expect_header(&mut lines, "diagram")?;

    let (ln, line) = lines.next().ok_or_else(|| ParseError::new(1, "missing `name` line"))?;
    let name = match tokens_with_columns(line)[..] {
        [(_, "name"), (_, value)] => value.to_string(),
        _ => return Err(ParseError::new(ln, format!("expected `name <identifier>`, found `{line}`"))),
    };

    let (ln, line) = lines.next().ok_or_else(|| ParseError::new(ln, "missing `inputs` line"))?;
    let tokens = tokens_with_columns(line);
    if tokens.first().map(|t| t.1) != Some("inputs") {
        return Err(ParseError::new(ln, format!("expected `inputs <g1> ..`, found `{line}`")));
    }
    let mut inputs = Word::new();
    for &(col, token) in &tokens[1..] {
        let gen = token
            .parse::<Gen>()
            .map_err(|_| ParseError::at(ln, col, format!("invalid generator index `{token}`")))?;
        if gen == 0 {
            return Err(ParseError::at(ln, col, "generator indices are 1-based; 0 is not valid"));
        }
        inputs.push(gen);
    }

    let mut layers = Vec::new();
    for (ln, line) in lines {
        let tokens = tokens_with_columns(line);
        if tokens.first().map(|t| t.1) != Some("layer") {
            return Err(ParseError::new(ln, format!("expected `layer <gates>`, found `{line}`")));
        }
        if tokens.len() == 1 {
            return Err(ParseError::new(ln, "layer has no gates"));
        }
        let gates = tokens[1..]
            .iter()
            .map(|&(col, token)| parse_gate(ln, col, token))
            .collect::<Result<Vec<_>, _>>()?;
        layers.push(Layer { gates });
    }

    Ok(Diagram { name, inputs, layers })
}

/// Serialize back to the canonical text form; `parse_diagram` of the
/// output reproduces the diagram exactly.
pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = String::from("diagram v1\n");
    out.push_str(&format!("name {}\n", d.name));
    out.push_str("inputs");
    for g in &d.inputs {
        out.push_str(&format!(" {g}"));
    }
    out.push('\n');
    for layer in &d.layers {
        out.push_str("layer");
        for gate in &layer.gates {
            out.push_str(&format!(" {gate}"));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Validation and evaluation
// ---------------------------------------------------------------------------

/// Check a diagram against a braiding matrix: the wire count must chain
/// through every layer, every generator must be in range, and every box
/// must be admissible. Returns all findings; an empty list means valid.
pub fn validate(d: &Diagram, q: &QMatrix) -> Vec<Issue> {
    let mut issues = Vec::new();
    for (wire, &gen) in d.inputs.iter().enumerate() {
        if !q.in_range(gen) {
            issues.push(Issue::InputOutOfRange { wire: wire + 1, gen, n: q.n() });
        }
    }
    let mut width = d.inputs.len();
    for (idx, layer) in d.layers.iter().enumerate() {
        let layer_no = idx + 1;
        let found = layer.input_arity();
        if found != width {
            issues.push(Issue::ArityMismatch { layer: layer_no, expected: width, found });
        }
        for gate in &layer.gates {
            if let Gate::Box { from, to } = *gate {
                if !q.in_range(from) || !q.in_range(to) {
                    issues.push(Issue::BoxOutOfRange { layer: layer_no, from, to, n: q.n() });
                } else if !admissible_box(q, from, to).unwrap_or(false) {
                    issues.push(Issue::InadmissibleBox { layer: layer_no, from, to });
                }
            }
        }
        width = layer.output_arity();
    }
    issues
}

/// Evaluate a diagram layer by layer. The diagram must validate cleanly
/// against `q` first.
pub fn evaluate(d: &Diagram, q: &QMatrix) -> Result<EvalResult, EvalError> {
    let issues = validate(d, q);
    if !issues.is_empty() {
        return Err(EvalError::Invalid { name: d.name.clone(), issues });
    }

    let mut wires: Vec<WireState> = d.inputs.iter().map(|&g| WireState::generator(g)).collect();
    let mut trace = vec![wires.clone()];

    for (idx, layer) in d.layers.iter().enumerate() {
        let mut cursor = wires.into_iter();
        let mut next = Vec::with_capacity(layer.output_arity());
        for gate in &layer.gates {
            match gate {
                Gate::Id => next.push(cursor.next().expect("arity validated")),
                Gate::Cross => {
                    let left = cursor.next().expect("arity validated");
                    let right = cursor.next().expect("arity validated");
                    let (a, b) = braid(left, right);
                    next.push(a);
                    next.push(b);
                }
                Gate::CrossInv => {
                    let left = cursor.next().expect("arity validated");
                    let right = cursor.next().expect("arity validated");
                    let (a, b) = braid_inverse(left, right);
                    next.push(a);
                    next.push(b);
                }
                Gate::Mul => {
                    let mut left = cursor.next().expect("arity validated");
                    let right = cursor.next().expect("arity validated");
                    left.word.extend(right.word);
                    left.coeff.mul_assign(&right.coeff);
                    next.push(left);
                }
                Gate::Box { from, to } => {
                    let mut wire = cursor.next().expect("arity validated");
                    if wire.word != vec![*from] {
                        return Err(EvalError::BoxOnWrongWord {
                            layer: idx + 1,
                            from: *from,
                            to: *to,
                            word: wire.word,
                        });
                    }
                    wire.word = vec![*to];
                    next.push(wire);
                }
            }
        }
        wires = next;
        trace.push(wires.clone());
    }

    let mut global_coeff = CoeffMonomial::one();
    for w in &wires {
        global_coeff.mul_assign(&w.coeff);
    }
    Ok(EvalResult { wires, global_coeff, trace })
}

/// The wire states after `layer_index` layers; index 0 is the input row
/// and the last index equals the final evaluation.
pub fn state_at(d: &Diagram, q: &QMatrix, layer_index: usize) -> Result<Vec<WireState>, EvalError> {
    if layer_index > d.layers.len() {
        return Err(EvalError::LayerOutOfRange { index: layer_index, layers: d.layers.len() });
    }
    let result = evaluate(d, q)?;
    Ok(result.trace[layer_index].clone())
}
