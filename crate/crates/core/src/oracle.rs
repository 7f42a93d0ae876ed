//! An independent cross-check for the diagram evaluator.
//!
//! Instead of accumulating symbolic monomials, this path treats each gate
//! as an explicit linear operator on the basis of word tuples (words
//! capped at a truncation length): a crossing is a scaled basis
//! permutation whose scale is read straight off the braiding matrix, a
//! multiplication is the concatenation embedding, and a box is a basis
//! relabeling. Layers are composed by applying them in order to a sparse
//! vector seeded with the input basis tuple. For any diagram the result
//! must land on a single basis tuple; that tuple and its amplitude are
//! compared against [`crate::diagram::evaluate`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{validate, Diagram, Gate, Issue};
use crate::scalar::{Gen, NumericMode, QMatrix, ScalarError, ScalarValue, Word};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("diagram `{name}` is invalid: {}", issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid { name: String, issues: Vec<Issue> },
    #[error("layer {layer}: word of length {length} exceeds the truncation length {truncation}")]
    TruncationExceeded { layer: usize, length: usize, truncation: usize },
    #[error("layer {layer}: box {from}>{to} applied to a wire not carrying [{from}]")]
    BoxOnWrongWord { layer: usize, from: Gen, to: Gen },
    #[error("result is not a single basis tuple ({terms} terms)")]
    NotBasisVector { terms: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The single nonzero entry of the composed operator applied to the
/// input basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub wires: Vec<Word>,
    pub scalar: ScalarValue,
}

type SparseVector = BTreeMap<Vec<Word>, ScalarValue>;

fn unit_scalar(q: &QMatrix, mode: NumericMode) -> ScalarValue {
    match (mode, q.order()) {
        (NumericMode::Exact, None) => ScalarValue::one_rational(),
        (NumericMode::Exact, Some(order)) => ScalarValue::Cyclotomic { class: 0, order },
        (NumericMode::Float, _) => ScalarValue::Float { re: 1.0, im: 0.0 },
    }
}

/// The crossing scale for basis words `u` over `w`: the product of the
/// matrix entries of every letter pair, read directly off the matrix.
fn crossing_scale(
    q: &QMatrix,
    u: &[Gen],
    w: &[Gen],
    invert: bool,
    mode: NumericMode,
) -> Result<ScalarValue, ScalarError> {
    let mut acc = unit_scalar(q, mode);
    for &a in u {
        for &b in w {
            let entry = if invert {
                q.entry_scalar(b, a, mode)?.recip()?
            } else {
                q.entry_scalar(a, b, mode)?
            };
            acc = acc.mul(&entry)?;
        }
    }
    Ok(acc)
}

/// Apply the composed layer operators to the input basis vector and
/// return the resulting basis tuple with its amplitude.
pub fn dense_oracle(
    d: &Diagram,
    q: &QMatrix,
    truncation: usize,
    mode: NumericMode,
) -> Result<OracleOutcome, OracleError> {
    let issues = validate(d, q);
    if !issues.is_empty() {
        return Err(OracleError::Invalid { name: d.name.clone(), issues });
    }

    let seed: Vec<Word> = d.inputs.iter().map(|&g| vec![g]).collect();
    let mut state: SparseVector = BTreeMap::new();
    state.insert(seed, unit_scalar(q, mode));

    for (idx, layer) in d.layers.iter().enumerate() {
        let layer_no = idx + 1;
        let mut next: SparseVector = BTreeMap::new();
        for (tuple, amplitude) in state {
            let mut out_tuple: Vec<Word> = Vec::with_capacity(layer.output_arity());
            let mut out_amp = amplitude;
            let mut cursor = tuple.into_iter();
            for gate in &layer.gates {
                match gate {
                    Gate::Id => out_tuple.push(cursor.next().expect("arity validated")),
                    Gate::Cross => {
                        let u = cursor.next().expect("arity validated");
                        let w = cursor.next().expect("arity validated");
                        out_amp = out_amp.mul(&crossing_scale(q, &u, &w, false, mode)?)?;
                        out_tuple.push(w);
                        out_tuple.push(u);
                    }
                    Gate::CrossInv => {
                        let u = cursor.next().expect("arity validated");
                        let w = cursor.next().expect("arity validated");
                        out_amp = out_amp.mul(&crossing_scale(q, &u, &w, true, mode)?)?;
                        out_tuple.push(w);
                        out_tuple.push(u);
                    }
                    Gate::Mul => {
                        let mut u = cursor.next().expect("arity validated");
                        let w = cursor.next().expect("arity validated");
                        u.extend(w);
                        if u.len() > truncation {
                            return Err(OracleError::TruncationExceeded {
                                layer: layer_no,
                                length: u.len(),
                                truncation,
                            });
                        }
                        out_tuple.push(u);
                    }
                    Gate::Box { from, to } => {
                        let u = cursor.next().expect("arity validated");
                        if u != vec![*from] {
                            return Err(OracleError::BoxOnWrongWord { layer: layer_no, from: *from, to: *to });
                        }
                        out_tuple.push(vec![*to]);
                    }
                }
            }
            // diagonal gates map basis tuples to distinct basis tuples,
            // so amplitudes never need to be summed
            if next.insert(out_tuple, out_amp).is_some() {
                return Err(OracleError::NotBasisVector { terms: 2 });
            }
        }
        state = next;
    }

    if state.len() != 1 {
        return Err(OracleError::NotBasisVector { terms: state.len() });
    }
    let (wires, scalar) = state.into_iter().next().expect("checked length");
    Ok(OracleOutcome { wires, scalar })
}
