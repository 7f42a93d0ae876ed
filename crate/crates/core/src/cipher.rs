//! The braiding secret-word protocol.
//!
//! Sender and receiver share a private key: a rational braiding matrix
//! over the vocabulary, a layered diagram, a layer/line choice selecting
//! a word `w` from that diagram, and a window of `m` consecutive
//! vocabulary indices starting at `p`. To send index `s` inside the
//! window, the sender blinds every window position with a random
//! positive rational `a_i != 1` except position `s`, which gets 1, and
//! multiplies each by the coefficient of the inverse crossing of that
//! position's generator over `w`. The receiver multiplies each received
//! value by the forward crossing coefficient of `w` over the same
//! generator; the two crossing factors cancel exactly, so the blinders
//! reappear and the unique value equal to 1 marks the secret index.
//!
//! All arithmetic is exact rational; the `d_i = 1` test never sees a
//! float.
//!
//! # Key file format
//!
//! ```text
//! key v1
//! window <m>
//! layer <t>
//! line <wire>
//! offset <p>
//! vocaboffset <r>
//! send-offset yes|no
//! qmatrix inline .. end qmatrix   (or: qmatrix path <file>)
//! diagram builtin <name>          (or: diagram path <file>, diagram inline .. end diagram)
//! ```
//!
//! Only the `qmatrix` and `diagram` entries are mandatory; `window`
//! defaults to the diagram's generator count, `layer` to the final
//! layer, `line` to the leftmost wire, `offset` to 1.
//!
//! # Cryptogram file format
//!
//! ```text
//! ct v1
//! p <int>        (present when the key sends the window offset along)
//! m <int>
//! c <i> <p/q>    (m lines, positive rationals)
//! ```

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::braid::{cross_coeff, Direction};
use crate::diagram::{parse_diagram, serialize_diagram, state_at, Diagram, EvalError, Gate, Layer};
use crate::fixtures;
use crate::scalar::{parse_rational, Gen, QMatrix, ScalarError, Word};
use crate::textfmt::{expect_header, meaningful_lines, parse_field, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CipherError {
    #[error("window size {m} must be at least 2 and at most the vocabulary size {n}")]
    BadWindow { n: u32, m: u32 },
    #[error("window [{p}, {last}] does not fit a vocabulary of {n} entries")]
    WindowOutOfVocabulary { p: i64, last: i64, n: u32 },
    #[error("the key matrix must be rational")]
    MatrixNotRational,
    #[error("key matrix entry ({row}, {col}) is not positive")]
    MatrixEntryNotPositive { row: Gen, col: Gen },
    #[error("layer {layer} out of range: the key diagram has {layers} layers")]
    BadLayer { layer: usize, layers: usize },
    #[error("line {line} out of range: layer {layer} has {wires} wires")]
    BadLine { line: usize, layer: usize, wires: usize },
    #[error("index {s} is outside the window [{p}, {last}]")]
    OutsideWindow { s: i64, p: i64, last: i64 },
    #[error("cryptogram carries {found} coefficients, the key window holds {expected}")]
    CryptogramLength { expected: u32, found: usize },
    #[error("no window index decodes to 1; the cryptogram does not match this key")]
    NoUnitIndex,
    #[error("indices {first} and {second} both decode to 1")]
    MultipleUnitIndices { first: i64, second: i64 },
    #[error("unknown builtin diagram `{0}`")]
    UnknownBuiltin(String),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Where a key component came from, so serialization can preserve the
/// reference instead of always inlining.
#[derive(Debug, Clone, PartialEq)]
pub enum DiagramSource {
    Inline(Diagram),
    Path { path: String, diagram: Diagram },
    Builtin { name: String, diagram: Diagram },
}

impl DiagramSource {
    pub fn diagram(&self) -> &Diagram {
        match self {
            DiagramSource::Inline(d) => d,
            DiagramSource::Path { diagram, .. } => diagram,
            DiagramSource::Builtin { diagram, .. } => diagram,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    Inline(QMatrix),
    Path { path: String, matrix: QMatrix },
}

impl MatrixSource {
    pub fn matrix(&self) -> &QMatrix {
        match self {
            MatrixSource::Inline(q) => q,
            MatrixSource::Path { matrix, .. } => matrix,
        }
    }
}

/// The private key material.
#[derive(Debug, Clone, PartialEq)]
pub struct PrivateKey {
    pub matrix: MatrixSource,
    pub diagram: DiagramSource,
    /// Layer index `t`; the word is read after this many layers.
    pub layer: usize,
    /// 1-based wire index at layer `t`.
    pub line: usize,
    /// First vocabulary index of the window (`p`).
    pub window_offset: i64,
    /// Window size `m`; also the generator count of the key diagram.
    pub window_size: u32,
    /// Private vocabulary shift (`r`).
    pub vocab_offset: i64,
    /// Whether cryptograms carry `p` along.
    pub send_offset: bool,
}

/// The transmitted coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Cryptogram {
    pub window_offset: Option<i64>,
    pub coefficients: Vec<BigRational>,
}

impl PrivateKey {
    pub fn q(&self) -> &QMatrix {
        self.matrix.matrix()
    }

    pub fn d(&self) -> &Diagram {
        self.diagram.diagram()
    }

    pub fn validate(&self) -> Result<(), CipherError> {
        let q = self.q();
        if !q.is_rational() {
            return Err(CipherError::MatrixNotRational);
        }
        for s in 1..=q.n() {
            for t in 1..=q.n() {
                if !q.rational_entry(s, t)?.is_positive() {
                    return Err(CipherError::MatrixEntryNotPositive { row: s, col: t });
                }
            }
        }
        if self.window_size < 1 || self.window_size > q.n() {
            return Err(CipherError::BadWindow { n: q.n(), m: self.window_size });
        }
        let last = self.window_offset + self.window_size as i64 - 1;
        if self.window_offset < 1 || last > q.n() as i64 {
            return Err(CipherError::WindowOutOfVocabulary { p: self.window_offset, last, n: q.n() });
        }
        if self.layer > self.d().layers.len() {
            return Err(CipherError::BadLayer { layer: self.layer, layers: self.d().layers.len() });
        }
        // reading the window word exercises the diagram and line checks
        self.window_word()?;
        Ok(())
    }

    /// The window submatrix: entry `(i, j)` is `q(p + i - 1, p + j - 1)`
    /// of the full vocabulary matrix.
    pub fn window_matrix_at(&self, p: i64) -> Result<QMatrix, CipherError> {
        let q = self.q();
        let m = self.window_size as i64;
        let last = p + m - 1;
        if p < 1 || last > q.n() as i64 {
            return Err(CipherError::WindowOutOfVocabulary { p, last, n: q.n() });
        }
        let mut rows = Vec::with_capacity(m as usize);
        for i in 0..m {
            let mut row = Vec::with_capacity(m as usize);
            for j in 0..m {
                row.push(q.rational_entry((p + i) as Gen, (p + j) as Gen)?.clone());
            }
            rows.push(row);
        }
        Ok(QMatrix::rational(rows)?)
    }

    pub fn window_matrix(&self) -> Result<QMatrix, CipherError> {
        self.window_matrix_at(self.window_offset)
    }

    /// The word carried by wire `line` after `layer` layers of the key
    /// diagram, in window-local generator indices.
    pub fn window_word(&self) -> Result<Word, CipherError> {
        let wq = self.window_matrix()?;
        let wires = state_at(self.d(), &wq, self.layer)?;
        if self.line < 1 || self.line > wires.len() {
            return Err(CipherError::BadLine { line: self.line, layer: self.layer, wires: wires.len() });
        }
        Ok(wires[self.line - 1].word.clone())
    }
}

// ---------------------------------------------------------------------------
// Key generation
// ---------------------------------------------------------------------------

fn random_positive_rational(rng: &mut ChaCha20Rng) -> BigRational {
    loop {
        let numer = rng.random_range(2u64..1 << 31);
        let denom = rng.random_range(2u64..1 << 31);
        let value = BigRational::new(BigInt::from(numer), BigInt::from(denom));
        if !value.is_one() {
            return value;
        }
    }
}

/// Generate a key: a fully random positive matrix over `n` vocabulary
/// entries (every entry different from 1) and the bundled ten-wire
/// diagram, or a generated interleaving diagram for other window sizes.
/// The same seed reproduces the key bit for bit.
pub fn keygen(n: u32, m: u32, seed: u64) -> Result<PrivateKey, CipherError> {
    if m < 2 || m > n {
        return Err(CipherError::BadWindow { n, m });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n as usize);
    for _ in 0..n {
        rows.push((0..n).map(|_| random_positive_rational(&mut rng)).collect());
    }
    let matrix = MatrixSource::Inline(QMatrix::rational(rows)?);

    let diagram = if m == 10 {
        DiagramSource::Builtin {
            name: "figure6".into(),
            diagram: parse_diagram(fixtures::FIGURE6_BD).expect("bundled diagram parses"),
        }
    } else {
        DiagramSource::Inline(interleave_diagram(m))
    };
    let layers = diagram.diagram().layers.len();

    let key = PrivateKey {
        matrix,
        diagram,
        layer: layers,
        line: 1,
        window_offset: 1,
        window_size: m,
        vocab_offset: 0,
        send_offset: true,
    };
    key.validate()?;
    Ok(key)
}

/// The word order the interleaving diagram produces: the center of the
/// window first, then pairs working outward, ending at `(1, m)`.
pub fn interleave_word(m: u32) -> Word {
    let core_left = (m + 1) / 2;
    let mut word = Word::new();
    word.push(core_left);
    if m % 2 == 0 {
        word.push(core_left + 1);
    }
    let core_right = if m % 2 == 0 { core_left + 1 } else { core_left };
    let mut k = 1;
    while core_left > k {
        word.push(core_left - k);
        word.push(core_right + k);
        k += 1;
    }
    word
}

#[derive(Debug, Clone, PartialEq)]
enum Entity {
    /// A singleton still working its way right to sit left of its
    /// partner; carries the generator it holds.
    Traveler(Gen),
    /// A settled singleton or merged word, a contiguous slice of the
    /// target output word.
    Block(Word),
}

/// Build a diagram on `m` input wires that interleaves the two halves of
/// the window into [`interleave_word`] order: wires left of the center
/// cross rightward one layer at a time, merge with their partner, and
/// the finished blocks fuse left to right.
pub fn interleave_diagram(m: u32) -> Diagram {
    let expected = interleave_word(m);
    let position = |g: Gen| expected.iter().position(|&x| x == g).expect("generator in word");
    let core_left = (m + 1) / 2;
    let partner = |j: Gen| m + 1 - j;

    let mut entities: Vec<Entity> = (1..=m)
        .map(|g| if g < core_left { Entity::Traveler(g) } else { Entity::Block(vec![g]) })
        .collect();
    let mut layers: Vec<Layer> = Vec::new();

    let mut layer_no = 0;
    while entities.len() > 1 {
        layer_no += 1;
        assert!(layer_no <= 4 * m as usize + 4, "interleave construction did not terminate");
        let active = |g: Gen| layer_no >= (core_left - g) as usize;

        let mut gates = Vec::new();
        let mut next: Vec<Entity> = Vec::new();
        let mut i = 0;
        while i < entities.len() {
            let pair = (entities.get(i), entities.get(i + 1));
            match pair {
                (Some(Entity::Traveler(j)), Some(Entity::Block(w))) if active(*j) => {
                    if *w == vec![partner(*j)] {
                        gates.push(Gate::Mul);
                        next.push(Entity::Block(vec![*j, partner(*j)]));
                    } else {
                        gates.push(Gate::Cross);
                        next.push(Entity::Block(w.clone()));
                        next.push(Entity::Traveler(*j));
                    }
                    i += 2;
                }
                (Some(Entity::Block(a)), Some(Entity::Block(b)))
                    if position(*a.last().expect("blocks are non-empty")) + 1 == position(b[0])
                        && !entities[..i].iter().any(|e| matches!(e, Entity::Traveler(_))) =>
                {
                    gates.push(Gate::Mul);
                    let mut merged = a.clone();
                    merged.extend(b.iter().copied());
                    next.push(Entity::Block(merged));
                    i += 2;
                }
                (Some(e), _) => {
                    gates.push(Gate::Id);
                    next.push(e.clone());
                    i += 1;
                }
                (None, _) => unreachable!("cursor within bounds"),
            }
        }
        // a layer of nothing but id gates would mean no progress
        assert!(gates.iter().any(|g| !matches!(g, Gate::Id)), "interleave construction stalled");
        layers.push(Layer { gates });
        entities = next;
    }

    Diagram { name: format!("interleave{m}"), inputs: (1..=m).collect(), layers }
}

// ---------------------------------------------------------------------------
// Encode / decode
// ---------------------------------------------------------------------------

/// The sender-side factor for window position `i`: the coefficient of
/// the inverse crossing of `v_i` over the window word.
fn sender_factor(wq: &QMatrix, w: &Word, i: Gen) -> Result<BigRational, CipherError> {
    Ok(wq.eval_rational(&cross_coeff(&[i], w, Direction::Inverse))?)
}

/// The receiver-side factor: the coefficient of the forward crossing of
/// the window word over `v_i`. Multiplied with the sender factor this is
/// exactly 1.
fn receiver_factor(wq: &QMatrix, w: &Word, i: Gen) -> Result<BigRational, CipherError> {
    Ok(wq.eval_rational(&cross_coeff(w, &[i], Direction::Forward))?)
}

/// Encode with explicit blinders (index order, one per window position;
/// the secret position must hold 1 and every other position must not).
pub fn encode_with_blinders(
    key: &PrivateKey,
    blinders: &[BigRational],
) -> Result<Cryptogram, CipherError> {
    let m = key.window_size;
    if blinders.len() != m as usize {
        return Err(CipherError::CryptogramLength { expected: m, found: blinders.len() });
    }
    let wq = key.window_matrix()?;
    let w = key.window_word()?;
    let mut coefficients = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let factor = sender_factor(&wq, &w, i)?;
        coefficients.push(&blinders[(i - 1) as usize] * factor);
    }
    Ok(Cryptogram {
        window_offset: key.send_offset.then_some(key.window_offset),
        coefficients,
    })
}

/// Encode vocabulary index `s`; the blinders come from the seed.
pub fn encode(key: &PrivateKey, s: i64, seed: u64) -> Result<Cryptogram, CipherError> {
    let p = key.window_offset;
    let m = key.window_size as i64;
    let s_window = s - key.vocab_offset;
    if s_window < p || s_window > p + m - 1 {
        return Err(CipherError::OutsideWindow { s, p: p + key.vocab_offset, last: p + m - 1 + key.vocab_offset });
    }
    let secret = (s_window - p) as usize; // 0-based window slot
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let blinders: Vec<BigRational> = (0..m as usize)
        .map(|i| if i == secret { BigRational::one() } else { random_positive_rational(&mut rng) })
        .collect();
    encode_with_blinders(key, &blinders)
}

/// The receiver's `d` values: each transmitted coefficient times the
/// forward crossing factor. Exact cancellation returns the blinders.
pub fn decode_values(key: &PrivateKey, cg: &Cryptogram) -> Result<Vec<BigRational>, CipherError> {
    let m = key.window_size;
    if cg.coefficients.len() != m as usize {
        return Err(CipherError::CryptogramLength { expected: m, found: cg.coefficients.len() });
    }
    let p = cg.window_offset.unwrap_or(key.window_offset);
    let wq = key.window_matrix_at(p)?;
    let w = key.window_word()?;
    let mut values = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let factor = receiver_factor(&wq, &w, i)?;
        values.push(&cg.coefficients[(i - 1) as usize] * factor);
    }
    Ok(values)
}

/// Recover the vocabulary index: the unique window position whose `d`
/// value is exactly 1.
pub fn decode(key: &PrivateKey, cg: &Cryptogram) -> Result<i64, CipherError> {
    let p = cg.window_offset.unwrap_or(key.window_offset);
    let values = decode_values(key, cg)?;
    let mut found: Option<i64> = None;
    for (idx, value) in values.iter().enumerate() {
        if value.is_one() {
            let s = p + idx as i64;
            if let Some(first) = found {
                return Err(CipherError::MultipleUnitIndices { first, second: s });
            }
            found = Some(s);
        }
    }
    found.ok_or(CipherError::NoUnitIndex).map(|s| s + key.vocab_offset)
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

pub fn serialize_key(key: &PrivateKey) -> String {
    let mut out = String::from("key v1\n");
    out.push_str(&format!("window {}\n", key.window_size));
    out.push_str(&format!("layer {}\n", key.layer));
    out.push_str(&format!("line {}\n", key.line));
    out.push_str(&format!("offset {}\n", key.window_offset));
    out.push_str(&format!("vocaboffset {}\n", key.vocab_offset));
    out.push_str(&format!("send-offset {}\n", if key.send_offset { "yes" } else { "no" }));
    match &key.matrix {
        MatrixSource::Inline(q) => {
            out.push_str("qmatrix inline\n");
            out.push_str(&q.serialize());
            out.push_str("end qmatrix\n");
        }
        MatrixSource::Path { path, .. } => out.push_str(&format!("qmatrix path {path}\n")),
    }
    match &key.diagram {
        DiagramSource::Inline(d) => {
            out.push_str("diagram inline\n");
            out.push_str(&serialize_diagram(d));
            out.push_str("end diagram\n");
        }
        DiagramSource::Path { path, .. } => out.push_str(&format!("diagram path {path}\n")),
        DiagramSource::Builtin { name, .. } => out.push_str(&format!("diagram builtin {name}\n")),
    }
    out
}

fn read_relative(base: Option<&Path>, path: &str) -> Result<String, CipherError> {
    let full = match base {
        Some(dir) => dir.join(path),
        None => Path::new(path).to_path_buf(),
    };
    std::fs::read_to_string(&full)
        .map_err(|e| CipherError::Io { path: full.display().to_string(), message: e.to_string() })
}

/// Parse a key file. `base` resolves `path` references relative to the
/// key's own location.
pub fn parse_key(text: &str, base: Option<&Path>) -> Result<PrivateKey, CipherError> {
    let mut lines = meaningful_lines(text).peekable();
    expect_header(&mut lines, "key")?;

    let mut window: Option<u32> = None;
    let mut layer: Option<usize> = None;
    let mut line_no: Option<usize> = None;
    let mut offset: i64 = 1;
    let mut vocab_offset: i64 = 0;
    let mut send_offset = true;
    let mut matrix: Option<MatrixSource> = None;
    let mut diagram: Option<DiagramSource> = None;

    while let Some((ln, line)) = lines.next() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[..] {
            ["window", v] => window = Some(parse_field(ln, "window size", v)?),
            ["layer", v] => layer = Some(parse_field(ln, "layer index", v)?),
            ["line", v] => line_no = Some(parse_field(ln, "line index", v)?),
            ["offset", v] => offset = parse_field(ln, "window offset", v)?,
            ["vocaboffset", v] => vocab_offset = parse_field(ln, "vocabulary offset", v)?,
            ["send-offset", v] => {
                send_offset = match v {
                    "yes" => true,
                    "no" => false,
                    _ => return Err(ParseError::new(ln, format!("send-offset must be yes or no, found `{v}`")).into()),
                }
            }
            ["qmatrix", "inline"] => {
                let mut block = String::new();
                loop {
                    match lines.next() {
                        Some((_, "end qmatrix")) => break,
                        Some((_, inner)) => {
                            block.push_str(inner);
                            block.push('\n');
                        }
                        None => return Err(ParseError::new(ln, "unterminated qmatrix block").into()),
                    }
                }
                matrix = Some(MatrixSource::Inline(QMatrix::parse(&block)?));
            }
            ["qmatrix", "path", p] => {
                let q = QMatrix::parse(&read_relative(base, p)?)?;
                matrix = Some(MatrixSource::Path { path: p.to_string(), matrix: q });
            }
            ["diagram", "inline"] => {
                let mut block = String::new();
                loop {
                    match lines.next() {
                        Some((_, "end diagram")) => break,
                        Some((_, inner)) => {
                            block.push_str(inner);
                            block.push('\n');
                        }
                        None => return Err(ParseError::new(ln, "unterminated diagram block").into()),
                    }
                }
                diagram = Some(DiagramSource::Inline(parse_diagram(&block)?));
            }
            ["diagram", "path", p] => {
                let d = parse_diagram(&read_relative(base, p)?)?;
                diagram = Some(DiagramSource::Path { path: p.to_string(), diagram: d });
            }
            ["diagram", "builtin", name] => {
                let text = fixtures::diagram_text(name).ok_or_else(|| CipherError::UnknownBuiltin(name.to_string()))?;
                diagram = Some(DiagramSource::Builtin {
                    name: name.to_string(),
                    diagram: parse_diagram(text).expect("bundled diagram parses"),
                });
            }
            _ => return Err(ParseError::new(ln, format!("unrecognized key line `{line}`")).into()),
        }
    }

    let matrix = matrix.ok_or_else(|| ParseError::new(1, "key has no qmatrix"))?;
    let diagram = diagram.ok_or_else(|| ParseError::new(1, "key has no diagram"))?;
    let max_gen = diagram.diagram().inputs.iter().copied().max().unwrap_or(0);
    let key = PrivateKey {
        layer: layer.unwrap_or(diagram.diagram().layers.len()),
        line: line_no.unwrap_or(1),
        window_offset: offset,
        window_size: window.unwrap_or(max_gen),
        vocab_offset,
        send_offset,
        matrix,
        diagram,
    };
    key.validate()?;
    Ok(key)
}

pub fn serialize_cryptogram(cg: &Cryptogram) -> String {
    let mut out = String::from("ct v1\n");
    if let Some(p) = cg.window_offset {
        out.push_str(&format!("p {p}\n"));
    }
    out.push_str(&format!("m {}\n", cg.coefficients.len()));
    for (i, c) in cg.coefficients.iter().enumerate() {
        out.push_str(&format!("c {} {}\n", i + 1, c));
    }
    out
}

pub fn parse_cryptogram(text: &str) -> Result<Cryptogram, CipherError> {
    let mut lines = meaningful_lines(text).peekable();
    expect_header(&mut lines, "ct")?;

    let mut window_offset = None;
    if let Some(&(ln, line)) = lines.peek() {
        if let ["p", v] = line.split_whitespace().collect::<Vec<_>>()[..] {
            window_offset = Some(parse_field(ln, "window offset", v)?);
            lines.next();
        }
    }

    let (ln, line) = lines.next().ok_or_else(|| ParseError::new(1, "missing `m` line"))?;
    let m: usize = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["m", v] => parse_field(ln, "coefficient count", v)?,
        _ => return Err(ParseError::new(ln, format!("expected `m <int>`, found `{line}`")).into()),
    };

    let mut coefficients = Vec::with_capacity(m);
    let mut last_ln = ln;
    for expected in 1..=m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| ParseError::new(last_ln, format!("missing coefficient {expected}")))?;
        last_ln = ln;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[..] {
            ["c", idx, value] => {
                let idx: usize = parse_field(ln, "coefficient index", idx)?;
                if idx != expected {
                    return Err(ParseError::new(ln, format!("expected coefficient {expected}, found {idx}")).into());
                }
                let value = parse_rational(ln, value)?;
                if !value.is_positive() {
                    return Err(ParseError::new(ln, format!("coefficient {idx} must be positive, found {value}")).into());
                }
                coefficients.push(value);
            }
            _ => return Err(ParseError::new(ln, format!("expected `c <i> <p/q>`, found `{line}`")).into()),
        }
    }
    if let Some((ln, line)) = lines.next() {
        return Err(ParseError::new(ln, format!("unexpected trailing line `{line}`")).into());
    }
    Ok(Cryptogram { window_offset, coefficients })
}
