//! Command-line front end: evaluate diagrams, run the law checkers,
//! decode design attributes, and drive the secret-word protocol.
//!
//! Inputs are file paths or the names of bundled fixtures (`figure2`,
//! `coca`, ...). Exit codes are stable: 0 success, 1 validation or check
//! failure, 2 parse error, 3 decode failure.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braidesign::braid::{
    check_box_naturality, check_inverse, check_ybe, yd_braiding_equals_diagonal, yd_module_from_q,
    BoxMorphism, BraidError,
};
use braidesign::cipher::{
    decode, encode, keygen, parse_cryptogram, parse_key, serialize_cryptogram, serialize_key,
    CipherError, Cryptogram, PrivateKey,
};
use braidesign::design::{
    decode_brightness, decode_mirror, decode_size, render_word, ColorWheel, DesignError, ShapeVocabulary,
};
use braidesign::diagram::{evaluate, parse_diagram, Diagram, EvalError, EvalResult};
use braidesign::fixtures;
use braidesign::scalar::{Gen, NumericMode, QMatrix, QMode};

#[derive(Parser)]
#[command(
    name = "braidesign",
    version,
    about = "Layered braiding diagrams: evaluation, design decoding, and a braiding cipher"
)]
struct Cli {
    /// Seed for every randomized operation; identical seeds give
    /// identical outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Numeric backend for printed coefficients.
    #[arg(long, global = true, value_enum)]
    numeric: Option<NumericFlag>,

    /// Suppress symbolic coefficients and other secondary output.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NumericFlag {
    Rational,
    Cyclotomic,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a diagram under a braiding matrix.
    Eval {
        /// Diagram file or bundled name.
        diagram: String,
        /// Braiding matrix file or bundled name.
        qmatrix: String,
        /// Print the wire states after every layer.
        #[arg(long)]
        trace: bool,
    },
    /// Run the exhaustive law checkers on a matrix.
    Check {
        /// Braiding matrix file or bundled name.
        qmatrix: String,
        /// Yang-Baxter equation on all basis triples.
        #[arg(long)]
        ybe: bool,
        /// Inverse crossing laws on all basis pairs.
        #[arg(long)]
        inverse: bool,
        /// Module construction against the diagonal crossing.
        #[arg(long)]
        yd: bool,
        /// Box naturality for a relabeling FROM TO.
        #[arg(long = "box", num_args = 2, value_names = ["FROM", "TO"])]
        box_check: Option<Vec<Gen>>,
    },
    /// Decode an evaluation as a design attribute.
    Design {
        #[command(subcommand)]
        kind: DesignCommand,
    },
    /// Generate a private key.
    Keygen {
        /// Vocabulary size n.
        #[arg(long)]
        vocab_size: u32,
        /// Window size m.
        #[arg(long, default_value_t = 10)]
        window: u32,
        /// Write the key here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a vocabulary index into a cryptogram.
    Encrypt {
        #[arg(long)]
        key: String,
        /// The secret vocabulary index.
        #[arg(long, conflicts_with = "word")]
        index: Option<i64>,
        /// The secret word; requires --vocab.
        #[arg(long, requires = "vocab")]
        word: Option<String>,
        /// Vocabulary file or bundled name (for --word).
        #[arg(long)]
        vocab: Option<String>,
        /// Write the cryptogram here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the vocabulary index from a cryptogram.
    Decrypt {
        #[arg(long)]
        key: String,
        #[arg(long)]
        ct: String,
        /// Vocabulary file or bundled name, to print the word itself.
        #[arg(long)]
        vocab: Option<String>,
    },
}

#[derive(Subcommand)]
enum DesignCommand {
    /// The root-of-unity class of the result picks a color.
    Color {
        diagram: String,
        qmatrix: String,
        vocab: String,
        /// Comma-separated color names, one per class; defaults to the
        /// bundled seven-color wheel when the matrix order is 7.
        #[arg(long, value_delimiter = ',')]
        wheel: Option<Vec<String>>,
    },
    /// The scalar of the result is a scale factor.
    Size { diagram: String, qmatrix: String },
    /// Per-wire coefficients are brightness units.
    Brightness { diagram: String, qmatrix: String, vocab: String },
    /// Scaling crossings mark mirrored components.
    Mirror {
        diagram: String,
        qmatrix: String,
        vocab: String,
        /// Comma-separated generator indices that have mirrored copies.
        #[arg(long, value_delimiter = ',', required = true)]
        mirrored: Vec<Gen>,
    },
}

// ---------------------------------------------------------------------------
// Error handling and exit codes
// ---------------------------------------------------------------------------

enum CliError {
    /// Exit 2: malformed input text.
    Parse(String),
    /// Exit 1: structural or check failure.
    Validation(String),
    /// Exit 3: a cryptogram that does not decode.
    Decode(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Decode(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Decode(m) => m,
        }
    }
}

impl From<braidesign::textfmt::ParseError> for CliError {
    fn from(e: braidesign::textfmt::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<braidesign::scalar::ScalarError> for CliError {
    fn from(e: braidesign::scalar::ScalarError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CipherError> for CliError {
    fn from(e: CipherError) -> Self {
        match e {
            CipherError::NoUnitIndex | CipherError::MultipleUnitIndices { .. } => CliError::Decode(e.to_string()),
            CipherError::Parse(p) => CliError::Parse(p.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

/// Read an input by path, falling back to the bundled fixture table.
fn load_text(
    arg: &str,
    kind: &str,
    builtin: fn(&str) -> Option<&'static str>,
) -> Result<(String, Option<PathBuf>), CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {kind} `{arg}`: {e}")))?;
        return Ok((text, Some(path.to_path_buf())));
    }
    if let Some(text) = builtin(arg) {
        return Ok((text.to_string(), None));
    }
    Err(CliError::Parse(format!("{kind} `{arg}` is neither a file nor a bundled name")))
}

fn load_diagram(arg: &str) -> Result<Diagram, CliError> {
    let (text, _) = load_text(arg, "diagram", fixtures::diagram_text)?;
    Ok(parse_diagram(&text)?)
}

fn load_qmatrix(arg: &str) -> Result<QMatrix, CliError> {
    let (text, _) = load_text(arg, "qmatrix", fixtures::qmatrix_text)?;
    Ok(QMatrix::parse(&text)?)
}

fn load_vocab(arg: &str) -> Result<ShapeVocabulary, CliError> {
    let (text, _) = load_text(arg, "vocab", fixtures::vocab_text)?;
    Ok(ShapeVocabulary::parse(&text)?)
}

fn load_key(arg: &str) -> Result<PrivateKey, CliError> {
    let (text, path) = load_text(arg, "key", fixtures::key_text)?;
    let base = path.as_deref().and_then(Path::parent);
    Ok(parse_key(&text, base)?)
}

fn load_cryptogram(arg: &str) -> Result<Cryptogram, CliError> {
    let (text, _) = load_text(arg, "cryptogram", fixtures::cryptogram_text)?;
    Ok(parse_cryptogram(&text)?)
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn numeric_mode(flag: Option<NumericFlag>, q: &QMatrix) -> Result<NumericMode, CliError> {
    match (flag, q.mode()) {
        (None, _) => Ok(NumericMode::Exact),
        (Some(NumericFlag::Float), _) => Ok(NumericMode::Float),
        (Some(NumericFlag::Rational), QMode::Rational) => Ok(NumericMode::Exact),
        (Some(NumericFlag::Cyclotomic), QMode::Cyclotomic { .. } | QMode::Graded { .. }) => Ok(NumericMode::Exact),
        (Some(NumericFlag::Rational), mode) => Err(CliError::Validation(format!(
            "--numeric rational needs a rational matrix, this one is {}",
            mode.label()
        ))),
        (Some(NumericFlag::Cyclotomic), mode) => Err(CliError::Validation(format!(
            "--numeric cyclotomic needs a cyclotomic matrix, this one is {}",
            mode.label()
        ))),
    }
}

fn word_line(word: &[Gen]) -> String {
    word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_eval(cli: &Cli, diagram: &str, qmatrix: &str, trace: bool) -> Result<(), CliError> {
    let d = load_diagram(diagram)?;
    let q = load_qmatrix(qmatrix)?;
    let mode = numeric_mode(cli.numeric, &q)?;
    let result = evaluate(&d, &q)?;

    if trace && !cli.quiet {
        for (t, wires) in result.trace.iter().enumerate() {
            let states: Vec<String> = wires.iter().map(|w| w.to_string()).collect();
            println!("layer {t}: {}", states.join(" | "));
        }
    }
    for wire in &result.wires {
        println!("word: {}", word_line(&wire.word));
        if !cli.quiet {
            println!("symbolic: {}", wire.coeff);
        }
        println!("coeff: {}", q.eval(&wire.coeff, mode)?);
    }
    if result.wires.len() > 1 {
        if !cli.quiet {
            println!("global symbolic: {}", result.global_coeff);
        }
        println!("global coeff: {}", q.eval(&result.global_coeff, mode)?);
    }
    Ok(())
}

fn cmd_check(
    qmatrix: &str,
    ybe: bool,
    inverse: bool,
    yd: bool,
    box_check: Option<&[Gen]>,
) -> Result<(), CliError> {
    let q = load_qmatrix(qmatrix)?;
    let run_all = !ybe && !inverse && !yd && box_check.is_none();
    let mut all_pass = true;

    let mut reports = Vec::new();
    if ybe || run_all {
        reports.push(check_ybe(&q));
    }
    if inverse || run_all {
        reports.push(check_inverse(&q));
    }
    if yd || run_all {
        reports.push(yd_braiding_equals_diagonal(&yd_module_from_q(&q), &q));
    }
    if let Some(pair) = box_check {
        let f = BoxMorphism::new(pair[0], pair[1]);
        match check_box_naturality(&q, &f) {
            Ok(report) => reports.push(report),
            Err(BraidError::InadmissibleBox { from, to, differs }) => {
                println!("box {from}>{to}: inadmissible (row or column {differs} differs)");
                all_pass = false;
            }
            Err(other) => return Err(other.into()),
        }
    }

    for report in &reports {
        println!("{report}");
        for violation in report.violations.iter().take(5) {
            println!("  {violation}");
        }
        all_pass &= report.pass();
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Validation("one or more checks failed".into()))
    }
}

fn eval_for_design(diagram: &str, qmatrix: &str) -> Result<(QMatrix, EvalResult), CliError> {
    let d = load_diagram(diagram)?;
    let q = load_qmatrix(qmatrix)?;
    let result = evaluate(&d, &q)?;
    Ok((q, result))
}

fn cmd_design(cli: &Cli, kind: &DesignCommand) -> Result<(), CliError> {
    match kind {
        DesignCommand::Color { diagram, qmatrix, vocab, wheel } => {
            let (q, result) = eval_for_design(diagram, qmatrix)?;
            let v = load_vocab(vocab)?;
            let wheel = match wheel {
                Some(names) => ColorWheel::new(names.clone()),
                None if q.order() == Some(7) => ColorWheel::default_seven(),
                None => {
                    return Err(CliError::Validation(
                        "no bundled wheel for this matrix order; pass --wheel".into(),
                    ))
                }
            };
            let value = q.eval(&result.global_coeff, NumericMode::Exact)?;
            let color = wheel.decode(&value)?;
            if !cli.quiet {
                for wire in &result.wires {
                    println!("shapes: {}", render_word(&v, &wire.word)?.join(", "));
                }
            }
            println!("color: {color}");
        }
        DesignCommand::Size { diagram, qmatrix } => {
            let (q, result) = eval_for_design(diagram, qmatrix)?;
            let value = q.eval(&result.global_coeff, NumericMode::Exact)?;
            let scale = decode_size(&value)?;
            println!("scale: {scale}");
        }
        DesignCommand::Brightness { diagram, qmatrix, vocab } => {
            let (q, result) = eval_for_design(diagram, qmatrix)?;
            let v = load_vocab(vocab)?;
            for (name, value) in decode_brightness(&result.wires, &q, &v)? {
                println!("{name}: {value} unit");
            }
        }
        DesignCommand::Mirror { diagram, qmatrix, vocab, mirrored } => {
            let (q, result) = eval_for_design(diagram, qmatrix)?;
            let v = load_vocab(vocab)?;
            let mirrored: BTreeSet<Gen> = mirrored.iter().copied().collect();
            for part in decode_mirror(&result, &mirrored, &v, &q)? {
                println!("{}", part.label());
            }
        }
    }
    Ok(())
}

fn cmd_keygen(cli: &Cli, vocab_size: u32, window: u32, out: Option<&Path>) -> Result<(), CliError> {
    let key = keygen(vocab_size, window, cli.seed)?;
    write_or_print(out, &serialize_key(&key))?;
    if out.is_some() && !cli.quiet {
        eprintln!("key written ({vocab_size} x {vocab_size} matrix, window {window})");
    }
    Ok(())
}

fn cmd_encrypt(
    cli: &Cli,
    key: &str,
    index: Option<i64>,
    word: Option<&str>,
    vocab: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let key = load_key(key)?;
    let s = match (index, word) {
        (Some(s), None) => s,
        (None, Some(w)) => {
            let v = load_vocab(vocab.expect("clap enforces --vocab with --word"))?;
            v.index_of(w)
                .ok_or_else(|| CliError::Validation(format!("word `{w}` is not in the vocabulary")))?
        }
        _ => return Err(CliError::Validation("pass exactly one of --index or --word".into())),
    };
    let cg = encode(&key, s, cli.seed)?;
    write_or_print(out, &serialize_cryptogram(&cg))
}

fn cmd_decrypt(key: &str, ct: &str, vocab: Option<&str>) -> Result<(), CliError> {
    let key = load_key(key)?;
    let cg = load_cryptogram(ct)?;
    let index = decode(&key, &cg)?;
    println!("index: {index}");
    if let Some(vocab) = vocab {
        let v = load_vocab(vocab)?;
        if index >= 1 && index <= i64::from(u32::MAX) {
            println!("word: {}", v.lookup(index as Gen)?);
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval { diagram, qmatrix, trace } => cmd_eval(cli, diagram, qmatrix, *trace),
        Command::Check { qmatrix, ybe, inverse, yd, box_check } => {
            cmd_check(qmatrix, *ybe, *inverse, *yd, box_check.as_deref())
        }
        Command::Design { kind } => cmd_design(cli, kind),
        Command::Keygen { vocab_size, window, out } => cmd_keygen(cli, *vocab_size, *window, out.as_deref()),
        Command::Encrypt { key, index, word, vocab, out } => {
            cmd_encrypt(cli, key, *index, word.as_deref(), vocab.as_deref(), out.as_deref())
        }
        Command::Decrypt { key, ct, vocab } => cmd_decrypt(key, ct, vocab.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
