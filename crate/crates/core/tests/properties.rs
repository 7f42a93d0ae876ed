//! Cross-module invariants, exercised with seeded randomness so every
//! run checks the same cases.
//!
//! Covered here:
//! - the coefficient monoid: group laws and the evaluation homomorphism,
//! - crossing laws: swap symmetry, letterwise factorization, exhaustive
//!   Yang-Baxter / inverse / module checks over random matrices,
//! - box naturality whenever admissibility holds,
//! - diagram-level identities: crossing involution, identity-layer
//!   insertion, global/local coefficient coherence,
//! - agreement between the evaluator and the linear-operator oracle,
//! - cipher cancellation on random keys.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use braidesign::braid::{
    admissible_box, box_naturality_report, braid, braid_inverse, check_inverse, check_ybe, cross_coeff,
    yd_braiding_equals_diagonal, yd_module_from_q, Direction, WireState,
};
use braidesign::cipher::{decode, encode, keygen};
use braidesign::design::{ColorWheel, ShapeVocabulary};
use braidesign::diagram::{evaluate, parse_diagram, serialize_diagram, validate, Diagram, Gate, Layer};
use braidesign::fixtures;
use braidesign::oracle::dense_oracle;
use braidesign::scalar::{CoeffMonomial, Gen, NumericMode, QMatrix, ScalarValue, Word};

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A random rational matrix with small nonzero positive entries.
fn random_rational_q(rng: &mut ChaCha20Rng, n: u32) -> QMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| big(rng.random_range(1..=9), rng.random_range(1..=9)))
                .collect()
        })
        .collect();
    QMatrix::rational(rows).unwrap()
}

fn random_monomial(rng: &mut ChaCha20Rng, n: Gen) -> CoeffMonomial {
    let terms = rng.random_range(0..6);
    CoeffMonomial::from_pairs((0..terms).map(|_| {
        (
            (rng.random_range(1..=n), rng.random_range(1..=n)),
            rng.random_range(-3..=3),
        )
    }))
}

fn random_word(rng: &mut ChaCha20Rng, n: Gen, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random_range(1..=n)).collect()
}

/// A random box-free diagram: up to `max_wires` inputs and `max_layers`
/// layers of id / cross / inverse-cross / multiply gates.
fn random_diagram(rng: &mut ChaCha20Rng, n: Gen, max_wires: usize, max_layers: usize) -> Diagram {
    let wires = rng.random_range(1..=max_wires);
    let inputs: Word = (0..wires).map(|_| rng.random_range(1..=n)).collect();
    let layer_count = rng.random_range(0..=max_layers);
    let mut width = wires;
    let mut layers = Vec::new();
    for _ in 0..layer_count {
        if width == 0 {
            break;
        }
        let mut gates = Vec::new();
        let mut remaining = width;
        while remaining > 0 {
            if remaining >= 2 && rng.random_range(0..100) < 60 {
                gates.push(match rng.random_range(0..3) {
                    0 => Gate::Cross,
                    1 => Gate::CrossInv,
                    _ => Gate::Mul,
                });
                remaining -= 2;
            } else {
                gates.push(Gate::Id);
                remaining -= 1;
            }
        }
        let layer = Layer { gates };
        width = layer.output_arity();
        layers.push(layer);
    }
    Diagram { name: "random".into(), inputs, layers }
}

// ---------------------------------------------------------------------------
// Coefficient monoid
// ---------------------------------------------------------------------------

#[test]
fn monomials_form_a_commutative_group() {
    let mut rng = rng(11);
    for _ in 0..200 {
        let a = random_monomial(&mut rng, 6);
        let b = random_monomial(&mut rng, 6);
        let c = random_monomial(&mut rng, 6);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&CoeffMonomial::one()), a);
        assert!(a.mul(&a.inv()).is_one());
    }
}

#[test]
fn evaluation_is_a_homomorphism_rational() {
    let mut rng = rng(12);
    for _ in 0..50 {
        let q = random_rational_q(&mut rng, 5);
        let a = random_monomial(&mut rng, 5);
        let b = random_monomial(&mut rng, 5);
        let lhs = q.eval_rational(&a.mul(&b)).unwrap();
        let rhs = q.eval_rational(&a).unwrap() * q.eval_rational(&b).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn evaluation_is_a_homomorphism_cyclotomic_and_float() {
    let mut rng = rng(13);
    for trial in 0..50 {
        let n = rng.random_range(2..=6);
        let order = rng.random_range(2..=12);
        let grading: Vec<i64> = (0..n).map(|_| rng.random_range(-5..=5)).collect();
        let q = QMatrix::graded(n, order, grading).unwrap();
        let a = random_monomial(&mut rng, n);
        let b = random_monomial(&mut rng, n);

        let lhs = q.eval(&a.mul(&b), NumericMode::Exact).unwrap();
        let rhs = q
            .eval(&a, NumericMode::Exact)
            .unwrap()
            .mul(&q.eval(&b, NumericMode::Exact).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs, "trial {trial}");

        let lhs_f = q.eval(&a.mul(&b), NumericMode::Float).unwrap();
        let rhs_f = q
            .eval(&a, NumericMode::Float)
            .unwrap()
            .mul(&q.eval(&b, NumericMode::Float).unwrap())
            .unwrap();
        assert!(lhs_f.approx_eq(&rhs_f, 1e-9), "trial {trial}: {lhs_f} vs {rhs_f}");
    }
}

#[test]
fn cyclotomic_class_matches_unit_circle_floats() {
    let mut rng = rng(14);
    for _ in 0..80 {
        let order = rng.random_range(1..=16);
        let n = rng.random_range(1..=6);
        let grading: Vec<i64> = (0..n).map(|_| rng.random_range(-4..=7)).collect();
        let q = QMatrix::graded(n, order, grading).unwrap();
        let m = random_monomial(&mut rng, n);
        let exact = q.eval(&m, NumericMode::Exact).unwrap();
        let float = q.eval(&m, NumericMode::Float).unwrap();
        // the float product of unit-circle factors must land on the
        // reduced class's cosine/sine pair
        assert!(exact.approx_eq(&float, 1e-9), "{exact} vs {float}");
    }
}

// ---------------------------------------------------------------------------
// Crossing laws
// ---------------------------------------------------------------------------

#[test]
fn swap_symmetry_on_random_words() {
    let mut rng = rng(21);
    for _ in 0..300 {
        let n = rng.random_range(1..=6);
        let left = WireState { word: random_word(&mut rng, n, 4), coeff: random_monomial(&mut rng, n) };
        let right = WireState { word: random_word(&mut rng, n, 4), coeff: random_monomial(&mut rng, n) };

        let (a, b) = braid(left.clone(), right.clone());
        assert_eq!(braid_inverse(a, b), (left.clone(), right.clone()));

        let (a, b) = braid_inverse(left.clone(), right.clone());
        assert_eq!(braid(a, b), (left, right));
    }
}

#[test]
fn cross_coeff_factors_letterwise() {
    let mut rng = rng(22);
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let w1 = random_word(&mut rng, n, 4);
        let w2 = random_word(&mut rng, n, 4);
        for direction in [Direction::Forward, Direction::Inverse] {
            let whole = cross_coeff(&w1, &w2, direction);
            let mut product = CoeffMonomial::one();
            for &a in &w1 {
                for &b in &w2 {
                    product.mul_assign(&cross_coeff(&[a], &[b], direction));
                }
            }
            assert_eq!(whole, product);
        }
    }
}

#[test]
fn ybe_and_inverse_hold_for_fixture_and_random_matrices() {
    for name in fixtures::QMATRIX_NAMES {
        let q = QMatrix::parse(fixtures::qmatrix_text(name).unwrap()).unwrap();
        assert!(check_ybe(&q).pass(), "{name}");
        assert!(check_inverse(&q).pass(), "{name}");
    }
    let mut rng = rng(23);
    for trial in 0..50 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let ybe = check_ybe(&q);
        assert!(ybe.pass(), "trial {trial}");
        assert_eq!(ybe.checked, (n as usize).pow(3));
        assert!(check_inverse(&q).pass(), "trial {trial}");
    }
}

#[test]
fn module_construction_is_faithful_on_random_matrices() {
    let mut rng = rng(24);
    for trial in 0..50 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let report = yd_braiding_equals_diagonal(&yd_module_from_q(&q), &q);
        assert!(report.pass(), "trial {trial}");
        assert_eq!(report.checked, (n as usize).pow(2));
    }
}

#[test]
fn naturality_follows_admissibility() {
    let mut rng = rng(25);
    let mut admissible_seen = 0;
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let mut q = random_rational_q(&mut rng, n);
        // duplicate a row/column pair half the time so admissible pairs
        // actually show up
        if rng.random_bool(0.5) {
            let i = rng.random_range(1..=n);
            let j = rng.random_range(1..=n);
            if i != j {
                let mut rows: Vec<Vec<BigRational>> = (1..=n)
                    .map(|s| (1..=n).map(|t| q.rational_entry(s, t).unwrap().clone()).collect())
                    .collect();
                for t in 0..n as usize {
                    rows[(j - 1) as usize][t] = rows[(i - 1) as usize][t].clone();
                }
                for s in 0..n as usize {
                    rows[s][(j - 1) as usize] = rows[s][(i - 1) as usize].clone();
                }
                q = QMatrix::rational(rows).unwrap();
            }
        }
        for from in 1..=n {
            for to in 1..=n {
                if admissible_box(&q, from, to).unwrap() {
                    admissible_seen += 1;
                    assert!(box_naturality_report(&q, from, to).unwrap().pass());
                }
            }
        }
    }
    assert!(admissible_seen > 200, "expected plenty of admissible pairs, saw {admissible_seen}");
}

// ---------------------------------------------------------------------------
// Diagram identities
// ---------------------------------------------------------------------------

#[test]
fn bundled_diagrams_round_trip_byte_exactly() {
    for name in fixtures::DIAGRAM_NAMES {
        let text = fixtures::diagram_text(name).unwrap();
        let d = parse_diagram(text).unwrap();
        assert_eq!(serialize_diagram(&d), text, "{name}");
    }
}

#[test]
fn global_coefficient_is_the_wire_product() {
    let mut rng = rng(31);
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let d = random_diagram(&mut rng, n, 4, 6);
        let result = evaluate(&d, &q).unwrap();
        let mut product = CoeffMonomial::one();
        for w in &result.wires {
            product.mul_assign(&w.coeff);
        }
        assert_eq!(product, result.global_coeff);
    }
}

#[test]
fn appending_a_cancelling_crossing_pair_changes_nothing() {
    let mut rng = rng(32);
    let mut exercised = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let d = random_diagram(&mut rng, n, 4, 4);
        let base = evaluate(&d, &q).unwrap();
        let width = base.wires.len();
        if width < 2 {
            continue;
        }
        exercised += 1;
        let k = rng.random_range(0..width - 1);
        let mut wrap = |gate: Gate| {
            let mut gates = vec![Gate::Id; k];
            gates.push(gate);
            gates.extend(vec![Gate::Id; width - k - 2]);
            Layer { gates }
        };
        let mut extended = d.clone();
        extended.layers.push(wrap(Gate::Cross));
        extended.layers.push(wrap(Gate::CrossInv));
        let wrapped = evaluate(&extended, &q).unwrap();
        assert_eq!(wrapped.wires, base.wires);
        assert_eq!(wrapped.global_coeff, base.global_coeff);
    }
    assert!(exercised > 50);
}

#[test]
fn inserting_an_identity_layer_changes_nothing() {
    let mut rng = rng(33);
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let d = random_diagram(&mut rng, n, 4, 5);
        let base = evaluate(&d, &q).unwrap();

        let mut widths = vec![d.inputs.len()];
        for layer in &d.layers {
            widths.push(layer.output_arity());
        }
        let at = rng.random_range(0..widths.len());
        if widths[at] == 0 {
            continue;
        }
        let mut padded = d.clone();
        padded.layers.insert(at, Layer { gates: vec![Gate::Id; widths[at]] });
        let result = evaluate(&padded, &q).unwrap();
        assert_eq!(result.wires, base.wires);
        assert_eq!(result.global_coeff, base.global_coeff);
    }
}

// ---------------------------------------------------------------------------
// Oracle equivalence
// ---------------------------------------------------------------------------

fn assert_oracle_agrees(d: &Diagram, q: &QMatrix, truncation: usize) {
    let eval = evaluate(d, q).unwrap();
    let words: Vec<Word> = eval.wires.iter().map(|w| w.word.clone()).collect();

    let exact = dense_oracle(d, q, truncation, NumericMode::Exact).unwrap();
    assert_eq!(exact.wires, words);
    assert_eq!(exact.scalar, q.eval(&eval.global_coeff, NumericMode::Exact).unwrap());

    let float = dense_oracle(d, q, truncation, NumericMode::Float).unwrap();
    let eval_float = q.eval(&eval.global_coeff, NumericMode::Float).unwrap();
    assert!(float.scalar.approx_eq(&eval_float, 1e-9), "{:?} vs {eval_float:?}", float.scalar);
}

#[test]
fn oracle_agrees_on_all_bundled_diagram_matrix_pairings() {
    let pairings = [
        ("figure2", "coca", 4),
        ("figure2", "coca-size", 4),
        ("figure4", "car", 10),
        ("figure4-right", "car", 10),
        ("figure5", "ship", 5),
    ];
    for (dname, qname, truncation) in pairings {
        let d = parse_diagram(fixtures::diagram_text(dname).unwrap()).unwrap();
        let q = QMatrix::parse(fixtures::qmatrix_text(qname).unwrap()).unwrap();
        assert!(validate(&d, &q).is_empty(), "{dname} under {qname}");
        assert_oracle_agrees(&d, &q, truncation);
    }

    // the ten-wire diagram needs a ten-generator matrix
    let d = parse_diagram(fixtures::FIGURE6_BD).unwrap();
    let q = QMatrix::constant_rational(10, big(3, 2)).unwrap();
    assert_oracle_agrees(&d, &q, 10);
}

#[test]
fn ten_wire_diagram_snapshot_after_seven_layers() {
    let d = parse_diagram(fixtures::FIGURE6_BD).unwrap();
    let q = QMatrix::constant_rational(10, big(3, 2)).unwrap();
    let wires = braidesign::diagram::state_at(&d, &q, 7).unwrap();
    assert_eq!(wires[0].word, vec![5, 6]);
}

#[test]
fn oracle_agrees_on_random_diagrams() {
    let mut rng = rng(41);
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let q = random_rational_q(&mut rng, n);
        let d = random_diagram(&mut rng, n, 4, 6);
        assert_oracle_agrees(&d, &q, 4);
    }
}

#[test]
fn oracle_agrees_on_random_graded_matrices() {
    let mut rng = rng(42);
    for _ in 0..50 {
        let n = rng.random_range(1..=6);
        let order = rng.random_range(2..=9);
        let grading: Vec<i64> = (0..n).map(|_| rng.random_range(0..order as i64)).collect();
        let q = QMatrix::graded(n, order, grading).unwrap();
        let d = random_diagram(&mut rng, n, 4, 6);
        assert_oracle_agrees(&d, &q, 4);
    }
}

// ---------------------------------------------------------------------------
// Design decoders
// ---------------------------------------------------------------------------

#[test]
fn color_is_periodic_in_the_order() {
    let wheel = ColorWheel::default_seven();
    let mut rng = rng(51);
    for _ in 0..100 {
        let k = rng.random_range(-1000..1000);
        let t = rng.random_range(-10..10);
        assert_eq!(wheel.color_for_class(k), wheel.color_for_class(k + 7 * t));
    }
}

#[test]
fn render_word_is_a_monoid_homomorphism() {
    let vocab = ShapeVocabulary::parse(fixtures::COCA_VOCAB).unwrap();
    let mut rng = rng(52);
    for _ in 0..100 {
        let w1 = random_word(&mut rng, 8, 5);
        let w2 = random_word(&mut rng, 8, 5);
        let mut joined = w1.clone();
        joined.extend(&w2);
        let mut parts = braidesign::design::render_word(&vocab, &w1).unwrap();
        parts.extend(braidesign::design::render_word(&vocab, &w2).unwrap());
        assert_eq!(braidesign::design::render_word(&vocab, &joined).unwrap(), parts);
    }
}

// ---------------------------------------------------------------------------
// Cipher cancellation
// ---------------------------------------------------------------------------

#[test]
fn sender_and_receiver_factors_cancel_for_random_keys() {
    let mut rng = rng(61);
    for seed in 0..20u64 {
        let n = rng.random_range(4..=8);
        let m = rng.random_range(2..=n.min(6));
        let key = keygen(n, m, seed).unwrap();
        let wq = key.window_matrix().unwrap();
        let w = key.window_word().unwrap();
        for i in 1..=m {
            let sender = wq.eval_rational(&cross_coeff(&[i], &w, Direction::Inverse)).unwrap();
            let receiver = wq.eval_rational(&cross_coeff(&w, &[i], Direction::Forward)).unwrap();
            assert!((sender * receiver).is_one());
        }
    }
}

#[test]
fn cipher_round_trips_across_window_sizes() {
    for (seed, m) in [(1u64, 2u32), (2, 3), (3, 5), (4, 7), (5, 10), (6, 12)] {
        let n = m + 3;
        let key = keygen(n, m, seed).unwrap();
        for s in 1..=m as i64 {
            let cg = encode(&key, s, seed.wrapping_mul(31)).unwrap();
            assert_eq!(decode(&key, &cg).unwrap(), s, "m = {m}, s = {s}");
        }
    }
}

#[test]
fn scalar_value_display_is_stable() {
    assert_eq!(ScalarValue::Cyclotomic { class: 4, order: 7 }.to_string(), "w^4 (mod 7)");
    assert_eq!(ScalarValue::Rational(big(7, 6)).to_string(), "7/6");
}
