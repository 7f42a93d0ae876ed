//! The diagonal crossing operator on words and its law checkers.
//!
//! Crossing a wire carrying the word `u` over a wire carrying `w`
//! multiplies by `q(a, b)` for every letter pair `(a, b)` in `u x w` and
//! swaps the wires. The scalar stays symbolic (a [`CoeffMonomial`]); it
//! attaches to the wire that entered from the left, which exits on the
//! right. The inverse crossing undoes this exactly, wire for wire.
//!
//! The checkers run exhaustively over basis words: the Yang–Baxter
//! equation on all triples, the two inverse compositions on all pairs,
//! and naturality of relabeling boxes against every crossing partner.
//! For a diagonal braiding all of them hold identically; the checkers
//! exist to pin the evaluator down and to catch any future non-diagonal
//! extension.

use std::fmt;

use thiserror::Error;

use crate::scalar::{CoeffMonomial, Gen, NumericMode, QMatrix, ScalarError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("box {from} > {to} is not admissible: row or column {differs} of the braiding matrix differs")]
    InadmissibleBox { from: Gen, to: Gen, differs: Gen },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Crossing direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// One wire of an evaluation: a word plus its accumulated coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WireState {
    pub word: Word,
    pub coeff: CoeffMonomial,
}

impl WireState {
    pub fn bare(word: Word) -> Self {
        WireState { word, coeff: CoeffMonomial::one() }
    }

    pub fn generator(g: Gen) -> Self {
        WireState::bare(vec![g])
    }
}

impl fmt::Display for WireState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "[{}] {}", word, self.coeff)
    }
}

/// The symbolic scalar of crossing `left` over `right`.
///
/// Forward: `prod q(a, b)` over all `a` in `left`, `b` in `right`.
/// Inverse: `prod q(b, a)^-1` over the same letter pairs.
pub fn cross_coeff(left: &[Gen], right: &[Gen], direction: Direction) -> CoeffMonomial {
    let mut m = CoeffMonomial::one();
    for &a in left {
        for &b in right {
            match direction {
                Direction::Forward => m.push((a, b), 1),
                Direction::Inverse => m.push((b, a), -1),
            }
        }
    }
    m
}

/// Cross the left wire over the right one.
///
/// Returns the output pair in position order: the former right wire exits
/// on the left unchanged; the former left wire exits on the right with
/// its coefficient multiplied by the crossing scalar.
pub fn braid(left: WireState, right: WireState) -> (WireState, WireState) {
    let scalar = cross_coeff(&left.word, &right.word, Direction::Forward);
    let mut moved = left;
    moved.coeff.mul_assign(&scalar);
    (right, moved)
}

/// The exact inverse of [`braid`]: composing the two in either order
/// restores both wires, coefficient and all.
///
/// The inverse scalar `cross_coeff(left, right, Inverse)` attaches to the
/// former right wire, which exits on the left — the same wire that picks
/// up the forward scalar when the crossings cancel.
pub fn braid_inverse(left: WireState, right: WireState) -> (WireState, WireState) {
    let scalar = cross_coeff(&left.word, &right.word, Direction::Inverse);
    let mut moved = right;
    moved.coeff.mul_assign(&scalar);
    (moved, left)
}

// ---------------------------------------------------------------------------
// Check reports
// ---------------------------------------------------------------------------

/// Outcome of an exhaustive checker run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub label: String,
    pub checked: usize,
    pub subject: &'static str,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            write!(f, "{}: pass ({} {})", self.label, self.checked, self.subject)
        } else {
            write!(
                f,
                "{}: FAIL ({} violations in {} {})",
                self.label,
                self.violations.len(),
                self.checked,
                self.subject
            )
        }
    }
}

fn apply_cross(wires: &mut Vec<WireState>, at: usize) {
    let right = wires.remove(at + 1);
    let left = wires.remove(at);
    let (a, b) = braid(left, right);
    wires.insert(at, b);
    wires.insert(at, a);
}

/// Check the Yang–Baxter equation on every basis triple: crossing
/// (1,2)(2,3)(1,2) must agree with (2,3)(1,2)(2,3), output words and
/// symbolic coefficients alike.
pub fn check_ybe(q: &QMatrix) -> CheckReport {
    let n = q.n();
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let start = vec![WireState::generator(i), WireState::generator(j), WireState::generator(k)];

                let mut lhs = start.clone();
                apply_cross(&mut lhs, 0);
                apply_cross(&mut lhs, 1);
                apply_cross(&mut lhs, 0);

                let mut rhs = start;
                apply_cross(&mut rhs, 1);
                apply_cross(&mut rhs, 0);
                apply_cross(&mut rhs, 1);

                if lhs != rhs {
                    violations.push(format!("triple ({i}, {j}, {k}): {lhs:?} != {rhs:?}"));
                }
            }
        }
    }
    CheckReport { label: "YBE".into(), checked: (n as usize).pow(3), subject: "triples", violations }
}

/// Check that the inverse crossing undoes the crossing on every basis
/// pair, in both composition orders.
pub fn check_inverse(q: &QMatrix) -> CheckReport {
    let n = q.n();
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let left = WireState::generator(i);
            let right = WireState::generator(j);

            let (a, b) = braid(left.clone(), right.clone());
            let restored = braid_inverse(a, b);
            if restored != (left.clone(), right.clone()) {
                violations.push(format!("inverse . braid != id on ({i}, {j}): {restored:?}"));
            }

            let (a, b) = braid_inverse(left.clone(), right.clone());
            let restored = braid(a, b);
            if restored != (left, right) {
                violations.push(format!("braid . inverse != id on ({i}, {j}): {restored:?}"));
            }
        }
    }
    CheckReport { label: "inverse".into(), checked: (n as usize).pow(2), subject: "pairs", violations }
}

// ---------------------------------------------------------------------------
// Relabeling boxes
// ---------------------------------------------------------------------------

/// A named relabeling morphism `v_from -> v_to` with unit scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxMorphism {
    pub name: String,
    pub from: Gen,
    pub to: Gen,
}

impl BoxMorphism {
    pub fn new(from: Gen, to: Gen) -> Self {
        BoxMorphism { name: format!("f:{from}>{to}"), from, to }
    }
}

/// A relabeling `from -> to` is admissible when the two generators brade
/// identically with everything: row `from` equals row `to` and column
/// `from` equals column `to`.
pub fn admissible_box(q: &QMatrix, from: Gen, to: Gen) -> Result<bool, ScalarError> {
    for k in 1..=q.n() {
        if !q.entries_equal((from, k), (to, k))? || !q.entries_equal((k, from), (k, to))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First partner generator whose row or column distinguishes `from`
/// from `to`, if any.
fn first_differing_partner(q: &QMatrix, from: Gen, to: Gen) -> Result<Option<Gen>, ScalarError> {
    for k in 1..=q.n() {
        if !q.entries_equal((from, k), (to, k))? || !q.entries_equal((k, from), (k, to))? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Naturality of a relabeling box against every crossing partner,
/// without the admissibility gate. Sliding the box through a crossing
/// must leave the evaluated wire states unchanged on both sides.
pub fn box_naturality_report(q: &QMatrix, from: Gen, to: Gen) -> Result<CheckReport, ScalarError> {
    let n = q.n();
    let mut violations = Vec::new();
    for k in 1..=n {
        // Partner on the left: cross (k, from) then relabel, versus
        // relabel then cross (k, to). Words agree by construction; the
        // coefficients are q(k, from) and q(k, to).
        if !q.entries_equal((k, from), (k, to))? {
            violations.push(format!("partner {k} on the left: q({k},{from}) != q({k},{to})"));
        }
        // Partner on the right: cross (from, k) then relabel, versus
        // relabel then cross (to, k).
        if !q.entries_equal((from, k), (to, k))? {
            violations.push(format!("partner {k} on the right: q({from},{k}) != q({to},{k})"));
        }
    }
    Ok(CheckReport {
        label: format!("box {from}>{to} naturality"),
        checked: n as usize,
        subject: "partners",
        violations,
    })
}

/// Check naturality of an admissible box; an inadmissible box is
/// rejected before checking.
pub fn check_box_naturality(q: &QMatrix, f: &BoxMorphism) -> Result<CheckReport, BraidError> {
    if let Some(differs) = first_differing_partner(q, f.from, f.to)? {
        return Err(BraidError::InadmissibleBox { from: f.from, to: f.to, differs });
    }
    Ok(box_naturality_report(q, f.from, f.to)?)
}

// ---------------------------------------------------------------------------
// Yetter–Drinfeld construction over Z^n
// ---------------------------------------------------------------------------

/// The module structure over the group `Z^n` that realizes a diagonal
/// braiding: `v_i` has degree `e_i`, and `e_j` acts on `v_i` by the
/// transposed matrix entry `q(j, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YdModuleSpec {
    n: u32,
}

impl YdModuleSpec {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The degree of `v_i`: the `i`-th standard basis vector of `Z^n`.
    pub fn degree(&self, i: Gen) -> Vec<i64> {
        let mut e = vec![0; self.n as usize];
        e[(i - 1) as usize] = 1;
        e
    }

    /// The scalar by which `e_j` acts on `v_i`, as a symbolic monomial.
    pub fn action_coeff(&self, j: Gen, i: Gen) -> CoeffMonomial {
        CoeffMonomial::from_pairs([((j, i), 1)])
    }
}

/// Derive the module structure from a braiding matrix.
pub fn yd_module_from_q(q: &QMatrix) -> YdModuleSpec {
    YdModuleSpec { n: q.n() }
}

/// Recompute the braiding through the module structure and confirm it
/// matches the diagonal crossing on every basis pair.
///
/// The composite is: comultiply the left wire (`v_i` gains degree `e_i`),
/// swap the plain tensor factors, then act (`e_i` on `v_j` scales by
/// `q(i, j)`). That reproduces `q(i, j) v_j (x) v_i` exactly.
pub fn yd_braiding_equals_diagonal(spec: &YdModuleSpec, q: &QMatrix) -> CheckReport {
    let n = spec.n().min(q.n());
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let via_module = spec.action_coeff(i, j);
            let diagonal = cross_coeff(&[i], &[j], Direction::Forward);
            let symbolic_match = via_module == diagonal;
            let numeric_match = match (q.eval(&via_module, NumericMode::Exact), q.eval(&diagonal, NumericMode::Exact)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !symbolic_match || !numeric_match {
                violations.push(format!("pair ({i}, {j}): module gives {via_module}, crossing gives {diagonal}"));
            }
        }
    }
    CheckReport { label: "YD".into(), checked: (n as usize).pow(2), subject: "pairs", violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarValue;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn coca() -> QMatrix {
        QMatrix::graded(8, 7, vec![1, 2, 3, 4, 1, 2, 3, 4]).unwrap()
    }

    fn all_ones(n: u32) -> QMatrix {
        QMatrix::constant_rational(n, big(1, 1)).unwrap()
    }

    #[test]
    fn cross_coeff_letterwise() {
        let m = cross_coeff(&[5], &[6, 7, 8], Direction::Forward);
        assert_eq!(m, CoeffMonomial::from_pairs([((5, 6), 1), ((5, 7), 1), ((5, 8), 1)]));
        // under the bottle grading this is grade 1 * (2 + 3 + 4) = 9 = 2 mod 7
        assert_eq!(coca().eval(&m, NumericMode::Exact).unwrap(), ScalarValue::Cyclotomic { class: 2, order: 7 });
    }

    #[test]
    fn cross_coeff_empty_word() {
        assert!(cross_coeff(&[], &[3], Direction::Forward).is_one());
    }

    #[test]
    fn cross_coeff_inverse_transposes() {
        let m = cross_coeff(&[1], &[2], Direction::Inverse);
        assert_eq!(m, CoeffMonomial::from_pairs([((2, 1), -1)]));
    }

    #[test]
    fn braid_attaches_scalar_to_left_wire() {
        // the ship example: crossing v_3 over v_5 leaves v_5 clean and
        // sends v_3 out on the right carrying q(3,5)
        let (a, b) = braid(WireState::generator(3), WireState::generator(5));
        assert_eq!(a, WireState::generator(5));
        assert_eq!(b.word, vec![3]);
        assert_eq!(b.coeff, CoeffMonomial::from_pairs([((3, 5), 1)]));
    }

    #[test]
    fn braid_under_trivial_matrix_is_a_swap() {
        let q = all_ones(4);
        let (a, b) = braid(WireState::generator(2), WireState::generator(4));
        assert_eq!(a.word, vec![4]);
        assert_eq!(b.word, vec![2]);
        assert!(q.eval_rational(&a.coeff).unwrap().is_one());
        assert!(q.eval_rational(&b.coeff).unwrap().is_one());
    }

    #[test]
    fn braid_word_over_word() {
        let (a, b) = braid(WireState::generator(5), WireState::bare(vec![6, 7, 8]));
        assert_eq!(a.word, vec![6, 7, 8]);
        assert_eq!(b.word, vec![5]);
        assert_eq!(coca().eval(&b.coeff, NumericMode::Exact).unwrap(), ScalarValue::Cyclotomic { class: 2, order: 7 });
    }

    #[test]
    fn braid_inverse_restores_wires_exactly() {
        let left = WireState::generator(1);
        let right = WireState::generator(2);
        let (a, b) = braid(left.clone(), right.clone());
        assert_eq!(braid_inverse(a, b), (left.clone(), right.clone()));
        let (a, b) = braid_inverse(left.clone(), right.clone());
        assert_eq!(braid(a, b), (left, right));
    }

    #[test]
    fn braid_inverse_coefficient_value() {
        let mut rows = vec![vec![big(1, 1); 2]; 2];
        rows[0][1] = big(3, 1); // q(1,2) = 3
        let q = QMatrix::rational(rows).unwrap();
        let (a, b) = braid_inverse(WireState::generator(2), WireState::generator(1));
        assert_eq!(a.word, vec![1]);
        assert_eq!(b.word, vec![2]);
        // the inverse scalar q(1,2)^-1 rides on the wire exiting left
        assert_eq!(a.coeff, CoeffMonomial::from_pairs([((1, 2), -1)]));
        assert_eq!(q.eval_rational(&a.coeff).unwrap(), big(1, 3));
        assert!(b.coeff.is_one());
    }

    #[test]
    fn ybe_passes_on_fixture_and_trivial_matrices() {
        let report = check_ybe(&coca());
        assert!(report.pass());
        assert_eq!(report.checked, 512);
        assert!(check_ybe(&all_ones(2)).pass());
    }

    #[test]
    fn ybe_sides_carry_the_three_pair_scalars() {
        // expand one triple by hand: both orders end on (k, j, i) with
        // q(i,j) q(i,k) q(j,k) spread over the moved wires
        let mut wires = vec![WireState::generator(1), WireState::generator(2), WireState::generator(3)];
        apply_cross(&mut wires, 0);
        apply_cross(&mut wires, 1);
        apply_cross(&mut wires, 0);
        assert_eq!(wires[0].word, vec![3]);
        assert_eq!(wires[1].word, vec![2]);
        assert_eq!(wires[2].word, vec![1]);
        let mut total = CoeffMonomial::one();
        for w in &wires {
            total.mul_assign(&w.coeff);
        }
        assert_eq!(total, CoeffMonomial::from_pairs([((1, 2), 1), ((1, 3), 1), ((2, 3), 1)]));
    }

    #[test]
    fn inverse_law_reports() {
        assert!(check_inverse(&coca()).pass());
        let mut rows = vec![vec![big(1, 1); 2]; 2];
        rows[0][1] = big(2, 3);
        assert!(check_inverse(&QMatrix::rational(rows).unwrap()).pass());
        let single = QMatrix::rational(vec![vec![big(5, 1)]]).unwrap();
        let report = check_inverse(&single);
        assert!(report.pass());
        assert_eq!(report.checked, 1);
    }

    #[test]
    fn admissibility_follows_the_grading() {
        let q = coca();
        assert!(admissible_box(&q, 1, 5).unwrap());
        assert!(!admissible_box(&q, 1, 2).unwrap());
        assert!(admissible_box(&all_ones(4), 2, 3).unwrap());
    }

    #[test]
    fn box_naturality_on_equal_rows() {
        let q = coca();
        let report = check_box_naturality(&q, &BoxMorphism::new(1, 5)).unwrap();
        assert!(report.pass());
        assert_eq!(report.checked, 8);
        assert!(check_box_naturality(&all_ones(3), &BoxMorphism::new(1, 2)).unwrap().pass());
    }

    #[test]
    fn forced_box_reports_first_differing_partner() {
        // rows 1 and 2 differ at partner 3: q(1,3) = 2, q(2,3) = 1
        let mut rows = vec![vec![big(1, 1); 3]; 3];
        rows[0][2] = big(2, 1);
        let q = QMatrix::rational(rows).unwrap();
        let err = check_box_naturality(&q, &BoxMorphism::new(1, 2)).unwrap_err();
        assert_eq!(err, BraidError::InadmissibleBox { from: 1, to: 2, differs: 3 });
        let report = box_naturality_report(&q, 1, 2).unwrap();
        assert!(!report.pass());
        assert!(report.violations[0].contains("partner 3"));
    }

    #[test]
    fn yd_action_is_the_transposed_entry() {
        let mut rows = vec![vec![big(1, 1); 2]; 2];
        rows[0][1] = big(3, 2); // q(1,2)
        rows[1][0] = big(7, 5); // q(2,1)
        let q = QMatrix::rational(rows).unwrap();
        let spec = yd_module_from_q(&q);
        assert_eq!(q.eval_rational(&spec.action_coeff(1, 2)).unwrap(), big(3, 2));
        assert_eq!(q.eval_rational(&spec.action_coeff(2, 1)).unwrap(), big(7, 5));
        assert_eq!(spec.degree(2), vec![0, 1]);
    }

    #[test]
    fn yd_braiding_matches_diagonal() {
        for q in [coca(), all_ones(3)] {
            let spec = yd_module_from_q(&q);
            let report = yd_braiding_equals_diagonal(&spec, &q);
            assert!(report.pass());
            assert_eq!(report.checked, (q.n() as usize).pow(2));
        }
    }

    #[test]
    fn report_rendering() {
        let report = check_ybe(&coca());
        assert_eq!(report.to_string(), "YBE: pass (512 triples)");
    }
}
