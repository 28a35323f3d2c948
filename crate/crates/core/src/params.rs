//! Divisibility parameters α₁…α₁₄ of a pattern `x π^i(x) π^j(x) π^k(x)` and
//! the 4-digit equality representations they stand for.
//!
//! Each α_a is the least orbit length `t` for which the residues of
//! `(0, i, j, k)` modulo `t` fall into the equality class `REPS[a]`. Position
//! `p` of a representation refers to the x-item with exponent `(0, i, j, k)[p]`.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Letter;

/// Exponents of `x π^i(x) π^j(x) π^k(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternExponents {
    pub i: u64,
    pub j: u64,
    pub k: u64,
}

impl PatternExponents {
    pub const fn new(i: u64, j: u64, k: u64) -> Self {
        PatternExponents { i, j, k }
    }

    /// Exponent of the x-item at position `p` (position 0 is `x` itself).
    pub fn at(&self, p: usize) -> u64 {
        [0, self.i, self.j, self.k][p]
    }

    /// Positive and pairwise distinct: the setting in which σ is defined.
    pub fn is_generic(&self) -> bool {
        self.i > 0 && self.j > 0 && self.k > 0 && self.i != self.j && self.j != self.k && self.i != self.k
    }

    fn quantity(&self, q: Quantity) -> u64 {
        match q {
            Quantity::I => self.i,
            Quantity::J => self.j,
            Quantity::K => self.k,
            Quantity::IJ => self.i.abs_diff(self.j),
            Quantity::IK => self.i.abs_diff(self.k),
            Quantity::JK => self.j.abs_diff(self.k),
        }
    }

    /// Beyond this value every `t ∤ x` condition with `x ≥ 1` holds, so the
    /// outcome of a row no longer depends on `t`.
    fn scan_bound(&self) -> u64 {
        [Quantity::I, Quantity::J, Quantity::K, Quantity::IJ, Quantity::IK, Quantity::JK]
            .into_iter()
            .map(|q| self.quantity(q))
            .max()
            .unwrap_or(0)
            + 1
    }
}

impl fmt::Display for PatternExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// Canonical 4-digit equality representation, e.g. `0012`.
///
/// `digits[0] = 0` and every later digit is either already used or one more
/// than the largest digit so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EqualityPattern([u8; 4]);

impl EqualityPattern {
    pub const ALL_EQUAL: EqualityPattern = EqualityPattern([0, 0, 0, 0]);

    /// Labels positions by first occurrence under the given equality test.
    pub fn from_equalities(eq: impl Fn(usize, usize) -> bool) -> Self {
        let mut digits = [0u8; 4];
        let mut next = 0u8;
        for p in 0..4 {
            match (0..p).find(|&q| eq(q, p)) {
                Some(q) => digits[p] = digits[q],
                None => {
                    digits[p] = next;
                    next += 1;
                }
            }
        }
        EqualityPattern(digits)
    }

    /// Canonical relabelling of any four labels.
    pub fn canonical<T: PartialEq>(labels: [T; 4]) -> Self {
        Self::from_equalities(|p, q| labels[p] == labels[q])
    }

    /// Equality structure of four blocks.
    pub fn of_blocks(blocks: [&[Letter]; 4]) -> Self {
        Self::canonical(blocks)
    }

    pub fn from_digits(digits: [u8; 4]) -> Result<Self> {
        let p = EqualityPattern(digits);
        if Self::canonical(digits) != p {
            return Err(Error::InvalidPattern(p.to_string()));
        }
        Ok(p)
    }

    pub fn digits(&self) -> [u8; 4] {
        self.0
    }

    /// Injective small code (below 64) for bit-set membership.
    pub fn code(&self) -> u8 {
        self.0[1] * 16 + self.0[2] * 4 + self.0[3]
    }

    /// All 15 canonical patterns in lexicographic order.
    pub fn all() -> Vec<EqualityPattern> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if let Ok(p) = Self::from_digits([0, a, b, c]) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    /// Position pairs `(p, q)`, `p < q`, carrying equal digits.
    pub fn equal_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..4).flat_map(move |p| (p + 1..4).map(move |q| (p, q))).filter(|&(p, q)| self.0[p] == self.0[q])
    }

    fn count_of(&self, digit: u8) -> usize {
        self.0.iter().filter(|&&d| d == digit).count()
    }

    /// Starts with `00`, the other two digits being 1 and 2 (`0012`).
    pub fn has_prefix_square(&self) -> bool {
        self.0 == [0, 0, 1, 2]
    }

    /// Ends with `22`, the other two digits being 0 and 1 (`0122`).
    pub fn has_suffix_square(&self) -> bool {
        self.0 == [0, 1, 2, 2]
    }

    /// `0102` or `0121`.
    pub fn has_gapped_square(&self) -> bool {
        self.0 == [0, 1, 0, 2] || self.0 == [0, 1, 2, 1]
    }

    /// `0101`.
    pub fn has_two_gapped_squares(&self) -> bool {
        self.0 == [0, 1, 0, 1]
    }

    /// `0001` or `0111`.
    pub fn contains_cube(&self) -> bool {
        self.0 == [0, 0, 0, 1] || self.0 == [0, 1, 1, 1]
    }

    /// `0011`.
    pub fn has_two_squares(&self) -> bool {
        self.0 == [0, 0, 1, 1]
    }

    /// `0010` or `0100`.
    pub fn contains_gapped_cube(&self) -> bool {
        self.0 == [0, 0, 1, 0] || self.0 == [0, 1, 0, 0]
    }

    /// The two middle items coincide and nothing else repeats them (`0110`, `0112`).
    pub fn has_middle_square(&self) -> bool {
        self.0[1] == self.0[2] && self.0[0] != self.0[1] && self.count_of(self.0[1]) == 2
    }

    /// Only the first and last items coincide (`0120`).
    pub fn has_only_outer_equal(&self) -> bool {
        self.0 == [0, 1, 2, 0]
    }

    /// Every pair of positions listed in `pairs` carries equal digits here.
    pub fn agrees_on(&self, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(p, q)| self.0[p] == self.0[q])
    }

    fn swapped(&self, pos: usize) -> [u8; 4] {
        let mut d = self.0;
        d.swap(pos, pos + 1);
        d
    }
}

/// `p2` is `p1` with one adjacent pair of positions exchanged, digit for digit.
pub fn is_swapped_form(p1: EqualityPattern, p2: EqualityPattern) -> bool {
    (0..3).any(|pos| p1.swapped(pos) == p2.0)
}

/// As [`is_swapped_form`], but compares after canonical relabelling, so that
/// `0122` and `0121` (swap the middle, rename) count as swapped forms.
pub fn is_swapped_form_relabelled(p1: EqualityPattern, p2: EqualityPattern) -> bool {
    (0..3).any(|pos| EqualityPattern::canonical(p1.swapped(pos)) == p2)
}

impl fmt::Display for EqualityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for EqualityPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bytes = s.as_bytes();
        if bytes.len() != 4 || !bytes.iter().all(|b| (b'0'..=b'3').contains(b)) {
            return Err(Error::InvalidPattern(s.to_string()));
        }
        EqualityPattern::from_digits([bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0', bytes[3] - b'0'])
            .map_err(|_| Error::InvalidPattern(s.to_string()))
    }
}

impl Serialize for EqualityPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A positive integer or ∞; ∞ compares above every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlphaValue {
    Finite(u64),
    Infinite,
}

impl AlphaValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, AlphaValue::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match *self {
            AlphaValue::Finite(t) => Some(t),
            AlphaValue::Infinite => None,
        }
    }

    /// `self ≤ m` for an alphabet size `m`.
    pub fn fits(&self, m: u64) -> bool {
        self.finite().is_some_and(|t| t <= m)
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Finite(t) => write!(f, "{t}"),
            AlphaValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AlphaValue::Finite(t) => s.serialize_u64(*t),
            AlphaValue::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Number of α parameters.
pub const NUM_PARAMS: usize = 14;

const fn pat(d: [u8; 4]) -> EqualityPattern {
    EqualityPattern(d)
}

/// Representation of α_a at index `a - 1`.
pub const REPS: [EqualityPattern; NUM_PARAMS] = [
    pat([0, 1, 2, 3]),
    pat([0, 0, 1, 2]),
    pat([0, 1, 0, 2]),
    pat([0, 1, 2, 1]),
    pat([0, 1, 2, 2]),
    pat([0, 0, 0, 1]),
    pat([0, 0, 1, 0]),
    pat([0, 1, 0, 0]),
    pat([0, 1, 1, 1]),
    pat([0, 0, 1, 1]),
    pat([0, 1, 0, 1]),
    pat([0, 1, 1, 0]),
    pat([0, 1, 1, 2]),
    pat([0, 1, 2, 0]),
];

/// Representation of α_a, `1 ≤ a ≤ 14`.
pub fn rep(a: usize) -> Result<EqualityPattern> {
    check_index(a)?;
    Ok(REPS[a - 1])
}

/// Index `a` of the parameter whose representation is `p`, if any.
pub fn index_of(p: EqualityPattern) -> Option<usize> {
    REPS.iter().position(|&r| r == p).map(|pos| pos + 1)
}

pub(crate) fn check_index(a: usize) -> Result<()> {
    if (1..=NUM_PARAMS).contains(&a) {
        Ok(())
    } else {
        Err(Error::InvalidIndex(a))
    }
}

#[derive(Clone, Copy, Debug)]
enum Quantity {
    I,
    J,
    K,
    IJ,
    IK,
    JK,
}

/// `t | q` when `divides`, `t ∤ q` otherwise (every `t` divides 0).
#[derive(Clone, Copy, Debug)]
struct Cond {
    q: Quantity,
    divides: bool,
}

const fn d(q: Quantity) -> Cond {
    Cond { q, divides: true }
}

const fn nd(q: Quantity) -> Cond {
    Cond { q, divides: false }
}

use Quantity::{I, IJ, IK, J, JK, K};

/// Divisibility rows; row `a - 1` holds exactly when the residues of
/// `(0, i, j, k)` mod `t` have the shape `REPS[a - 1]`.
const ROWS: [&[Cond]; NUM_PARAMS] = [
    &[nd(I), nd(J), nd(K), nd(IJ), nd(IK), nd(JK)],
    &[d(I), nd(J), nd(K), nd(JK)],
    &[nd(I), d(J), nd(K), nd(IK)],
    &[nd(I), nd(J), d(IK), nd(IJ)],
    &[nd(I), nd(J), nd(IJ), nd(IK), d(JK)],
    &[d(I), d(J), nd(K)],
    &[d(I), nd(J), d(K)],
    &[nd(I), d(J), d(K)],
    &[nd(I), d(IJ), d(IK)],
    &[d(I), nd(J), d(JK)],
    &[nd(I), d(J), d(IK)],
    &[nd(I), d(K), d(IJ)],
    &[nd(I), nd(K), d(IJ), nd(IK)],
    &[nd(I), nd(J), d(K), nd(IJ)],
];

fn row_holds(a: usize, t: u64, e: &PatternExponents) -> bool {
    ROWS[a - 1].iter().all(|c| e.quantity(c.q).is_multiple_of(t) == c.divides)
}

/// α_a for the exponents `e`: least `t ≥ 1` satisfying row `a`, or ∞.
pub fn alpha(a: usize, e: &PatternExponents) -> Result<AlphaValue> {
    check_index(a)?;
    let bound = e.scan_bound();
    Ok((1..=bound + 1)
        .find(|&t| row_holds(a, t, e))
        .map_or(AlphaValue::Infinite, AlphaValue::Finite))
}

/// Canonical labelling of the residues of `(0, i, j, k)` modulo `t`.
pub fn representation(t: u64, e: &PatternExponents) -> EqualityPattern {
    assert!(t >= 1, "modulus must be positive");
    EqualityPattern::canonical([0, e.i % t, e.j % t, e.k % t])
}

/// Whether some permutation of `Σ_m` and some word produce instances whose
/// x-items have exactly the equality structure of α_a.
pub fn realizable(a: usize, e: &PatternExponents, m: u64) -> Result<bool> {
    Ok(alpha(a, e)?.fits(m))
}

/// All fourteen α values for one exponent triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaProfile {
    pub exponents: PatternExponents,
    values: [AlphaValue; NUM_PARAMS],
}

impl AlphaProfile {
    /// Value of α_a, `1 ≤ a ≤ 14`.
    pub fn value(&self, a: usize) -> AlphaValue {
        self.values[a - 1]
    }

    pub fn values(&self) -> &[AlphaValue; NUM_PARAMS] {
        &self.values
    }

    pub fn reps(&self) -> &'static [EqualityPattern; NUM_PARAMS] {
        &REPS
    }
}

pub fn profile(e: &PatternExponents) -> AlphaProfile {
    let values = std::array::from_fn(|pos| alpha(pos + 1, e).expect("index in range"));
    AlphaProfile { exponents: *e, values }
}

impl Serialize for AlphaProfile {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Reps;
        impl Serialize for Reps {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(NUM_PARAMS))?;
                for (pos, r) in REPS.iter().enumerate() {
                    map.serialize_entry(&format!("alpha{}", pos + 1), r)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(NUM_PARAMS + 2))?;
        map.serialize_entry("exponents", &self.exponents)?;
        for (pos, v) in self.values.iter().enumerate() {
            map.serialize_entry(&format!("alpha{}", pos + 1), v)?;
        }
        map.serialize_entry("reps", &Reps)?;
        map.end()
    }
}

/// Exactness check of the divisibility rows against [`representation`] over
/// a small grid: every finite α_a must produce `REPS[a]`, and no smaller `t`
/// may produce it. Returns the first offending `(a, e)`.
pub fn check_representation_table() -> Option<(usize, PatternExponents)> {
    for i in 0..=8 {
        for j in 0..=8 {
            for k in 0..=8 {
                let e = PatternExponents::new(i, j, k);
                for a in 1..=NUM_PARAMS {
                    let first = (1..=e.scan_bound() + 1).find(|&t| representation(t, &e) == REPS[a - 1]);
                    let value = alpha(a, &e).expect("index in range").finite();
                    if first != value {
                        return Some((a, e));
                    }
                }
            }
        }
    }
    None
}

/// Checks that `blocks` have equal lengths.
pub fn check_blocks(blocks: [&[Letter]; 4]) -> Result<()> {
    if blocks.iter().any(|b| b.len() != blocks[0].len()) {
        return Err(Error::LengthMismatch);
    }
    Ok(())
}

/// True iff two of the blocks are equal exactly when the matching digits of `p` are.
pub fn models(u: &[Letter], v1: &[Letter], v2: &[Letter], v3: &[Letter], p: EqualityPattern) -> Result<bool> {
    check_blocks([u, v1, v2, v3])?;
    Ok(EqualityPattern::of_blocks([u, v1, v2, v3]) == p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: u64, j: u64, k: u64) -> PatternExponents {
        PatternExponents::new(i, j, k)
    }

    fn p(s: &str) -> EqualityPattern {
        s.parse().unwrap()
    }

    /// Literal scan of the definition: least t whose residue pattern is the rep.
    fn alpha_by_residues(a: usize, e: &PatternExponents) -> AlphaValue {
        (1..=200)
            .find(|&t| representation(t, e) == REPS[a - 1])
            .map_or(AlphaValue::Infinite, AlphaValue::Finite)
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1, &e(1, 2, 3)).unwrap(), AlphaValue::Finite(4));
        assert_eq!(alpha(2, &e(1, 2, 3)).unwrap(), AlphaValue::Infinite);
        assert_eq!(alpha(6, &e(2, 4, 5)).unwrap(), AlphaValue::Finite(2));
        assert!(matches!(alpha(0, &e(1, 2, 3)), Err(Error::InvalidIndex(0))));
        assert!(matches!(alpha(15, &e(1, 2, 3)), Err(Error::InvalidIndex(15))));
    }

    #[test]
    fn profile_examples() {
        let prof = profile(&e(1, 2, 3));
        assert_eq!(prof.value(1), AlphaValue::Finite(4));
        assert_eq!(prof.reps()[2], p("0102"));
    }

    #[test]
    fn representation_examples() {
        assert_eq!(representation(2, &e(1, 2, 3)), p("0101"));
        assert_eq!(representation(4, &e(1, 2, 3)), p("0123"));
        assert_eq!(representation(1, &e(7, 9, 11)), EqualityPattern::ALL_EQUAL);
    }

    #[test]
    fn reps_are_canonical_and_distinct() {
        for r in REPS {
            assert_eq!(EqualityPattern::canonical(r.digits()), r);
        }
        let mut sorted = REPS.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), NUM_PARAMS);
        assert_eq!(EqualityPattern::all().len(), 15);
        assert!(!REPS.contains(&EqualityPattern::ALL_EQUAL));
    }

    #[test]
    fn rows_are_exact() {
        assert_eq!(check_representation_table(), None);
    }

    #[test]
    fn classifier_examples() {
        assert!(p("0012").has_prefix_square());
        assert!(p("0122").has_suffix_square());
        assert!(!p("0123").contains_gapped_cube());
        assert!(p("0010").contains_gapped_cube());
        assert!(p("0102").has_gapped_square() && p("0121").has_gapped_square());
        assert!(p("0011").has_two_squares());
        assert!(p("0001").contains_cube() && p("0111").contains_cube());
        assert!(p("0101").has_two_gapped_squares());
        assert!(p("0120").has_only_outer_equal());
    }

    #[test]
    fn classifier_classes_over_the_table() {
        let which = |f: fn(&EqualityPattern) -> bool| -> Vec<usize> {
            (1..=NUM_PARAMS).filter(|&a| f(&REPS[a - 1])).collect()
        };
        assert_eq!(which(|r| (r.has_prefix_square() || r.has_suffix_square()) && !r.contains_gapped_cube()), [2, 5]);
        assert_eq!(which(EqualityPattern::has_gapped_square), [3, 4]);
        assert_eq!(which(|r| r.contains_cube() || r.has_two_squares()), [6, 9, 10]);
        assert_eq!(which(EqualityPattern::contains_gapped_cube), [7, 8]);
        assert_eq!(which(EqualityPattern::has_middle_square), [12, 13]);
        assert_eq!(which(EqualityPattern::has_two_gapped_squares), [11]);
        assert_eq!(which(EqualityPattern::has_only_outer_equal), [14]);
    }

    #[test]
    fn swapped_forms() {
        assert!(is_swapped_form(p("0012"), p("0102")));
        assert!(is_swapped_form(p("0102"), p("0012")));
        assert!(!is_swapped_form(p("0123"), p("0123")));
        assert!(!is_swapped_form(p("0012"), p("0120")));
        assert!(!is_swapped_form(p("0122"), p("0121")));
        assert!(is_swapped_form_relabelled(p("0122"), p("0121")));
        assert!(is_swapped_form_relabelled(p("0012"), p("0102")));
        assert!(!is_swapped_form_relabelled(p("0012"), p("0121")));
        assert!(!is_swapped_form_relabelled(p("0122"), p("0102")));
    }

    #[test]
    fn models_examples() {
        let (a, b, c, d) = (&[0u8, 1][..], &[2u8, 3][..], &[4u8, 5][..], &[6u8, 7][..]);
        assert!(models(a, a, c, d, p("0012")).unwrap());
        assert!(!models(a, a, a, d, p("0012")).unwrap());
        assert!(models(&[0], &[1], &[0], &[1], p("0101")).unwrap());
        assert!(!models(a, b, c, d, p("0012")).unwrap());
        assert!(matches!(models(a, &[1], c, d, p("0123")), Err(Error::LengthMismatch)));
    }

    #[test]
    fn realizable_examples() {
        assert!(realizable(1, &e(1, 2, 3), 4).unwrap());
        assert!(!realizable(1, &e(1, 2, 3), 3).unwrap());
        for m in 2..20 {
            assert!(!realizable(2, &e(1, 2, 3), m).unwrap());
        }
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!(p("0123").digits(), [0, 1, 2, 3]);
        assert!("0210".parse::<EqualityPattern>().is_err());
        assert!("1012".parse::<EqualityPattern>().is_err());
        assert!("012".parse::<EqualityPattern>().is_err());
        assert_eq!(serde_json::to_string(&p("0012")).unwrap(), "\"0012\"");
    }

    #[test]
    fn alpha_one_exceeds_three_on_grid() {
        for i in 1..=30 {
            for j in 1..=30 {
                for k in 1..=30 {
                    let ex = e(i, j, k);
                    if !ex.is_generic() {
                        continue;
                    }
                    let a1 = alpha(1, &ex).unwrap();
                    assert!(a1.finite().is_some_and(|t| t > 3), "alpha1{ex} = {a1}");
                }
            }
        }
    }

    #[test]
    fn infinity_orders_last() {
        assert!(AlphaValue::Finite(u64::MAX) < AlphaValue::Infinite);
        assert_eq!(serde_json::to_string(&AlphaValue::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&AlphaValue::Finite(4)).unwrap(), "4");
    }

    proptest! {
        #[test]
        fn alpha_matches_residue_scan(i in 0u64..60, j in 0u64..60, k in 0u64..60, a in 1usize..=14) {
            let ex = e(i, j, k);
            prop_assert_eq!(alpha(a, &ex).unwrap(), alpha_by_residues(a, &ex));
        }

        #[test]
        fn alpha_value_realizes_its_rep(i in 1u64..200, j in 1u64..200, k in 1u64..200, a in 1usize..=14) {
            let ex = e(i, j, k);
            if let AlphaValue::Finite(t) = alpha(a, &ex).unwrap() {
                prop_assert_eq!(representation(t, &ex), REPS[a - 1]);
            }
        }

        #[test]
        fn representation_is_canonical(t in 1u64..50, i in 0u64..500, j in 0u64..500, k in 0u64..500) {
            let r = representation(t, &e(i, j, k));
            let d = r.digits();
            prop_assert_eq!(d[0], 0);
            let mut max = 0;
            for &x in &d[1..] {
                prop_assert!(x <= max + 1);
                max = max.max(x);
            }
        }

        #[test]
        fn models_invariant_under_block_renaming(
            labels in proptest::array::uniform4(0u8..4),
            perm in Just(vec![0u8, 1, 2, 3]).prop_shuffle(),
            target in 0usize..15,
        ) {
            let pattern = EqualityPattern::all()[target];
            let block = |l: u8| vec![l, l.wrapping_mul(3)];
            let blocks: Vec<Vec<u8>> = labels.iter().map(|&l| block(l)).collect();
            let renamed: Vec<Vec<u8>> = labels.iter().map(|&l| block(perm[l as usize] + 10)).collect();
            prop_assert_eq!(
                models(&blocks[0], &blocks[1], &blocks[2], &blocks[3], pattern).unwrap(),
                models(&renamed[0], &renamed[1], &renamed[2], &renamed[3], pattern).unwrap()
            );
        }
    }
}
